#include "k3lat/kondo.hpp"

#include <algorithm>
#include <bitset>
#include <optional>
#include <sstream>

namespace k3lat {

DelPezzoModel del_pezzo_model() {
    IntMatrix g = IntMatrix::identity(8).scaled(-1);
    g(0, 0) = 1;
    std::vector<std::string> labels;
    for (int i = 0; i < 8; ++i) labels.push_back("e" + std::to_string(i));
    DelPezzoModel m{Lattice(g, labels, "Pic(S)"), {-3, 1, 1, 1, 1, 1, 1, 1}, {}};
    m.roots.push_back({1, -1, -1, -1, 0, 0, 0, 0});
    for (int i = 1; i <= 6; ++i) {
        IntVector a(8);
        a[i] = 1;
        a[i + 1] = -1;
        m.roots.push_back(a);
    }
    return m;
}

DelPezzoClasses del_pezzo_classes(const DelPezzoModel& dp) {
    const IntMatrix& g = dp.lattice.gram();
    IntVector gk = g.apply(dp.k);
    RatMatrix q = to_rational(g.scaled(-1));
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) q(i, j) += Rational(gk[i] * gk[j]);
    DelPezzoClasses out;
    for (const auto& x : short_vectors(q, RatVector(8), Rational(2))) {
        const Integer n = dp.lattice.inner(x, x), kx = dp.lattice.inner(x, dp.k);
        if (n == -1 && kx == -1) out.exceptional.push_back(x);
        if (n == -2 && kx == 0) out.roots.push_back(x);
    }
    return out;
}

IntMatrix j1_matrix() {
    // t1 -> t2, t2 -> -t1
    return IntMatrix{{0, -1}, {1, 0}};
}

IntMatrix j2_printed_rows() { return IntMatrix{{0, 1, 0, 0}, {-1, 0, 0, 0}, {1, 0, 1, 1}, {-1, 1, 2, 1}}; }

IntMatrix j2_matrix() {
    // Rows of the printed matrix are images of f1..f4. The first three rows
    // force f4 -> -f1 - f2 - 2 f3 - f4 once J^2 = -1 is imposed on f3.
    IntMatrix rows{{0, 1, 0, 0}, {-1, 0, 0, 0}, {1, 0, 1, 1}, {-1, -1, -2, -1}};
    return rows.transpose();
}

std::uint8_t apply_f2(const F2Map& m, std::uint8_t x) {
    std::uint8_t y = 0;
    for (int j = 0; j < 8; ++j)
        if ((x >> (7 - j)) & 1) y ^= m[j];
    return y;
}

namespace {

F2Map to_map(const FqfMorphism& f) {
    F2Map out{};
    require(f.images().size() == 8, Errc::dimension_mismatch, "expected a map of (Z/2)^8");
    for (int j = 0; j < 8; ++j) out[j] = static_cast<std::uint8_t>(f.images()[j].index());
    return out;
}

FqfMorphism from_map(const FiniteQuadraticForm& src, const FiniteQuadraticForm& tgt, const F2Map& m) {
    std::vector<FqfElement> imgs;
    for (int j = 0; j < 8; ++j) imgs.push_back(tgt.from_index(m[j]));
    return FqfMorphism(src, tgt, std::move(imgs));
}

// 2q in Z/4 and 2b in Z/2 for every pair of elements of a form on (Z/2)^8.
struct F2Tables {
    std::array<int, 256> q2{};
    std::vector<std::uint8_t> b2;  // 256 x 256
};

F2Tables tables(const FiniteQuadraticForm& f) {
    F2Tables t;
    t.b2.assign(256 * 256, 0);
    auto all = f.enumerate();
    for (int x = 0; x < 256; ++x) {
        Rational q = all[x].q() * 2;
        require(q.get_den() == 1, Errc::model_failure, "q value outside (1/2)Z");
        t.q2[x] = static_cast<int>(q.get_num().get_si() % 4);
    }
    for (int x = 0; x < 256; ++x)
        for (int y = 0; y < 256; ++y) {
            Rational b = all[x].b(all[y]) * 2;
            t.b2[x * 256 + y] = static_cast<std::uint8_t>(b.get_num().get_si() % 2);
        }
    return t;
}

std::uint8_t column_index(const std::vector<std::vector<int>>& m, int j) {
    std::uint8_t c = 0;
    for (int i = 0; i < 8; ++i) c |= static_cast<std::uint8_t>((m[i][j] & 1) << (7 - i));
    return c;
}

// Row-lattice map of fs + fk transported to the glued lattice, if integral.
std::optional<IntMatrix> extend_to_glued(const GluedLattice& g, const Isometry& fs, const Isometry& fk) {
    RatMatrix sigma = to_rational(block_diagonal(fs.matrix(), fk.matrix()));
    RatMatrix rows = g.basis * sigma.transpose() * inverse(g.basis);
    for (std::size_t i = 0; i < rows.rows(); ++i)
        for (std::size_t j = 0; j < rows.cols(); ++j)
            if (rows(i, j).get_den() != 1) return std::nullopt;
    return to_integer(rows).transpose();
}

RatVector halve(const IntVector& v) {
    RatVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]) / 2;
    return out;
}

}  // namespace

GammaSearch search_gamma(const FiniteQuadraticForm& a_plus, const FiniteQuadraticForm& a_minus,
                         const FqfMorphism& sigma_plus, const FqfMorphism& sigma_minus,
                         const std::vector<std::vector<int>>& printed) {
    const F2Tables tp = tables(a_plus), tm = tables(a_minus);
    const F2Map sp = to_map(sigma_plus), sm = to_map(sigma_minus);
    std::array<std::uint8_t, 8> printed_cols{};
    for (int j = 0; j < 8; ++j) printed_cols[j] = column_index(printed, j);
    const std::uint8_t ones = 0xff;                  // k/2 = sum of all e~_i/2
    const std::uint8_t t_sum = 0b11000000;           // (t1 + t2)/2

    auto gen = [](int j) { return static_cast<std::uint8_t>(1u << (7 - j)); };

    GammaSearch out;
    F2Map cur{};
    std::array<std::bitset<256>, 9> span;
    span[0].set(0);

    // Once gamma(k/2) = (t1+t2)/2, compatibility on generator j reads
    // sigma-(y_j) + y_j = (t1+t2)/2, since sigma+(g_j) = g_j + k/2.
    for (int j = 0; j < 8; ++j)
        require(apply_f2(sp, gen(j)) == (gen(j) ^ ones), Errc::model_failure, "unexpected induced sigma on A+");

    auto leaf = [&]() {
        if (apply_f2(cur, ones) != t_sum) return;
        ++out.anti_isometries;
        int d = 0;
        for (int j = 0; j < 8; ++j) d += __builtin_popcount(cur[j] ^ printed_cols[j]);
        if (out.distance < 0 || d < out.distance || (d == out.distance && cur < out.best)) {
            out.distance = d;
            out.best = cur;
        }
    };

    std::array<std::vector<int>, 8> candidates;
    for (int j = 0; j < 8; ++j) {
        const int want_q = (4 - tp.q2[gen(j)]) % 4;
        for (int y = 1; y < 256; ++y)
            if (tm.q2[y] == want_q && (apply_f2(sm, static_cast<std::uint8_t>(y)) ^ y) == t_sum) candidates[j].push_back(y);
    }

    auto rec = [&](auto&& self, int j) -> void {
        if (j == 8) {
            leaf();
            return;
        }
        for (int y : candidates[j]) {
            if (span[j].test(y)) continue;
            bool ok = true;
            for (int i = 0; i < j && ok; ++i) ok = tm.b2[y * 256 + cur[i]] == tp.b2[gen(j) * 256 + gen(i)];
            if (!ok) continue;
            cur[j] = static_cast<std::uint8_t>(y);
            if (j == 7) {
                leaf();
                continue;
            }
            span[j + 1] = span[j];
            for (int z = 0; z < 256; ++z)
                if (span[j].test(z)) span[j + 1].set(z ^ y);
            self(self, j + 1);
        }
    };
    rec(rec, 0);
    return out;
}

KondoModel build_model() {
    DelPezzoModel dp = del_pezzo_model();

    std::vector<std::string> plus_labels;
    for (int i = 0; i < 8; ++i) plus_labels.push_back("e~" + std::to_string(i));
    Lattice lplus(dp.lattice.gram().scaled(2), plus_labels, "L+");

    std::vector<std::string> minus_labels{"t1", "t2"};
    for (int c = 1; c <= 3; ++c)
        for (int j = 1; j <= 4; ++j) minus_labels.push_back("f" + std::to_string(c) + "_" + std::to_string(j));
    Lattice lminus = direct_sum({rank_one(2), rank_one(2), ade('D', 4), ade('D', 4), ade('D', 4)})
                         .relabeled(minus_labels)
                         .renamed("L-");

    // Pullback of the Geiser involution: e~0 -> 8 e~0 - 3 sum, e~j -> 3 e~0 - sum - e~j.
    IntMatrix sp(8, 8);
    sp(0, 0) = 8;
    for (int i = 1; i < 8; ++i) sp(i, 0) = -3;
    for (int j = 1; j < 8; ++j) {
        sp(0, j) = 3;
        for (int i = 1; i < 8; ++i) sp(i, j) = i == j ? -2 : -1;
    }
    Isometry sigma_plus(lplus, sp);
    IntMatrix j2 = j2_matrix();
    Isometry sigma_minus(lminus, block_diagonal(block_diagonal(j1_matrix(), j2), block_diagonal(j2, j2)));

    std::vector<IntVector> roots_tilde = dp.roots;

    std::vector<RatVector> plus_lifts;
    for (int i = 0; i < 8; ++i) {
        RatVector v(8);
        v[i] = Rational(1, 2);
        plus_lifts.push_back(v);
    }
    auto a_plus = discriminant_form(lplus).with_generators(plus_lifts);

    std::vector<RatVector> minus_lifts;
    for (int i = 0; i < 2; ++i) {
        RatVector v(14);
        v[i] = Rational(1, 2);
        minus_lifts.push_back(v);
    }
    for (int c = 0; c < 3; ++c) {
        const int o = 2 + 4 * c;
        RatVector a1(14), a2(14);
        a1[o + 1] = a1[o + 3] = Rational(1, 2);  // (f2 + f4)/2
        a2[o] = a2[o + 1] = Rational(1, 2);      // (f1 + f2)/2
        minus_lifts.push_back(a1);
        minus_lifts.push_back(a2);
    }
    auto a_minus = discriminant_form(lminus).with_generators(minus_lifts);

    auto sbp = induced_on_discriminant(sigma_plus, a_plus);
    auto sbm = induced_on_discriminant(sigma_minus, a_minus);

    std::vector<std::vector<int>> printed(8, std::vector<int>(8, 0));
    for (int j = 1; j < 8; ++j) printed[0][j] = printed[j][0] = 1;
    for (int j = 2; j < 8; ++j) printed[j][j] = 1;

    GammaSearch gs = search_gamma(a_plus, a_minus, sbp, sbm, printed);
    require(gs.distance >= 0, Errc::model_failure, "no compatible gluing anti-isometry exists");
    FqfMorphism gamma = from_map(a_plus, a_minus, gs.best);

    std::vector<FqfElement> h;
    for (int j = 0; j < 8; ++j) h.push_back(a_plus.generator(j));
    GluedLattice k3 = glue({lplus, lminus, h, gamma.images()});
    require(k3.lattice.is_unimodular() && k3.lattice.is_even() && k3.lattice.signature() == Signature{3, 19, 0},
            Errc::model_failure, "glued lattice is not the K3 lattice");
    auto ext = extend_to_glued(k3, sigma_plus, sigma_minus);
    require(ext.has_value(), Errc::model_failure, "sigma does not extend to the glued lattice");
    Isometry sigma_k3(k3.lattice, *ext);

    require(verify_order(sigma_plus, 2), Errc::model_failure, "sigma+ is not an involution");
    require(verify_order(sigma_minus, 4) &&
                (sigma_minus * sigma_minus).matrix() == IntMatrix::identity(14).scaled(-1),
            Errc::model_failure, "sigma- does not square to -1");
    require(verify_order(sigma_k3, 4), Errc::model_failure, "extended sigma does not have order 4");

    IntVector kt = dp.k;
    return KondoModel{std::move(dp), lplus,  lminus, sigma_plus, sigma_minus, kt,  roots_tilde, a_plus,
                      a_minus,       printed, gs,    gamma,      sbp,         sbm, k3,  sigma_k3};
}

const KondoModel& kondo_model() {
    static const KondoModel model = build_model();
    return model;
}

FqfElement k_half(const KondoModel& m) { return m.a_plus.reduce(halve(m.k_tilde)); }

std::vector<ListedClass> listed_representatives(const KondoModel& m) {
    const IntVector& k = m.k_tilde;
    auto e = [](std::initializer_list<std::pair<int, int>> terms) {
        IntVector v(8);
        for (auto [i, c] : terms) v[i] += c;
        return v;
    };
    auto plus = [](IntVector a, const IntVector& b, int s = 1) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
        return a;
    };
    IntVector all_e = e({{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 1}});

    std::vector<ListedClass> out;
    for (int i = 1; i <= 7; ++i) {
        out.push_back({e({{i, 1}}), 1});
        out.push_back({plus(k, e({{i, 1}}), -1), 1});
    }
    for (int i = 1; i <= 7; ++i)
        for (int j = i + 1; j <= 7; ++j) {
            out.push_back({e({{0, 1}, {i, -1}, {j, -1}}), 1});
            out.push_back({plus(k, e({{0, -1}, {i, 1}, {j, 1}})), 1});
        }
    out.push_back({e({{0, 1}}), 2});
    out.push_back({plus(k, e({{0, 1}}), -1), 2});
    for (int i = 1; i <= 7; ++i)
        for (int j = i + 1; j <= 7; ++j)
            for (int l = j + 1; l <= 7; ++l) {
                out.push_back({e({{i, 1}, {j, 1}, {l, 1}}), 2});
                out.push_back({plus(k, e({{i, 1}, {j, 1}, {l, 1}}), -1), 2});
            }
    out.push_back({k, 3});
    for (int i = 1; i <= 7; ++i)
        for (int j = i + 1; j <= 7; ++j) out.push_back({e({{i, 1}, {j, -1}}), 3});
    for (int i = 1; i <= 7; ++i)
        for (int j = i + 1; j <= 7; ++j)
            for (int l = j + 1; l <= 7; ++l) out.push_back({e({{0, 1}, {i, -1}, {j, -1}, {l, -1}}), 3});
    for (int j = 1; j <= 7; ++j) out.push_back({plus(plus(e({{0, 2}}), all_e, -1), e({{j, 1}})), 3});
    out.push_back({IntVector(8), 4});
    for (int i = 1; i <= 7; ++i)
        for (int j = i + 1; j <= 7; ++j) out.push_back({plus(k, e({{i, 1}, {j, -1}})), 4});
    for (int i = 1; i <= 7; ++i)
        for (int j = i + 1; j <= 7; ++j)
            for (int l = j + 1; l <= 7; ++l) out.push_back({plus(k, e({{0, 1}, {i, -1}, {j, -1}, {l, -1}})), 4});
    for (int j = 1; j <= 7; ++j)
        out.push_back({plus(k, plus(plus(e({{0, 2}}), all_e, -1), e({{j, 1}}))), 4});
    return out;
}

int class_of(const FqfElement& x) {
    const Rational q = x.q();
    if (q == Rational(3, 2)) return 1;
    if (q == Rational(1, 2)) return 2;
    if (q == 1) return 3;
    if (q == 0) return 4;
    fail(Errc::invalid_argument, "q value " + q.get_str() + " is not in (1/2)Z/2Z");
}

std::array<std::size_t, 4> ClassPartition::sizes() const {
    return {classes[0].size(), classes[1].size(), classes[2].size(), classes[3].size()};
}

ClassPartition classify_discriminant(const KondoModel& m) {
    ClassPartition p;
    for (const auto& x : m.a_plus.enumerate()) p.classes[class_of(x) - 1].push_back(x);
    return p;
}

std::vector<FqfElement> sigma_formula_failures(const KondoModel& m) {
    const FqfElement kh = k_half(m);
    std::vector<FqfElement> bad;
    for (const auto& x : m.a_plus.enumerate()) {
        const int c = class_of(x);
        const FqfElement want = c <= 2 ? kh - x : x;
        if (m.sigma_bar_plus(x) != want) bad.push_back(x);
    }
    return bad;
}

NPlusReport n_plus_subgroup(const KondoModel& m) {
    NPlusReport r;
    for (const auto& x : m.a_plus.enumerate())
        if (x.q().get_den() == 1) r.integral.push_back(x);
    std::vector<FqfElement> gens{k_half(m)};
    for (std::size_t i = 1; i <= 6; ++i) gens.push_back(m.a_plus.reduce(halve(m.roots_tilde[i])));
    r.spanned = subgroup(m.a_plus, gens);
    return r;
}

std::vector<FqfMorphism> weyl_generators(const KondoModel& m) {
    std::vector<FqfMorphism> gens;
    for (const auto& a : m.roots_tilde) gens.push_back(induced_on_discriminant(reflection(m.lplus, a), m.a_plus));
    return gens;
}

OrbitReport weyl_orbit_report(const KondoModel& m) {
    OrbitReport r;
    const auto gens = weyl_generators(m);
    const auto part = classify_discriminant(m);
    for (int c = 0; c < 4; ++c) {
        for (const auto& orbit : orbits(gens, part.classes[c])) {
            r.sizes[c].push_back(orbit.size());
            if (orbit.size() == 1) r.fixed[c].push_back(orbit.front());
        }
        std::sort(r.sizes[c].begin(), r.sizes[c].end());
    }
    return r;
}

FqfMorphism printed_gamma_morphism(const KondoModel& m) {
    return FqfMorphism::from_f2_matrix(m.a_plus, m.a_minus, m.printed_gamma);
}

GammaReport verify_gamma(const KondoModel& m, const FqfMorphism& gamma) {
    GammaReport r;
    r.isomorphism = gamma.is_bijective();
    std::ostringstream ev;
    std::optional<FqfElement> first_plus, first_minus;
    for (const auto& x : m.a_plus.enumerate()) {
        const Rational qx = x.q(), qy = gamma(x).q();
        if (qy != qx) {
            ++r.plus_failures;
            if (!first_plus) first_plus = x;
        }
        if (qy != mod2(-qx)) {
            ++r.minus_failures;
            if (!first_minus) first_minus = x;
        }
    }
    r.preserves_q = r.plus_failures == 0;
    r.negates_q = r.minus_failures == 0;
    ev << "bijective=" << (r.isomorphism ? "yes" : "no") << "; q(gamma x) = q(x) fails on " << r.plus_failures
       << " of 256; q(gamma x) = -q(x) fails on " << r.minus_failures << " of 256";
    for (const auto* f : {&first_plus, &first_minus})
        if (*f) {
            const FqfElement& x = **f;
            ev << "; e.g. x=" << x.to_string() << " q(x)=" << x.q().get_str() << " q(gamma x)=" << gamma(x).q().get_str();
        }
    r.evidence = ev.str();
    return r;
}

CompatibilityReport verify_sigma_gamma_compatibility(const KondoModel& m, const FqfMorphism& gamma) {
    CompatibilityReport r;
    for (const auto& x : m.a_plus.enumerate())
        if (gamma(m.sigma_bar_plus(x)) != m.sigma_bar_minus(gamma(x))) r.failures.push_back(x);
    if (!r.failures.empty()) return r;
    try {
        std::vector<FqfElement> h;
        for (int j = 0; j < 8; ++j) h.push_back(m.a_plus.generator(j));
        GluedLattice g = glue({m.lplus, m.lminus, h, gamma.images()});
        auto ext = extend_to_glued(g, m.sigma_plus, m.sigma_minus);
        r.extension_integral = ext.has_value();
        if (ext) r.extension_order_four = verify_order(Isometry(g.lattice, *ext), 4);
    } catch (const Error&) {
        r.extension_integral = false;
    }
    return r;
}

}  // namespace k3lat

#include "k3lat/heegner.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace k3lat {

namespace {

constexpr std::size_t kRank = 14;

std::size_t f_index(int copy, int j) { return 2 + 4 * (copy - 1) + (j - 1); }

bool odd(const Integer& x) { return mpz_odd_p(x.get_mpz_t()) != 0; }

IntVector sigma_of(const KondoModel& m, const IntVector& r) {
    require(r.size() == kRank, Errc::dimension_mismatch, "vectors of L- have 14 coordinates");
    return m.sigma_minus.apply(r);
}

RatVector halve(const IntVector& v) {
    RatVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]) / 2;
    return out;
}

// Integer data of L- used by the fast box scan.
struct SmallTables {
    std::array<std::array<std::int64_t, kRank>, kRank> gram{};
    std::array<std::array<std::int64_t, 4>, 4> j2{};  // column convention
};

const SmallTables& small_tables() {
    static const SmallTables t = [] {
        SmallTables s;
        const IntMatrix d4 = ade('D', 4).gram();
        s.gram[0][0] = s.gram[1][1] = 2;
        for (int c = 0; c < 3; ++c)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) s.gram[2 + 4 * c + i][2 + 4 * c + j] = d4(i, j).get_si();
        const IntMatrix j2 = j2_matrix();
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) s.j2[i][j] = j2(i, j).get_si();
        return s;
    }();
    return t;
}

template <typename Get>
bool parity_blocks(Get&& a) {
    for (int c = 1; c <= 3; ++c) {
        if (a(c, 3) % 2 != 0) return false;
        if ((a(c, 1) + a(c, 2) + a(c, 4)) % 2 != 0) return false;
    }
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------

std::int64_t type_of(const KondoModel& m, const IntVector& r) {
    require(r.size() == kRank, Errc::dimension_mismatch, "vectors of L- have 14 coordinates");
    require(content(r) == 1, Errc::imprimitive, "r is not primitive");
    const Integer n2 = m.lminus.inner(r, r);
    require(n2 < 0, Errc::invalid_argument, "r^2 = " + n2.get_str() + " is not negative");
    return Integer(-n2 / 2).get_si();
}

LambdaSublattice lambda_of(const KondoModel& m, const IntVector& r) {
    require(content(r) == 1, Errc::imprimitive, "r is not primitive");
    LambdaSublattice l;
    l.basis = IntMatrix::from_rows({r, sigma_of(m, r)});
    l.gram = m.lminus.restricted_gram(l.basis);
    Integer g = 0;
    for (std::size_t i = 0; i < kRank; ++i)
        for (std::size_t j = i + 1; j < kRank; ++j)
            g = gcd(g, l.basis(0, i) * l.basis(1, j) - l.basis(0, j) * l.basis(1, i));
    l.minors_gcd = g;
    l.primitive = g == 1;
    // Cross-check against saturation.
    require(l.primitive == (index_in_saturation(l.basis) == 1), Errc::model_failure,
            "minor criterion disagrees with saturation");
    return l;
}

int index_of(const KondoModel& m, const IntVector& r) {
    require(content(r) == 1, Errc::imprimitive, "r is not primitive");
    const Integer d = divisibility(LatticeVector(m.lminus, r));
    require(d == 1 || d == 2, Errc::model_failure, "divisibility " + d.get_str() + " outside {1, 2}");
    return d == 2 ? 2 : 1;
}

MGroup m_group(const KondoModel& m, const IntVector& r) {
    LambdaSublattice lam = lambda_of(m, r);
    require(lam.primitive, Errc::imprimitive, "Lambda_r is not primitive in L-");
    const GluedLattice& g = m.k3;

    const IntMatrix perp = orthogonal_complement(m.lminus, lam.basis) * g.k_embedding;
    const IntMatrix p = orthogonal_complement(g.lattice, perp);
    const IntMatrix sub = vstack(g.s_embedding, lam.basis * g.k_embedding);
    auto x = solve_left(to_rational(p), to_rational(sub));
    require(x.has_value(), Errc::model_failure, "L+ + Lambda_r is not inside P");
    const SmithForm snf = smith_normal_form(to_integer(*x));
    const IntMatrix vinv = to_integer(inverse(to_rational(snf.V)));
    const RatMatrix gens = to_rational(vinv * p) * g.basis;

    MGroup out;
    const auto diag = snf.diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i) {
        require(diag[i] != 0, Errc::model_failure, "L+ + Lambda_r has smaller rank than P");
        if (diag[i] == 1) continue;
        out.factors.push_back(diag[i]);
        RatVector plus(8), minus(kRank);
        for (std::size_t j = 0; j < 8; ++j) plus[j] = gens(i, j);
        for (std::size_t j = 0; j < kRank; ++j) minus[j] = gens(i, 8 + j);
        out.plus_parts.push_back(m.a_plus.reduce(plus));
        out.minus_parts.push_back(m.a_minus.reduce(minus));
    }
    out.plus_subgroup = subgroup(m.a_plus, out.plus_parts);
    return out;
}

IntVector existence_family(int i, int k) {
    require(i >= 1 && i <= 4, Errc::invalid_argument, "family index must be 1..4");
    require(k >= 1, Errc::invalid_argument, "family parameter must be positive");
    IntVector r(kRank);
    switch (i) {
        case 1:
            r[0] = k - 1;
            r[f_index(1, 1)] = k;
            r[f_index(2, 1)] = 1;
            break;
        case 2:
            r[0] = k;
            r[f_index(1, 1)] = k + 1;
            break;
        case 3:
            r[0] = k - 1;
            r[f_index(1, 1)] = k;
            r[f_index(2, 1)] = 1;
            r[f_index(3, 1)] = 1;
            break;
        case 4:
            r[0] = 1;
            r[1] = 2 * k;
            r[f_index(1, 1)] = r[f_index(1, 2)] = k + 1;
            r[f_index(2, 1)] = r[f_index(2, 2)] = k;
            break;
    }
    return r;
}

bool c3_parity_conditions(const IntVector& r) {
    require(r.size() == kRank, Errc::dimension_mismatch, "vectors of L- have 14 coordinates");
    if (!odd(r[0] + r[1])) return false;
    return parity_blocks([&](int c, int j) { return odd(r[f_index(c, j)]) ? 1 : 0; });
}

bool c3_literal_conditions(const IntVector& r) {
    require(r.size() == kRank, Errc::dimension_mismatch, "vectors of L- have 14 coordinates");
    if (!odd(r[0]) || !odd(r[1])) return false;
    return parity_blocks([&](int c, int j) { return odd(r[f_index(c, j)]) ? 1 : 0; });
}

C3Check check_c3(const KondoModel& m, const IntVector& r) {
    const std::int64_t n = type_of(m, r);
    require(n % 2 == 0, Errc::invalid_argument, "check_c3 needs even type");
    C3Check c;
    const FqfElement kh = k_half(m);
    const MGroup g = m_group(m, r);
    c.quotient = !std::binary_search(g.plus_subgroup.begin(), g.plus_subgroup.end(), kh);
    IntVector f = sigma_of(m, r);
    for (std::size_t i = 0; i < kRank; ++i) f[i] += r[i];
    c.discriminant = m.a_minus.reduce(halve(f)) != m.gamma(kh);
    c.parity = !c3_parity_conditions(r);
    return c;
}

// ---------------------------------------------------------------------------

std::int64_t splitting_degree(std::int64_t n, int m) {
    require(n > 1, Errc::invalid_argument, "splitting degree needs type n > 1");
    require(m == 1 || m == 2, Errc::invalid_argument, "index must be 1 or 2");
    require(m == 1 || n % 2 == 1, Errc::invalid_argument, "index 2 needs odd type");
    return m == 1 ? 2 * (n - 1) : n - 2;
}

std::pair<std::int64_t, int> converse_type(std::int64_t d) {
    require(d >= 1, Errc::invalid_argument, "degree must be positive");
    if (d % 2 == 1) return {d + 2, 2};
    return {(d + 2) / 2, 1};
}

std::vector<int> witness_class_bits(std::int64_t n, int m) {
    splitting_degree(n, m);  // validates (n, m)
    if (m == 1) return n % 2 == 1 ? std::vector<int>{1, 2} : std::vector<int>{0, 1};
    return n % 4 == 3 ? std::vector<int>{1} : std::vector<int>{0};
}

std::string WitnessCheck::describe() const {
    std::ostringstream os;
    os << "x=(";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    os << ") x^2=" << square << " degree=" << degree << " p_a=" << Integer(genus_numerator / 2 + 1);
    std::vector<std::string> bad;
    if (!square_ok) bad.push_back("square");
    if (!degree_ok) bad.push_back("degree");
    if (!genus_ok) bad.push_back("genus");
    if (!class_ok) bad.push_back("class");
    if (!bad.empty()) {
        os << " failing:";
        for (const auto& b : bad) os << " " << b;
    }
    return os.str();
}

WitnessCheck check_witness(std::int64_t n, int m, const IntVector& x) {
    const auto bits = witness_class_bits(n, m);
    const DelPezzoModel dp = del_pezzo_model();
    require(x.size() == 8, Errc::dimension_mismatch, "Del Pezzo classes have 8 coordinates");
    WitnessCheck w;
    w.x = x;
    w.square = dp.lattice.inner(x, x);
    const Integer xk = dp.lattice.inner(x, dp.k);
    w.degree = -xk;
    w.genus_numerator = w.square + xk;
    w.square_ok = w.square == (m == 1 ? 2 * n - 4 : n - 4);
    w.degree_ok = w.degree == splitting_degree(n, m);
    w.genus_ok = w.genus_numerator == -2;
    std::vector<int> have;
    for (int i = 0; i < 8; ++i)
        if (odd(x[i])) have.push_back(i);
    w.class_ok = have == bits;
    return w;
}

WitnessCheck witness_class(std::int64_t n, int m) {
    splitting_degree(n, m);
    IntVector x(8);
    if (m == 1 && n % 2 == 1) {
        x[0] = n - 1;
        x[1] = -(n - 2);
        x[2] = -1;
    } else if (m == 1) {
        x[0] = n - 1;
        x[1] = -1;
        x[2] = -(n - 2);
    } else if (n % 4 == 3) {
        const std::int64_t s = (n - 3) / 4;
        x[0] = 2 * s;
        x[1] = -(2 * s - 1);
    } else {
        const std::int64_t s = (n - 1) / 4;
        x[0] = s - 1;
        x[1] = -(s - 1);
    }
    return check_witness(n, m, x);
}

IntVector search_witness(std::int64_t n, int m) {
    splitting_degree(n, m);
    const std::int64_t b = 2 * n;
    const std::int64_t want_sq = m == 1 ? 2 * n - 4 : n - 4, want_deg = splitting_degree(n, m);
    for (std::int64_t a = 0; a <= b; ++a)
        for (std::int64_t x1 = -b; x1 <= b; ++x1) {
            // degree 3a + x1 + x2 fixes x2
            const std::int64_t x2 = want_deg - 3 * a - x1;
            if (x2 < -b || x2 > b) continue;
            if (a * a - x1 * x1 - x2 * x2 != want_sq) continue;
            IntVector x(8);
            x[0] = a;
            x[1] = x1;
            x[2] = x2;
            if (check_witness(n, m, x).ok()) return x;
        }
    fail(Errc::search_exhausted, "no witness with coefficients bounded by " + std::to_string(b));
}

IntVector find_witness(std::int64_t n, int m) {
    WitnessCheck w = witness_class(n, m);
    return w.ok() ? w.x : search_witness(n, m);
}

HeegnerInvariants heegner_invariants(const KondoModel& m, const IntVector& r) {
    HeegnerInvariants h;
    h.r = r;
    h.type = type_of(m, r);
    h.index = index_of(m, r);
    LambdaSublattice lam = lambda_of(m, r);
    h.lambda_primitive = lam.primitive;
    if (lam.primitive) h.m_group = m_group(m, r).factors;
    if (h.type > 1) h.min_degree = splitting_degree(h.type, h.index);
    return h;
}

// ---------------------------------------------------------------------------

std::int64_t SmallVector::norm() const {
    const auto& g = small_tables().gram;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < kRank; ++i) {
        if (!c[i]) continue;
        for (std::size_t j = 0; j < kRank; ++j) s += c[i] * g[i][j] * c[j];
    }
    return s;
}

std::int64_t SmallVector::divisibility() const {
    const auto& g = small_tables().gram;
    std::int64_t d = 0;
    for (std::size_t i = 0; i < kRank; ++i) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < kRank; ++j) s += g[i][j] * c[j];
        d = std::gcd(d, s);
    }
    return d;
}

std::int64_t SmallVector::content() const {
    std::int64_t d = 0;
    for (auto v : c) d = std::gcd(d, v);
    return d;
}

SmallVector SmallVector::sigma() const {
    const auto& j2 = small_tables().j2;
    SmallVector s;
    s.c[0] = -c[1];
    s.c[1] = c[0];
    for (int b = 0; b < 3; ++b)
        for (int i = 0; i < 4; ++i) {
            std::int64_t v = 0;
            for (int j = 0; j < 4; ++j) v += j2[i][j] * c[2 + 4 * b + j];
            s.c[2 + 4 * b + i] = v;
        }
    return s;
}

std::int64_t SmallVector::lambda_minors_gcd() const {
    const SmallVector s = sigma();
    std::int64_t g = 0;
    for (std::size_t i = 0; i < kRank; ++i)
        for (std::size_t j = i + 1; j < kRank; ++j) {
            g = std::gcd(g, c[i] * s.c[j] - c[j] * s.c[i]);
            if (g == 1) return 1;
        }
    return g;
}

BoxScan scan_box(std::int64_t bound, std::int64_t max_minus_norm, std::uint64_t stride) {
    require(bound >= 0, Errc::invalid_argument, "box bound must be non-negative");
    require(stride >= 1, Errc::invalid_argument, "sample stride must be positive");
    const auto& tab = small_tables();

    // The 81 vectors of {-1,0,1}^4 in one D4 block, lexicographic.
    struct Block {
        std::array<std::int64_t, 4> a;
        std::int64_t norm;
        bool gram_even;  // every (d, f_j) even
        bool parity;     // a3 even and a1 + a2 + a4 even
        bool zero;
    };
    std::vector<Block> blocks;
    for (int idx = 0; idx < 81; ++idx) {
        Block bl{};
        int v = idx;
        for (int i = 3; i >= 0; --i) {
            bl.a[i] = v % 3 - 1;
            v /= 3;
        }
        bl.gram_even = true;
        for (int i = 0; i < 4; ++i) {
            std::int64_t s = 0;
            for (int j = 0; j < 4; ++j) s += tab.gram[2 + i][2 + j] * bl.a[j];
            bl.norm += bl.a[i] * s;
            if (s % 2 != 0) bl.gram_even = false;
        }
        bl.parity = bl.a[2] % 2 == 0 && (bl.a[0] + bl.a[1] + bl.a[3]) % 2 == 0;
        bl.zero = bl.a == std::array<std::int64_t, 4>{};
        blocks.push_back(bl);
    }

    BoxScan out;
    out.bound = bound;
    SmallVector sv;
    for (std::int64_t h1 = -bound; h1 <= bound; ++h1)
        for (std::int64_t h2 = -bound; h2 <= bound; ++h2) {
            const std::int64_t tn = 2 * h1 * h1 + 2 * h2 * h2;
            const std::int64_t hg = std::gcd(h1, h2);
            sv.c[0] = h1;
            sv.c[1] = h2;
            for (const auto& b1 : blocks)
                for (const auto& b2 : blocks)
                    for (const auto& b3 : blocks) {
                        ++out.scanned;
                        const std::int64_t n2 = tn + b1.norm + b2.norm + b3.norm;
                        if (n2 >= 0 || -n2 > max_minus_norm) continue;
                        const bool fzero = b1.zero && b2.zero && b3.zero;
                        if (fzero && hg != 1) continue;
                        for (int i = 0; i < 4; ++i) {
                            sv.c[2 + i] = b1.a[i];
                            sv.c[6 + i] = b2.a[i];
                            sv.c[10 + i] = b3.a[i];
                        }
                        if (sv.lambda_minors_gcd() != 1) continue;
                        if (out.admissible++ % stride == 0) out.sample.emplace_back(sv.c.begin(), sv.c.end());
                        const std::int64_t n = -n2 / 2;
                        // t-pairings are always even, so (r, L-) = 2Z iff every D4 block pairs evenly.
                        const int index = b1.gram_even && b2.gram_even && b3.gram_even ? 2 : 1;
                        if (index == 2)
                            require(sv.divisibility() == 2, Errc::model_failure, "divisibility outside {1, 2}");
                        const bool blocks_ok = b1.parity && b2.parity && b3.parity;
                        const bool corrected = blocks_ok && (h1 + h2) % 2 != 0;
                        const bool literal = blocks_ok && h1 % 2 != 0 && h2 % 2 != 0;
                        if (corrected != literal) ++out.literal_disagreements;
                        if (n % 2 == 0) {
                            ++out.even_type;
                            if (index == 2) ++out.index_two_even_type;
                            if (corrected) ++out.parity_hits;
                            if (literal) ++out.literal_hits;
                        }
                        auto key = std::make_pair(n, index);
                        if (!out.representatives.count(key))
                            out.representatives.emplace(key, IntVector(sv.c.begin(), sv.c.end()));
                    }
        }
    return out;
}

bool find_in_box(std::int64_t bound, const std::function<bool(const SmallVector&, std::int64_t)>& visit) {
    const auto& g = small_tables().gram;
    std::array<std::int64_t, 81> bnorm{};
    std::array<std::array<std::int64_t, 4>, 81> bvec{};
    for (int idx = 0; idx < 81; ++idx) {
        int v = idx;
        for (int i = 3; i >= 0; --i) {
            bvec[idx][i] = v % 3 - 1;
            v /= 3;
        }
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) bnorm[idx] += bvec[idx][i] * g[2 + i][2 + j] * bvec[idx][j];
    }
    SmallVector sv;
    for (std::int64_t h1 = -bound; h1 <= bound; ++h1)
        for (std::int64_t h2 = -bound; h2 <= bound; ++h2) {
            sv.c[0] = h1;
            sv.c[1] = h2;
            for (int a = 0; a < 81; ++a)
                for (int b = 0; b < 81; ++b)
                    for (int c = 0; c < 81; ++c) {
                        for (int i = 0; i < 4; ++i) {
                            sv.c[2 + i] = bvec[a][i];
                            sv.c[6 + i] = bvec[b][i];
                            sv.c[10 + i] = bvec[c][i];
                        }
                        if (visit(sv, 2 * h1 * h1 + 2 * h2 * h2 + bnorm[a] + bnorm[b] + bnorm[c])) return true;
                    }
        }
    return false;
}

std::vector<CorpusEntry> heegner_corpus(const BoxScan& scan, int kmax) {
    std::vector<CorpusEntry> out;
    auto classify = [](const IntVector& r, CorpusEntry& e) {
        SmallVector sv;
        for (std::size_t i = 0; i < kRank; ++i) sv.c[i] = r[i].get_si();
        e.type = -sv.norm() / 2;
        e.index = sv.divisibility() == 2 ? 2 : 1;
    };
    for (int i = 1; i <= 4; ++i)
        for (int k = 1; k <= kmax; ++k) {
            CorpusEntry e;
            e.source = "r" + std::to_string(i) + "(" + std::to_string(k) + ")";
            e.r = existence_family(i, k);
            classify(e.r, e);
            out.push_back(std::move(e));
        }
    for (const auto& [key, r] : scan.representatives) {
        CorpusEntry e;
        e.source = "box";
        e.r = r;
        classify(r, e);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace k3lat

#include "k3lat/picard.hpp"

#include "k3lat/heegner.hpp"

namespace k3lat {

namespace {

Integer exact_quarter(const Integer& v) {
    require(v % 4 == 0, Errc::not_integral, "pairing " + v.get_str() + "/4 is not integral");
    return v / 4;
}

IntMatrix gram_from_rows(const std::vector<std::vector<int>>& rows) {
    IntMatrix g(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) g(i, j) = rows[i][j];
    return g;
}

// y as a function of r for the two examples.
enum class YShape { r, r_plus_sigma_r };

void realise(const KondoModel& m, PicardExample& ex, std::int64_t type, YShape shape) {
    const FqfElement target = m.gamma(m.a_plus.reduce([&] {
        RatVector v(8);
        for (std::size_t i = 0; i < 8; ++i) v[i] = Rational(ex.x[i]) / 2;
        return v;
    }()));
    auto y_of = [&](const IntVector& r) {
        if (shape == YShape::r) return r;
        IntVector s = m.sigma_minus.apply(r);
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += r[i];
        return s;
    };

    IntVector found;
    find_in_box(2, [&](const SmallVector& sv, std::int64_t norm) {
        if (norm != -2 * type || sv.content() != 1 || sv.lambda_minors_gcd() != 1) return false;
        IntVector r(sv.c.begin(), sv.c.end());
        IntVector y = y_of(r);
        RatVector half(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) half[i] = Rational(y[i]) / 2;
        // y/2 must be a dual vector before its class can match.
        if (shape == YShape::r && sv.divisibility() != 2) return false;
        if (m.a_minus.reduce(half) != target) return false;
        found = r;
        return true;
    });
    if (found.empty()) return;
    ex.r = found;
    ex.type = type_of(m, found);
    ex.index = index_of(m, found);

    const GluedLattice& g = m.k3;
    const IntVector y = y_of(found);
    require(m.lminus.inner(y, y) == ex.y_square, Errc::model_failure, "realised y has the wrong norm");
    RatVector c(22);
    for (std::size_t i = 0; i < 8; ++i) c[i] = Rational(ex.x[i]) / 2;
    for (std::size_t i = 0; i < 14; ++i) c[8 + i] = Rational(y[i]) / 2;
    auto coords = solve_left(g.basis, RatMatrix::from_rows({c}));
    ex.realized_in_k3 = coords.has_value();
    for (std::size_t j = 0; coords && j < 22; ++j)
        if ((*coords)(0, j).get_den() != 1) ex.realized_in_k3 = false;
    if (!ex.realized_in_k3) return;

    IntVector cc = to_integer(*coords).row(0);
    IntVector sc = m.sigma_k3.apply(cc);
    IntMatrix rows = g.s_embedding;
    rows = vstack(rows, IntMatrix::from_rows({cc, sc}));
    ex.realized_gram_matches = g.lattice.restricted_gram(rows) == ex.derived;

    const IntMatrix lam = IntMatrix::from_rows({found, m.sigma_minus.apply(found)}) * g.k_embedding;
    const IntMatrix p = orthogonal_complement(g.lattice, orthogonal_complement(g.lattice, vstack(g.s_embedding, lam)));
    ex.generates_saturation = same_row_lattice(rows, p);

    // L+ in the coordinates of the ten generators.
    auto lp = solve_left(to_rational(rows), to_rational(g.s_embedding));
    if (lp) {
        IntMatrix lpi = to_integer(*lp);
        ex.lplus_primitive = rank(lpi) == 8 && same_row_lattice(saturate(lpi), lpi) && rows.rows() - 8 == 2;
    }
}

PicardExample make_example(const KondoModel& m, std::string name, IntVector x, Integer y_square, Integer y_sigma,
                           IntMatrix printed) {
    PicardExample ex;
    ex.name = std::move(name);
    ex.x = std::move(x);
    ex.y_square = std::move(y_square);
    ex.y_sigma = std::move(y_sigma);
    ex.derived = derive_picard_gram(m, ex.x, ex.y_square, ex.y_sigma);
    ex.printed = std::move(printed);
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = 0; j < 10; ++j)
            if (ex.derived(i, j) != ex.printed(i, j)) ex.diffs.push_back({i, j, ex.derived(i, j), ex.printed(i, j)});
    Lattice l(ex.derived);
    ex.symmetric = ex.derived.is_symmetric();
    ex.even = l.is_even();
    ex.signature = l.signature();
    ex.determinant = l.determinant();
    return ex;
}

}  // namespace

IntMatrix derive_picard_gram(const KondoModel& m, const IntVector& x, const Integer& y_square,
                             const Integer& y_sigma) {
    const Lattice& dp = m.del_pezzo.lattice;
    require(x.size() == 8, Errc::dimension_mismatch, "Del Pezzo classes have 8 coordinates");
    // The involution has the same matrix on the Del Pezzo model.
    const IntVector ix = m.sigma_plus.apply(x);
    IntMatrix g(10, 10);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) g(i, j) = m.lplus.gram()(i, j);
    for (std::size_t j = 0; j < 8; ++j) {
        IntVector e(8);
        e[j] = 1;
        g(8, j) = g(j, 8) = dp.inner(x, e);
        g(9, j) = g(j, 9) = dp.inner(ix, e);
    }
    g(8, 8) = g(9, 9) = exact_quarter(2 * dp.inner(x, x) + y_square);
    g(8, 9) = g(9, 8) = exact_quarter(2 * dp.inner(x, ix) + y_sigma);
    return g;
}

IntMatrix printed_flex_gram() {
    return gram_from_rows({
        {2, 0, 0, 0, 0, 0, 0, 0, 0, 3},
        {0, -2, 0, 0, 0, 0, 0, 0, 0, 1},
        {0, 0, -2, 0, 0, 0, 0, 0, 0, 1},
        {0, 0, 0, -2, 0, 0, 0, 0, 0, 1},
        {0, 0, 0, 0, -2, 0, 0, 0, 0, 1},
        {0, 0, 0, 0, 0, -2, 0, 0, 0, 1},
        {0, 0, 0, 0, 0, 0, -2, 0, 0, 1},
        {0, 0, 0, 0, 0, 0, 0, -2, -1, 2},
        {0, 0, 0, 0, 0, 0, 0, -1, -2, 1},
        {3, 1, 1, 1, 1, 1, 1, 2, 2, 1},
    });
}

IntMatrix printed_con_gram() {
    return gram_from_rows({
        {2, 0, 0, 0, 0, 0, 0, 0, 2, 4},
        {0, -2, 0, 0, 0, 0, 0, 0, 1, 1},
        {0, 0, -2, 0, 0, 0, 0, 0, 1, 1},
        {0, 0, 0, -2, 0, 0, 0, 0, 1, 1},
        {0, 0, 0, 0, -2, 0, 0, 0, 1, 1},
        {0, 0, 0, 0, 0, -2, 0, 0, 0, 2},
        {0, 0, 0, 0, 0, 0, -2, 0, 0, 2},
        {0, 0, 0, 0, 0, 0, 0, -2, 0, 2},
        {2, 1, 1, 1, 1, 0, 0, 0, -2, 2},
        {4, 1, 1, 1, 1, 2, 2, 2, 2, -2},
    });
}

PicardExample picard_flex(const KondoModel& m) {
    // M1 = (e~7 + r)/2 with r^2 = -6 and (r, sigma r) = 0.
    PicardExample ex = make_example(m, "flex", {0, 0, 0, 0, 0, 0, 0, 1}, -6, 0, printed_flex_gram());
    realise(m, ex, 3, YShape::r);
    return ex;
}

PicardExample picard_con(const KondoModel& m) {
    // y = r + sigma r: y^2 = 2 r^2 = -8 and (y, sigma y) = 0.
    PicardExample ex = make_example(m, "con", {2, -1, -1, -1, -1, 0, 0, 0}, -8, 0, printed_con_gram());
    realise(m, ex, 2, YShape::r_plus_sigma_r);
    return ex;
}

Integer cubic_case_square(const Integer& d0_sq, const Integer& d2_sq, const Integer& meets) {
    return d0_sq + d2_sq - 2 * meets;
}

MirrorData mirror_data() {
    Lattice u = hyperbolic();
    Lattice tn = direct_sum({u, u, power(ade('A', 1), 8)}).renamed("T_n");
    Lattice u2 = twist(u, 2);
    Lattice th = direct_sum({u2, u2, ade('D', 8)}).renamed("T_h");
    return {tn, th, two_elementary_invariants(tn), two_elementary_invariants(th)};
}

}  // namespace k3lat

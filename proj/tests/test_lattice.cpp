#include <random>

#include <gtest/gtest.h>

#include "k3lat/lattice.hpp"

using namespace k3lat;

namespace {

Lattice del_pezzo() {
    IntMatrix g = IntMatrix::identity(8).scaled(-1);
    g(0, 0) = 1;
    return Lattice(g);
}

IntVector anticanonical() { return {-3, 1, 1, 1, 1, 1, 1, 1}; }

Lattice small_even(std::mt19937& rng) {
    std::uniform_int_distribution<int> off(-2, 2), diag(-3, 3), dim(1, 3);
    std::size_t n = dim(rng);
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        int d = diag(rng);
        g(i, i) = 2 * (d == 0 ? 1 : d);
        for (std::size_t j = i + 1; j < n; ++j) g(i, j) = g(j, i) = off(rng);
    }
    return Lattice(g);
}

Lattice minus_two_plus_four() {
    // <2>^2 + D4^3, the model of the anti-invariant lattice
    return direct_sum({rank_one(2), rank_one(2), ade('D', 4), ade('D', 4), ade('D', 4)});
}

}  // namespace

TEST(Ade, GramAndDeterminants) {
    EXPECT_EQ(ade('A', 1).gram(), (IntMatrix{{-2}}));
    EXPECT_EQ(abs(ade('D', 4).determinant()), 4);
    EXPECT_EQ(abs(ade('E', 7).determinant()), 2);
    EXPECT_EQ(abs(ade('E', 8).determinant()), 1);
    EXPECT_EQ(abs(ade('E', 6).determinant()), 3);
    for (std::size_t m = 1; m <= 12; ++m) EXPECT_EQ(abs(ade('A', m).determinant()), m + 1);
    for (std::size_t n = 4; n <= 10; ++n) EXPECT_EQ(abs(ade('D', n).determinant()), 4);
    for (char s : {'A', 'D', 'E'}) {
        Lattice l = ade(s, s == 'A' ? 5 : 7);
        EXPECT_TRUE(l.is_even());
        EXPECT_EQ(l.signature(), (Signature{0, l.rank(), 0}));
    }
    EXPECT_THROW(ade('D', 3), Error);
    EXPECT_THROW(ade('E', 9), Error);
    EXPECT_THROW(ade('A', 0), Error);
}

TEST(Ade, D4LabelledBasis) {
    Lattice d4 = ade('D', 4);
    ASSERT_EQ(d4.labels(), (std::vector<std::string>{"f1", "f2", "f3", "f4"}));
    // f3 = e2 - e3 is the central node.
    EXPECT_EQ(d4.gram(), (IntMatrix{{-2, 0, 1, 0}, {0, -2, 1, 0}, {1, 1, -2, 1}, {0, 0, 1, -2}}));
}

TEST(Constructors, HyperbolicTwistSum) {
    EXPECT_EQ(hyperbolic().signature(), (Signature{1, 1, 0}));
    EXPECT_THROW(rank_one(3), Error);
    Lattice e72 = twist(ade('E', 7), 2);
    EXPECT_EQ(e72.gram(), ade('E', 7).gram().scaled(2));
    Lattice lplus = direct_sum(rank_one(2), power(ade('A', 1), 7));
    IntMatrix expect = IntMatrix::identity(8).scaled(-2);
    expect(0, 0) = 2;
    EXPECT_EQ(lplus.gram(), expect);
}

TEST(Constructors, PropertiesOfSumsAndTwists) {
    std::mt19937 rng(23);
    for (int t = 0; t < 30; ++t) {
        Lattice a = small_even(rng), b = small_even(rng);
        if (!a.is_nondegenerate() || !b.is_nondegenerate()) continue;
        Lattice s = direct_sum(a, b);
        EXPECT_TRUE(s.is_even());
        EXPECT_EQ(s.determinant(), a.determinant() * b.determinant());
        auto sa = a.signature(), sb = b.signature(), ss = s.signature();
        EXPECT_EQ(ss.plus, sa.plus + sb.plus);
        EXPECT_EQ(ss.minus, sa.minus + sb.minus);
        for (int f : {3, -2}) {
            Lattice tw = twist(a, f);
            Integer scale;
            mpz_pow_ui(scale.get_mpz_t(), Integer(f).get_mpz_t(), a.rank());
            EXPECT_EQ(tw.determinant(), scale * a.determinant());
            auto st = tw.signature();
            if (f > 0) EXPECT_EQ(st, sa);
            else EXPECT_EQ(st, (Signature{sa.minus, sa.plus, sa.zero}));
        }
    }
}

TEST(Complement, CanonicalClassGivesE7) {
    Lattice s = del_pezzo();
    IntMatrix k = IntMatrix::from_rows({anticanonical()});
    IntMatrix perp = orthogonal_complement(s, k);
    Lattice r = sublattice(s, perp);
    EXPECT_EQ(r.rank(), 7u);
    EXPECT_TRUE(r.is_even());
    EXPECT_EQ(r.signature(), (Signature{0, 7, 0}));
    EXPECT_EQ(abs(r.determinant()), 2);
}

TEST(Complement, Examples) {
    Lattice l(IntMatrix{{-2, 0}, {0, -2}});
    EXPECT_EQ(orthogonal_complement(l, IntMatrix{{1, 0}}), (IntMatrix{{0, 1}}));
    // Oracle computed independently with sympy: rank 13, det -1024.
    Lattice lm = minus_two_plus_four();
    IntVector r(14);
    r[2] = 1;
    r[6] = 1;
    IntMatrix perp = orthogonal_complement(lm, IntMatrix::from_rows({r}));
    EXPECT_EQ(perp.rows(), 13u);
    EXPECT_EQ(determinant(lm.restricted_gram(perp)), -1024);
    EXPECT_THROW(orthogonal_complement(lm, IntMatrix::from_rows({r, r})), Error);
}

TEST(Complement, AlwaysSaturatedAndOrthogonal) {
    std::mt19937 rng(29);
    Lattice lm = minus_two_plus_four();
    std::uniform_int_distribution<int> c(-3, 3);
    for (int t = 0; t < 20; ++t) {
        IntMatrix s(2, 14);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 14; ++j) s(i, j) = c(rng);
        if (rank(s) < 2) continue;
        IntMatrix perp = orthogonal_complement(lm, s);
        EXPECT_EQ(perp.rows(), 12u);
        EXPECT_TRUE(lm.pairing(perp, s).is_zero());
        EXPECT_EQ(saturate(perp), perp);
    }
}

TEST(Vectors, InnerNormDivisibility) {
    Lattice lm = minus_two_plus_four();
    IntVector c(14);
    c[2] = 1;
    c[6] = 1;
    LatticeVector r1(lm, c);
    EXPECT_EQ(norm(r1), -4);
    EXPECT_EQ(divisibility(r1), 1);
    EXPECT_TRUE(is_primitive_vector(r1));
    LatticeVector v(Lattice(IntMatrix::identity(3)), {2, 4, 6});
    EXPECT_FALSE(is_primitive_vector(v));
    EXPECT_EQ(content(v.coords()), 2);
    EXPECT_TRUE(is_primitive_vector(basis_vector(lm, 0)));
    EXPECT_THROW(is_primitive_vector(LatticeVector(lm, IntVector(14))), Error);
    EXPECT_THROW(inner(r1, basis_vector(Lattice(IntMatrix::identity(14)), 0)), Error);
    EXPECT_EQ(divisibility(2 * r1), 2);
}

TEST(Enumeration, RootsAndExceptionalClassesOfDelPezzoModel) {
    Lattice s = del_pezzo();
    IntMatrix k = IntMatrix::from_rows({anticanonical()});
    IntMatrix perp = orthogonal_complement(s, k);
    RatMatrix q = to_rational(s.restricted_gram(perp)).scaled(-1);

    auto roots = short_vectors(q, RatVector(7), 2);
    std::size_t count = 0;
    for (const auto& z : roots) {
        Rational n = 0;
        for (std::size_t i = 0; i < 7; ++i)
            for (std::size_t j = 0; j < 7; ++j) n += z[i] * q(i, j) * z[j];
        if (n == 2) ++count;
    }
    EXPECT_EQ(count, 126u);

    // Independent brute force over a box that contains every solution
    // (the coefficient of e0 is at most 3 and the others lie in [-2, 1]).
    std::size_t brute = 0;
    IntVector x(8);
    for (int a = -3; a <= 3; ++a)
        for (int m = 0; m < 16384; ++m) {
            x[0] = a;
            for (int i = 1, t = m; i < 8; ++i, t /= 4) x[i] = t % 4 - 2;
            if (s.inner(x, x) == -1 && s.inner(x, anticanonical()) == -1) ++brute;
        }
    EXPECT_EQ(brute, 56u);

    // The same count through the definite enumeration of the coset e1 + k-perp.
    IntVector e1(8);
    e1[1] = 1;
    auto shift = solve_left(to_rational(perp), RatMatrix::from_rows({{Rational(-3, 2), Rational(3, 2), Rational(1, 2),
                                                                    Rational(1, 2), Rational(1, 2), Rational(1, 2),
                                                                    Rational(1, 2), Rational(1, 2)}}));
    ASSERT_TRUE(shift);  // e1 + k/2 lies in k-perp over Q
    RatVector center(7);
    for (std::size_t i = 0; i < 7; ++i) center[i] = -(*shift)(0, i);
    std::size_t coset = 0;
    for (const auto& z : short_vectors(q, center, Rational(3, 2))) {
        IntVector v = e1;
        for (std::size_t i = 0; i < 7; ++i)
            for (std::size_t j = 0; j < 8; ++j) v[j] += z[i] * perp(i, j);
        if (s.inner(v, v) == -1) ++coset;
    }
    EXPECT_EQ(coset, 56u);
}

TEST(Enumeration, ShortVectorsAgreesWithBruteForce) {
    std::mt19937 rng(31);
    RatMatrix q = to_rational(IntMatrix{{4, 1, 0}, {1, 3, 1}, {0, 1, 5}});
    RatVector c = {Rational(1, 2), Rational(-1, 3), 0};
    Rational bound(17, 2);
    auto got = short_vectors(q, c, bound);
    std::vector<IntVector> want;
    for (int a = -6; a <= 6; ++a)
        for (int b = -6; b <= 6; ++b)
            for (int d = -6; d <= 6; ++d) {
                RatVector y = {a - c[0], b - c[1], d - c[2]};
                Rational n = 0;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) n += y[i] * q(i, j) * y[j];
                if (n <= bound) want.push_back({a, b, d});
            }
    EXPECT_EQ(got, want);
}

TEST(Json, RoundTripIsByteStable) {
    Lattice d4 = ade('D', 4);
    std::string once = lattice_to_json(d4).dump();
    Lattice back = lattice_from_json(nlohmann::json::parse(once));
    EXPECT_EQ(back.gram(), d4.gram());
    EXPECT_EQ(back.labels(), d4.labels());
    EXPECT_EQ(lattice_to_json(back).dump(), once);
    EXPECT_THROW(lattice_from_json(nlohmann::json::parse(R"({"gram":[[1,2],[3,4]]})")), Error);
    EXPECT_THROW(lattice_from_json(nlohmann::json::parse(R"({"gram":[[1,2],[2]]})")), Error);
}

TEST(Builtins, Names) {
    EXPECT_EQ(abs(builtin_lattice("E7").determinant()), 2);
    EXPECT_EQ(builtin_lattice("U(2)").gram(), (IntMatrix{{0, 2}, {2, 0}}));
    EXPECT_EQ(builtin_lattice("<4>").gram(), (IntMatrix{{4}}));
    EXPECT_EQ(builtin_lattice("E8(-1)").signature(), (Signature{8, 0, 0}));
    EXPECT_THROW(builtin_lattice("Q7"), Error);
}

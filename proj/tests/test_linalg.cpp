#include <random>

#include <gtest/gtest.h>

#include "k3lat/lattice.hpp"
#include "k3lat/linalg.hpp"

using namespace k3lat;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

// Product of random elementary row operations.
IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
    IntMatrix p = IntMatrix::identity(n);
    std::uniform_int_distribution<int> idx(0, int(n) - 1), coef(-2, 2);
    for (int step = 0; step < 12; ++step) {
        int a = idx(rng), b = idx(rng);
        if (a == b) continue;
        int f = coef(rng);
        for (std::size_t j = 0; j < n; ++j) p(a, j) += f * p(b, j);
    }
    return p;
}

void expect_valid_snf(const IntMatrix& m) {
    auto s = smith_normal_form(m);
    EXPECT_EQ(s.U * m * s.V, s.D);
    EXPECT_EQ(abs(determinant(s.U)), 1);
    EXPECT_EQ(abs(determinant(s.V)), 1);
    for (std::size_t i = 0; i < s.D.rows(); ++i)
        for (std::size_t j = 0; j < s.D.cols(); ++j)
            if (i != j) EXPECT_EQ(s.D(i, j), 0);
    auto d = s.diagonal();
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        EXPECT_GE(d[i], 0);
        if (d[i] == 0) EXPECT_EQ(d[i + 1], 0);
        else EXPECT_EQ(d[i + 1] % d[i], 0);
    }
}

}  // namespace

TEST(Smith, ExampleValues) {
    EXPECT_EQ(smith_normal_form(IntMatrix{{2, 0}, {0, 4}}).diagonal(), (IntVector{2, 4}));
    // Hand reduction: gcd of entries is 1, det 3.
    EXPECT_EQ(smith_normal_form(IntMatrix{{2, 1}, {1, 2}}).diagonal(), (IntVector{1, 3}));
    EXPECT_TRUE(smith_normal_form(IntMatrix(2, 2)).D.is_zero());
}

TEST(Smith, RandomMatricesSatisfyContract) {
    std::mt19937 rng(7);
    for (int t = 0; t < 60; ++t) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        expect_valid_snf(random_matrix(rng, r, c, -9, 9));
    }
    expect_valid_snf(IntMatrix(0, 3));
    expect_valid_snf(IntMatrix(3, 0));
}

TEST(Smith, LargeEntriesDoNotOverflow) {
    IntMatrix m{{Integer("123456789012345678901234567890"), 3}, {7, Integer("-98765432109876543210")}};
    expect_valid_snf(m);
}

TEST(Hermite, CanonicalForSameLattice) {
    std::mt19937 rng(11);
    for (int t = 0; t < 30; ++t) {
        IntMatrix m = random_matrix(rng, 3, 5, -6, 6);
        IntMatrix p = random_unimodular(rng, 3);
        EXPECT_EQ(hermite_normal_form(m), hermite_normal_form(p * m));
    }
    EXPECT_EQ(hermite_normal_form(IntMatrix{{2, 4}, {1, 2}}), (IntMatrix{{1, 2}}));
}

TEST(Determinant, MatchesRationalElimination) {
    std::mt19937 rng(3);
    for (int t = 0; t < 40; ++t) {
        IntMatrix m = random_matrix(rng, 5, 5, -5, 5);
        EXPECT_EQ(Rational(determinant(m)), determinant(to_rational(m)));
    }
}

TEST(Signature, Examples) {
    EXPECT_EQ(signature(IntMatrix{{0, 1}, {1, 0}}), (Signature{1, 1, 0}));
    EXPECT_EQ(signature(IntMatrix{{2, 0, 0}, {0, -2, 0}, {0, 0, 0}}), (Signature{1, 1, 1}));
    EXPECT_EQ(signature(ade('E', 7).gram()), (Signature{0, 7, 0}));
    EXPECT_THROW(signature(IntMatrix{{0, 1}, {0, 0}}), Error);
}

TEST(Signature, CongruenceInvariant) {
    std::mt19937 rng(5);
    for (int t = 0; t < 40; ++t) {
        IntMatrix a = random_matrix(rng, 5, 5, -3, 3);
        IntMatrix g = a + a.transpose();
        if (t % 3 == 0) g(0, 0) = 0;
        IntMatrix p = random_unimodular(rng, 5);
        EXPECT_EQ(signature(g), signature(p.transpose() * g * p));
        auto s = signature(g);
        EXPECT_EQ(s.plus + s.minus + s.zero, 5u);
        EXPECT_EQ(s.plus + s.minus, rank(g));
    }
}

TEST(Saturate, Examples) {
    EXPECT_EQ(saturate(IntMatrix{{2, 0}, {0, 1}}), (IntMatrix{{1, 0}, {0, 1}}));
    EXPECT_EQ(saturate(IntMatrix{{1, 1}}), (IntMatrix{{1, 1}}));
    // Content division oracle.
    EXPECT_EQ(saturate(IntMatrix{{2, 4}}), (IntMatrix{{1, 2}}));
    EXPECT_THROW(saturate(IntMatrix{{1, 2}, {2, 4}}), Error);
}

TEST(Saturate, IdempotentAndIndexIsElementaryDivisorProduct) {
    std::mt19937 rng(13);
    for (int t = 0; t < 30; ++t) {
        IntMatrix s = random_matrix(rng, 3, 6, -8, 8);
        if (rank(s) < 3) continue;
        IntMatrix sat = saturate(s);
        EXPECT_EQ(saturate(sat), sat);
        // s lies in sat with the expected index.
        auto x = solve_left(to_rational(sat), to_rational(s));
        ASSERT_TRUE(x.has_value());
        IntMatrix xi = to_integer(*x);
        EXPECT_EQ(abs(determinant(xi)), index_in_saturation(s));
    }
}

TEST(Kernel, Examples) {
    EXPECT_EQ(integer_kernel(IntMatrix{{1}, {1}}), (IntMatrix{{1, -1}}));
    EXPECT_EQ(integer_kernel(IntMatrix::identity(3)).rows(), 0u);
    // 2x = 0 forces x = 0; the second coordinate is free.
    EXPECT_EQ(integer_kernel(IntMatrix{{2, 0}, {0, 0}}), (IntMatrix{{0, 1}}));
}

TEST(Kernel, RandomKernelIsSaturatedAndAnnihilates) {
    std::mt19937 rng(17);
    for (int t = 0; t < 30; ++t) {
        IntMatrix m = random_matrix(rng, 6, 3, -5, 5);
        IntMatrix k = integer_kernel(m);
        EXPECT_EQ(k.rows(), 6 - rank(m));
        EXPECT_TRUE((k * m).is_zero());
        if (k.rows()) EXPECT_EQ(saturate(k), k);
    }
}

TEST(SolveLeft, DetectsMembership) {
    RatMatrix a = to_rational(IntMatrix{{1, 0, 1}, {0, 1, 1}});
    auto x = solve_left(a, to_rational(IntMatrix{{2, 3, 5}}));
    ASSERT_TRUE(x);
    EXPECT_EQ(*x, to_rational(IntMatrix{{2, 3}}));
    EXPECT_FALSE(solve_left(a, to_rational(IntMatrix{{1, 1, 1}})));
}

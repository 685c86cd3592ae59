#include <map>
#include <random>

#include <gtest/gtest.h>

#include "k3lat/discriminant.hpp"

using namespace k3lat;

namespace {

Lattice lplus_model() { return direct_sum(rank_one(2), power(ade('A', 1), 7)); }
Lattice lminus_model() { return direct_sum({rank_one(2), rank_one(2), ade('D', 4), ade('D', 4), ade('D', 4)}); }

// q(x+y) - q(x) - q(y) = 2 b(x,y) and q(-x) = q(x), exhaustively.
void expect_consistent(const FiniteQuadraticForm& f) {
    auto all = f.enumerate();
    for (const auto& x : all) {
        EXPECT_EQ((-x).q(), x.q());
        EXPECT_EQ(mod1(x.q()), x.b(x));
        for (const auto& y : all) EXPECT_EQ(mod2((x + y).q() - x.q() - y.q()), mod2(2 * x.b(y)));
    }
}

}  // namespace

TEST(DiscriminantForm, SmallExamples) {
    auto a1 = discriminant_form(ade('A', 1));
    EXPECT_EQ(a1.orders(), (std::vector<std::int64_t>{2}));
    EXPECT_EQ(a1.q_generator(0), Rational(3, 2));
    EXPECT_EQ(a1.enumerate().size(), 2u);

    auto e8 = discriminant_form(ade('E', 8));
    EXPECT_EQ(e8.size(), 1u);
    EXPECT_EQ(e8.enumerate().size(), 1u);

    EXPECT_THROW(discriminant_form(Lattice(IntMatrix{{1}})), Error);
    EXPECT_THROW(discriminant_form(Lattice(IntMatrix{{0, 0}, {0, 2}})), Error);
}

TEST(DiscriminantForm, D4OnNamedGenerators) {
    Lattice d4 = ade('D', 4);
    auto f = discriminant_form(d4);
    ASSERT_EQ(f.orders(), (std::vector<std::int64_t>{2, 2}));
    auto g = f.with_generators({{0, Rational(1, 2), 0, Rational(1, 2)}, {Rational(1, 2), Rational(1, 2), 0, 0}});
    EXPECT_EQ(g.q_generator(0), 1);
    EXPECT_EQ(g.q_generator(1), 1);
    EXPECT_EQ(g.b_generator(0, 1), Rational(1, 2));
    // The two presentations agree on every class.
    for (const auto& x : g.enumerate()) EXPECT_EQ(f.reduce(x.lift()).q(), x.q());
    EXPECT_THROW(f.with_generators({{0, Rational(1, 2), 0, Rational(1, 2)}, {0, Rational(1, 2), 0, Rational(1, 2)}}),
                 Error);
    EXPECT_THROW(f.reduce({Rational(1, 3), 0, 0, 0}), Error);
}

TEST(DiscriminantForm, ClassificationOfAdeGroups) {
    for (std::size_t m = 1; m <= 12; ++m)
        EXPECT_EQ(discriminant_form(ade('A', m)).orders(), (std::vector<std::int64_t>{std::int64_t(m + 1)}));
    for (std::size_t n = 4; n <= 10; ++n) {
        auto o = discriminant_form(ade('D', n)).orders();
        if (n % 2) EXPECT_EQ(o, (std::vector<std::int64_t>{4}));
        else EXPECT_EQ(o, (std::vector<std::int64_t>{2, 2}));
    }
    EXPECT_EQ(discriminant_form(ade('E', 6)).orders(), (std::vector<std::int64_t>{3}));
    EXPECT_EQ(discriminant_form(ade('E', 7)).orders(), (std::vector<std::int64_t>{2}));
    EXPECT_TRUE(discriminant_form(ade('E', 8)).orders().empty());
}

TEST(DiscriminantForm, GroupOrderIsDeterminant) {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> off(-2, 2), diag(-3, 3);
    for (int t = 0; t < 30; ++t) {
        IntMatrix g(3, 3);
        for (int i = 0; i < 3; ++i) {
            int d = diag(rng);
            g(i, i) = 2 * (d == 0 ? 1 : d);
            for (int j = i + 1; j < 3; ++j) g(i, j) = g(j, i) = off(rng);
        }
        Lattice l(g);
        if (!l.is_nondegenerate()) continue;
        auto f = discriminant_form(l);
        EXPECT_EQ(Integer(f.size()), abs(l.determinant()));
        expect_consistent(f);
        auto neg = discriminant_form(twist(l, -1));
        ASSERT_EQ(neg.orders(), f.orders());
        for (std::size_t i = 0; i < f.generator_count(); ++i) EXPECT_EQ(neg.q_generator(i), mod2(-f.q_generator(i)));
    }
}

TEST(DiscriminantForm, QuadraticFormAxioms) {
    expect_consistent(discriminant_form(ade('D', 5)));
    expect_consistent(discriminant_form(ade('A', 6)));
    expect_consistent(discriminant_form(lplus_model()));
}

TEST(TwoElementary, Invariants) {
    EXPECT_EQ(two_elementary_invariants(lplus_model()), (TwoElementaryInvariants{1, 7, 8, 1}));
    EXPECT_EQ(two_elementary_invariants(lminus_model()), (TwoElementaryInvariants{2, 12, 8, 1}));
    Lattice u2 = builtin_lattice("U(2)");
    EXPECT_EQ(two_elementary_invariants(u2), (TwoElementaryInvariants{1, 1, 2, 0}));
    std::map<Rational, int> values;
    for (const auto& x : discriminant_form(u2).enumerate()) ++values[x.q()];
    EXPECT_EQ(values, (std::map<Rational, int>{{0, 3}, {1, 1}}));
    EXPECT_THROW(two_elementary_invariants(ade('A', 2)), Error);
}

TEST(Enumerate, OrderAndCap) {
    auto f = discriminant_form(lplus_model());
    auto all = f.enumerate();
    ASSERT_EQ(all.size(), 256u);
    for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i].index(), i);
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    EXPECT_THROW(f.enumerate(100), Error);
    EXPECT_EQ(FiniteQuadraticForm().enumerate().size(), 1u);
}

TEST(Morphism, BasicProperties) {
    auto f = discriminant_form(ade('D', 4));
    auto id = FqfMorphism::identity(f);
    EXPECT_TRUE(id.is_bijective());
    EXPECT_TRUE(id.is_isometry());
    auto swap = FqfMorphism::from_f2_matrix(f, f, {{0, 1}, {1, 0}});
    EXPECT_TRUE((swap * swap) == id);
    auto zero = FqfMorphism::from_f2_matrix(f, f, {{0, 0}, {0, 0}});
    EXPECT_FALSE(zero.is_injective());
}

TEST(Glue, TrivialSubgroupIsDirectSum) {
    Lattice s = ade('A', 1), k = ade('A', 2);
    auto g = glue({s, k, {}, {}});
    EXPECT_EQ(g.lattice.gram(), direct_sum(s, k).gram());
    auto rep = verify_embedding_data({s, k, {}, {}}, discriminant_form(direct_sum(s, k)));
    EXPECT_TRUE(rep.ok()) << rep.details;
}

TEST(Glue, RankOnePairGivesUnimodularPlane) {
    Lattice s = rank_one(2), k = ade('A', 1);
    auto fs = discriminant_form(s), fk = discriminant_form(k);
    GluingData data{s, k, {fs.generator(0)}, {fk.generator(0)}};
    auto g = glue(data);
    EXPECT_EQ(g.lattice.determinant(), -1);
    EXPECT_TRUE(g.lattice.is_even());
    EXPECT_EQ(g.lattice.signature(), (Signature{1, 1, 0}));
    EXPECT_TRUE(verify_embedding_data(data, FiniteQuadraticForm()).ok());
    // Embeddings are primitive and mutually orthogonal.
    EXPECT_TRUE(g.lattice.pairing(g.s_embedding, g.k_embedding).is_zero());
    EXPECT_EQ(saturate(g.s_embedding), hermite_normal_form(g.s_embedding));
}

TEST(Glue, RejectsNonIsotropicGraph) {
    Lattice s = rank_one(2), k = rank_one(2);
    auto fs = discriminant_form(s), fk = discriminant_form(k);
    GluingData data{s, k, {fs.generator(0)}, {fk.generator(0)}};
    EXPECT_THROW(glue(data), Error);
    auto rep = verify_embedding_data(data, FiniteQuadraticForm());
    EXPECT_TRUE(rep.monomorphism);
    EXPECT_FALSE(rep.q_condition);
}

TEST(Glue, ComplementRecoversSecondSummand) {
    // <2> + A1^7 glued to <2>^2 + D4 + ... is too big here; use D4 with its own negative.
    Lattice s = ade('D', 4), k = twist(ade('D', 4), -1);
    auto fs = discriminant_form(s), fk = discriminant_form(k);
    // Identity on generators negates q, which is what an isotropic graph needs.
    GluingData data{s, k, {fs.generator(0), fs.generator(1)}, {fk.generator(0), fk.generator(1)}};
    auto g = glue(data);
    EXPECT_TRUE(g.lattice.is_unimodular());
    EXPECT_TRUE(g.lattice.is_even());
    IntMatrix perp = orthogonal_complement(g.lattice, g.s_embedding);
    EXPECT_TRUE(same_row_lattice(perp, g.k_embedding));
    EXPECT_EQ(g.lattice.restricted_gram(g.k_embedding), k.gram());
}

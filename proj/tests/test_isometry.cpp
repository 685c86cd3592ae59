#include <random>

#include <gtest/gtest.h>

#include "k3lat/isometry.hpp"

using namespace k3lat;

namespace {

Lattice lplus_model() { return direct_sum(rank_one(2), power(ade('A', 1), 7)); }

// Pullback of a Del Pezzo root to the doubled model.
IntVector root(int a0, std::initializer_list<std::pair<int, int>> rest) {
    IntVector v(8);
    v[0] = a0;
    for (auto [i, c] : rest) v[i] = c;
    return v;
}

std::vector<IntVector> e7_roots() {
    std::vector<IntVector> out{root(1, {{1, -1}, {2, -1}, {3, -1}})};
    for (int i = 1; i <= 6; ++i) out.push_back(root(0, {{i, 1}, {i + 1, -1}}));
    return out;
}

}  // namespace

TEST(Isometry, RejectsNonIsometries) {
    Lattice u = hyperbolic();
    EXPECT_NO_THROW(Isometry(u, IntMatrix{{0, 1}, {1, 0}}));
    EXPECT_THROW(Isometry(u, IntMatrix{{1, 1}, {0, 1}}), Error);
    EXPECT_THROW(Isometry(u, IntMatrix{{1, 0, 0}}), Error);
}

TEST(Reflection, Properties) {
    Lattice e7 = ade('E', 7);
    for (std::size_t i = 0; i < 7; ++i) {
        IntVector a(7);
        a[i] = 1;
        Isometry s = reflection(e7, a);
        IntVector minus_a(7);
        minus_a[i] = -1;
        EXPECT_EQ(s.apply(a), minus_a);
        EXPECT_TRUE((s * s).is_identity());
        EXPECT_TRUE(verify_order(s, 2));
        // Fixes the orthogonal complement pointwise.
        IntMatrix perp = orthogonal_complement(e7, IntMatrix::from_rows({a}));
        for (std::size_t r = 0; r < perp.rows(); ++r) EXPECT_EQ(s.apply(perp.row(r)), perp.row(r));
    }
    Isometry neg = reflection(rank_one(2), {1});
    EXPECT_EQ(neg.matrix(), (IntMatrix{{-1}}));
    // In <2>+<4>, v = (1,1) has norm 6 and 2(b1,v)/6 = 2/3.
    EXPECT_THROW(reflection(Lattice(IntMatrix{{2, 0}, {0, 4}}), {1, 1}), Error);
}

TEST(Reflection, PulledBackRootsActOnDoubledModel) {
    Lattice lp = lplus_model();
    for (const auto& a : e7_roots()) {
        EXPECT_EQ(lp.inner(a, a), -4);
        Isometry s = reflection(lp, a);
        EXPECT_TRUE(verify_order(s, 2));
    }
}

TEST(Order, Examples) {
    Lattice two = direct_sum(rank_one(2), rank_one(2));
    Isometry j1(two, IntMatrix{{0, -1}, {1, 0}});
    EXPECT_TRUE(verify_order(j1, 4));
    EXPECT_FALSE(verify_order(j1, 2));
    EXPECT_EQ((j1 * j1).matrix(), IntMatrix::identity(2).scaled(-1));
    EXPECT_TRUE(verify_order(Isometry::identity(two), 1));
    EXPECT_EQ(j1.power(4), Isometry::identity(two));
    EXPECT_EQ(j1.power(-1), j1.power(3));
}

TEST(Eigenlattice, ReflectionSplitsOffTheRoot) {
    Lattice e7 = ade('E', 7);
    IntVector a(7);
    a[3] = 1;
    Isometry s = reflection(e7, a);
    EXPECT_EQ(eigenlattice(s, -1), IntMatrix::from_rows({a}));
    EXPECT_EQ(eigenlattice(s, 1).rows(), 6u);
}

TEST(Induced, IdentityAndHomomorphism) {
    Lattice lp = lplus_model();
    auto form = discriminant_form(lp);
    EXPECT_TRUE(induced_on_discriminant(Isometry::identity(lp), form) == FqfMorphism::identity(form));

    auto roots = e7_roots();
    std::mt19937 rng(3);
    std::uniform_int_distribution<std::size_t> pick(0, roots.size() - 1);
    for (int t = 0; t < 10; ++t) {
        Isometry f = reflection(lp, roots[pick(rng)]) * reflection(lp, roots[pick(rng)]);
        Isometry g = reflection(lp, roots[pick(rng)]);
        auto lhs = induced_on_discriminant(f * g, form);
        auto rhs = induced_on_discriminant(f, form) * induced_on_discriminant(g, form);
        EXPECT_TRUE(lhs == rhs);
        EXPECT_TRUE(lhs.is_bijective());
        EXPECT_TRUE(lhs.is_isometry());
    }

    // Every root is orthogonal to k = -3e0 + sum e_i, so k/2 is fixed.
    IntVector k{-3, 1, 1, 1, 1, 1, 1, 1};
    RatVector khalf(8);
    for (std::size_t i = 0; i < 8; ++i) khalf[i] = Rational(k[i]) / 2;
    FqfElement kh = form.reduce(khalf);
    for (const auto& a : roots) EXPECT_EQ(induced_on_discriminant(reflection(lp, a), form)(kh), kh);
}

TEST(Orbits, TrivialAndInvariantSets) {
    auto form = discriminant_form(ade('D', 4));
    auto all = form.enumerate();
    auto single = orbits({}, all);
    EXPECT_EQ(single.size(), 4u);
    auto swap = FqfMorphism::from_f2_matrix(form, form, {{0, 1}, {1, 0}});
    auto two = orbits({swap}, all);
    ASSERT_EQ(two.size(), 3u);
    EXPECT_EQ(two[0].size(), 1u);  // 0
    EXPECT_EQ(two[1].size(), 2u);  // the swapped pair
    EXPECT_EQ(two[2].size(), 1u);
    EXPECT_THROW(orbits({swap}, {form.generator(0)}), Error);
}

TEST(Orbits, IndependentOfGeneratorOrder) {
    Lattice lp = lplus_model();
    auto form = discriminant_form(lp);
    std::vector<FqfMorphism> gens;
    for (const auto& a : e7_roots()) gens.push_back(induced_on_discriminant(reflection(lp, a), form));
    auto all = form.enumerate();
    auto o1 = orbits(gens, all);
    std::reverse(gens.begin(), gens.end());
    auto o2 = orbits(gens, all);
    EXPECT_EQ(o1.size(), o2.size());
    std::size_t total = 0;
    for (std::size_t i = 0; i < o1.size(); ++i) {
        EXPECT_EQ(o1[i], o2[i]);
        total += o1[i].size();
    }
    EXPECT_EQ(total, 256u);
}

TEST(Closure, SmallGroups) {
    auto form = discriminant_form(ade('D', 4));
    auto swap = FqfMorphism::from_f2_matrix(form, form, {{0, 1}, {1, 0}});
    EXPECT_EQ(group_closure({swap}).size(), 2u);
    EXPECT_EQ(group_closure({FqfMorphism::identity(form)}).size(), 1u);
    auto shear = FqfMorphism::from_f2_matrix(form, form, {{1, 1}, {0, 1}});
    auto g = group_closure({swap, shear});
    EXPECT_EQ(g.size(), 6u);  // GL(2, F2)
    EXPECT_THROW(group_closure({swap, shear}, 5), Error);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_TRUE(g.element(i).is_bijective());

    // Negation on Z/4 goes through the general path.
    auto z4 = discriminant_form(ade('A', 3));
    auto minus = FqfMorphism(z4, z4, {z4.generator(0).times(3)});
    EXPECT_EQ(group_closure({minus}).size(), 2u);
}

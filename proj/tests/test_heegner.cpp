#include <random>
#include <set>

#include <gtest/gtest.h>

#include "k3lat/heegner.hpp"
#include "k3lat/picard.hpp"

using namespace k3lat;

namespace {

const KondoModel& M() { return kondo_model(); }

const BoxScan& scan() {
    static const BoxScan s = scan_box(2);
    return s;
}

// gcd of the pairings of r with the basis of L-.
Integer pairing_gcd(const IntVector& r) {
    IntVector gr = M().lminus.gram().apply(r);
    Integer g = 0;
    for (const auto& c : gr) g = gcd(g, c);
    return g;
}

RatVector halve(const IntVector& v) {
    RatVector out;
    for (const auto& c : v) out.push_back(Rational(c) / 2);
    return out;
}

IntVector random_vector(std::mt19937& rng, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    IntVector r(14);
    for (auto& c : r) c = d(rng);
    return r;
}

}  // namespace

TEST(Families, NormsTypesAndIndices) {
    for (int k = 1; k <= 6; ++k) {
        const std::int64_t norms[] = {-4 * k, -2 * (2 * k + 1), -2 * (2 * k + 1), -2 * (4 * k + 1)};
        for (int i = 1; i <= 4; ++i) {
            IntVector r = existence_family(i, k);
            EXPECT_EQ(M().lminus.inner(r, r), norms[i - 1]) << i << "," << k;
            EXPECT_EQ(type_of(M(), r), -norms[i - 1] / 2);
            int want = (i == 2 && k % 2 == 1) || i == 4 ? 2 : 1;
            EXPECT_EQ(index_of(M(), r), want) << i << "," << k;
            EXPECT_EQ(pairing_gcd(r), want);
        }
    }
    EXPECT_THROW(existence_family(5, 1), Error);
    EXPECT_THROW(existence_family(1, 0), Error);
}

TEST(Lambda, SigmaPairingVanishesAndPrimitivityMatchesSaturation) {
    std::mt19937 rng(7);
    int tested = 0;
    while (tested < 200) {
        IntVector r = random_vector(rng, 3);
        if (content(r) != 1 || M().lminus.inner(r, r) >= 0) continue;
        ++tested;
        LambdaSublattice l = lambda_of(M(), r);
        EXPECT_EQ(l.gram(0, 1), 0);
        EXPECT_EQ(l.gram(1, 1), l.gram(0, 0));
        EXPECT_EQ(l.primitive, same_row_lattice(saturate(l.basis), l.basis));
    }
}

TEST(Lambda, ImprimitiveAndNonNegativeVectorsAreRejected) {
    IntVector r = existence_family(1, 2);
    for (auto& c : r) c *= 2;
    EXPECT_THROW(type_of(M(), r), Error);
    EXPECT_THROW(index_of(M(), r), Error);
    EXPECT_THROW(heegner_invariants(M(), r), Error);
    try {
        type_of(M(), r);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::imprimitive);
    }
    IntVector pos(14);
    pos[0] = 1;
    EXPECT_THROW(type_of(M(), pos), Error);
    EXPECT_THROW(type_of(M(), IntVector(3)), Error);
}

TEST(MGroup, Examples) {
    EXPECT_EQ(m_group(M(), existence_family(1, 1)).factors, (std::vector<Integer>{2}));
    EXPECT_EQ(m_group(M(), existence_family(2, 1)).factors, (std::vector<Integer>{2, 2}));
    EXPECT_EQ(m_group(M(), existence_family(3, 2)).factors, (std::vector<Integer>{2}));
}

TEST(MGroup, OrderMatchesDeterminantIdentity) {
    // [P : L+ + Lambda]^2 = |det L+| |det Lambda| / |det P|.
    const auto& g = M().k3;
    std::vector<IntVector> vs;
    for (int k = 1; k <= 3; ++k)
        for (int i = 1; i <= 4; ++i) vs.push_back(existence_family(i, k));
    for (std::size_t i = 0; i < scan().sample.size(); i += 50) vs.push_back(scan().sample[i]);
    for (const auto& r : vs) {
        LambdaSublattice l = lambda_of(M(), r);
        ASSERT_TRUE(l.primitive);
        IntMatrix perp = orthogonal_complement(M().lminus, l.basis) * g.k_embedding;
        IntMatrix p = orthogonal_complement(g.lattice, perp);
        Integer det_p = abs(determinant(g.lattice.restricted_gram(p)));
        Integer sq = abs(M().lplus.determinant()) * abs(determinant(l.gram)) / det_p;
        Integer order = 1;
        for (const auto& f : m_group(M(), r).factors) order *= f;
        EXPECT_EQ(order * order, sq);
    }
}

TEST(MGroup, PipelineMatchesShortcutOnCorpus) {
    auto corpus = heegner_corpus(scan());
    ASSERT_GE(corpus.size(), 24u);
    std::set<std::pair<std::int64_t, int>> kinds;
    for (const auto& e : corpus) {
        auto g = m_group(M(), e.r);
        ASSERT_FALSE(g.factors.empty());
        EXPECT_EQ(g.factors, e.index == 2 ? (std::vector<Integer>{2, 2}) : (std::vector<Integer>{2}));
        if (e.index == 2) {
            EXPECT_EQ(e.type % 2, 1) << e.source;
        }
        EXPECT_EQ(g.plus_subgroup.size(), g.factors.size() == 2 ? 4u : 2u);
        kinds.insert({e.type, e.index});
    }
    EXPECT_TRUE(kinds.count({1, 1}));
    EXPECT_TRUE(kinds.count({3, 2}));
}

TEST(BoxScan, Invariants) {
    const auto& s = scan();
    EXPECT_EQ(s.bound, 2);
    EXPECT_EQ(s.scanned, 25u * 531441u);  // 5^2 * 3^12
    EXPECT_GT(s.admissible, 0u);
    EXPECT_LE(s.even_type, s.admissible);
    EXPECT_EQ(s.index_two_even_type, 0u);
    EXPECT_EQ(s.parity_hits, 0u);
    EXPECT_EQ(s.literal_hits, 0u);
    EXPECT_GT(s.literal_disagreements, 0u);
    for (const auto& [key, r] : s.representatives) {
        EXPECT_EQ(type_of(M(), r), key.first);
        EXPECT_EQ(index_of(M(), r), key.second);
    }
    // Deterministic sample.
    EXPECT_EQ(scan_box(1).sample, scan_box(1).sample);
}

TEST(C3, EvenTypeCorpus) {
    for (const auto& e : heegner_corpus(scan())) {
        if (e.type % 2) {
            EXPECT_THROW(check_c3(M(), e.r), Error);
            continue;
        }
        auto c = check_c3(M(), e.r);
        EXPECT_TRUE(c.quotient) << e.source;
        EXPECT_TRUE(c.discriminant) << e.source;
        EXPECT_TRUE(c.parity) << e.source;
    }
}

TEST(C3, ParityConditionsMatchDiscriminantClass) {
    // Property: the parity shortcut is exactly (r + sigma r)/2 = gamma(k/2).
    const FqfElement target = M().gamma(k_half(M()));
    std::mt19937 rng(11);
    std::size_t literal_disagree = 0, hits = 0;
    for (int t = 0; t < 3000; ++t) {
        IntVector r = random_vector(rng, 3);
        IntVector f = M().sigma_minus.apply(r);
        for (std::size_t i = 0; i < 14; ++i) f[i] += r[i];
        bool oracle = M().a_minus.reduce(halve(f)) == target;
        EXPECT_EQ(c3_parity_conditions(r), oracle);
        hits += oracle;
        literal_disagree += c3_literal_conditions(r) != oracle;
    }
    EXPECT_GT(hits, 0u);
    EXPECT_GT(literal_disagree, 0u);
}

TEST(Degrees, FormulasParityAndConverse) {
    for (std::int64_t n = 2; n <= 50; ++n) {
        EXPECT_EQ(splitting_degree(n, 1), 2 * (n - 1));
        EXPECT_EQ(splitting_degree(n, 1) % 2, 0);
        if (n % 2 == 1 && n >= 3) {
            EXPECT_EQ(splitting_degree(n, 2), n - 2);
            EXPECT_EQ(splitting_degree(n, 2) % 2, 1);
        } else {
            EXPECT_THROW(splitting_degree(n, 2), Error);
        }
    }
    EXPECT_THROW(splitting_degree(1, 1), Error);
    EXPECT_THROW(splitting_degree(5, 3), Error);
    for (std::int64_t d = 1; d <= 98; ++d) {
        auto [n, m] = converse_type(d);
        EXPECT_EQ(splitting_degree(n, m), d);
        EXPECT_EQ(m == 2, d % 2 == 1);
    }
    EXPECT_THROW(converse_type(0), Error);
}

TEST(Witness, PrintedClassesPassOutsideOneModFour) {
    const DelPezzoModel dp = del_pezzo_model();
    for (std::int64_t n = 2; n <= 50; ++n) {
        for (int m = 1; m <= 2; ++m) {
            if (m == 2 && n % 2 == 0) continue;
            if (m == 2 && n % 4 == 1) continue;
            auto w = witness_class(n, m);
            EXPECT_TRUE(w.ok()) << n << "," << m << " " << w.describe();
            // Recompute the identities directly.
            Integer sq = dp.lattice.inner(w.x, w.x), deg = -dp.lattice.inner(w.x, dp.k);
            EXPECT_EQ(sq, m == 1 ? 2 * n - 4 : n - 4);
            EXPECT_EQ(deg, splitting_degree(n, m));
            EXPECT_EQ(sq - deg, -2);  // arithmetic genus 0
        }
    }
}

TEST(Witness, OneModFourIndexTwo) {
    for (std::int64_t n = 5; n <= 50; n += 4) EXPECT_FALSE(witness_class(n, 2).ok()) << n;
    EXPECT_EQ(find_witness(5, 2), (IntVector{1, 0, 0, 0, 0, 0, 0, 0}));
    EXPECT_EQ(find_witness(9, 2), (IntVector{3, -2, 0, 0, 0, 0, 0, 0}));
    EXPECT_EQ(find_witness(13, 2), (IntVector{5, -4, 0, 0, 0, 0, 0, 0}));
    for (std::int64_t n : {5, 9, 13, 17, 49}) EXPECT_TRUE(check_witness(n, 2, find_witness(n, 2)).ok()) << n;
}

TEST(Witness, FindWitnessPrefersPassingPrintedClass) {
    EXPECT_EQ(find_witness(3, 2), (IntVector{0, 1, 0, 0, 0, 0, 0, 0}));
    EXPECT_EQ(find_witness(2, 1), (IntVector{1, -1, 0, 0, 0, 0, 0, 0}));
    EXPECT_EQ(find_witness(5, 1), (IntVector{4, -3, -1, 0, 0, 0, 0, 0}));
    for (std::int64_t n = 2; n <= 30; ++n) {
        auto w = witness_class(n, 1);
        if (w.ok()) {
            EXPECT_EQ(find_witness(n, 1), w.x);
        }
        EXPECT_TRUE(check_witness(n, 1, search_witness(n, 1)).ok());
    }
    // The wrong class parity is caught.
    EXPECT_FALSE(check_witness(3, 2, {0, 0, 1, 0, 0, 0, 0, 0}).class_ok);
}

TEST(Invariants, QueryExample) {
    auto h = heegner_invariants(M(), {0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0});
    EXPECT_EQ(h.type, 2);
    EXPECT_EQ(h.index, 1);
    EXPECT_EQ(h.m_group, (std::vector<Integer>{2}));
    ASSERT_TRUE(h.min_degree);
    EXPECT_EQ(*h.min_degree, 2);
    auto one = heegner_invariants(M(), scan().representatives.at({1, 1}));
    EXPECT_FALSE(one.min_degree);
}

TEST(Picard, ConicExampleMatchesPrint) {
    auto ex = picard_con(M());
    EXPECT_TRUE(ex.diffs.empty());
    EXPECT_EQ(ex.derived, printed_con_gram());
    EXPECT_TRUE(ex.even);
    EXPECT_EQ(ex.signature, (Signature{1, 9, 0}));
    EXPECT_EQ(ex.determinant, -1024);
    ASSERT_TRUE(ex.r);
    EXPECT_EQ(ex.type, 2);
    EXPECT_EQ(ex.index, 1);
    EXPECT_TRUE(ex.realized_in_k3);
    EXPECT_TRUE(ex.realized_gram_matches);
    EXPECT_TRUE(ex.generates_saturation);
    EXPECT_TRUE(ex.lplus_primitive);
}

TEST(Picard, FlexExample) {
    auto ex = picard_flex(M());
    EXPECT_TRUE(ex.even);
    EXPECT_TRUE(ex.symmetric);
    EXPECT_EQ(ex.signature, (Signature{1, 9, 0}));
    EXPECT_EQ(abs(ex.determinant), 576);
    // Only the last row differs, and the printed matrix is not symmetric.
    ASSERT_EQ(ex.diffs.size(), 2u);
    for (const auto& d : ex.diffs) EXPECT_EQ(d.row, 9u);
    EXPECT_FALSE(printed_flex_gram().is_symmetric());
    ASSERT_TRUE(ex.r);
    EXPECT_EQ(ex.type, 3);
    EXPECT_EQ(ex.index, 2);
    EXPECT_TRUE(ex.realized_in_k3);
    EXPECT_TRUE(ex.realized_gram_matches);
    EXPECT_TRUE(ex.generates_saturation);
    EXPECT_TRUE(ex.lplus_primitive);
}

TEST(Picard, FractionalPairingRejected) {
    // x = e7, y^2 = -4: 2x^2 + y^2 = -6 is not divisible by 4.
    EXPECT_THROW(derive_picard_gram(M(), {0, 0, 0, 0, 0, 0, 0, 1}, -4, 0), Error);
}

TEST(Picard, CubicCases) {
    EXPECT_EQ(cubic_case_square(-2, -2, 5), -14);
    EXPECT_EQ(cubic_case_square(-2, -2, 3), -10);
    EXPECT_EQ(splitting_degree(3, 2), 1);
    EXPECT_EQ(splitting_degree(2, 1), 2);
}

TEST(Picard, Mirrors) {
    auto md = mirror_data();
    EXPECT_EQ(md.nodal, (TwoElementaryInvariants{2, 10, 8, 1}));
    EXPECT_EQ(md.hyperelliptic, (TwoElementaryInvariants{2, 10, 6, 0}));
    EXPECT_EQ(md.t_nodal.signature(), (Signature{2, 10, 0}));
    EXPECT_EQ(md.t_hyperelliptic.signature(), (Signature{2, 10, 0}));
}

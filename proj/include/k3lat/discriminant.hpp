#pragma once

// Finite quadratic forms, with discriminant forms A_L = L*/L as the main
// source, and Nikulin-style gluing of two lattices along an isomorphism
// of subgroups of their discriminant groups.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "k3lat/lattice.hpp"

namespace k3lat {

// Canonical representatives: q in [0, 2), b in [0, 1).
Rational mod2(const Rational& x);
Rational mod1(const Rational& x);

class FqfElement;

class FiniteQuadraticForm {
public:
    // The trivial form.
    FiniteQuadraticForm();
    // Abstract form on Z/d_1 + ... + Z/d_k with generator values q_i and pairings b_ij.
    FiniteQuadraticForm(std::vector<std::int64_t> orders, std::vector<Rational> q,
                        std::vector<std::vector<Rational>> b);

    const std::vector<std::int64_t>& orders() const { return d_->orders; }
    std::size_t generator_count() const { return d_->orders.size(); }
    // Group order; throws cap_exceeded past 2^62.
    std::uint64_t size() const;
    Rational q_generator(std::size_t i) const;
    Rational b_generator(std::size_t i, std::size_t j) const;

    bool has_lattice() const { return d_->lattice.has_value(); }
    const Lattice& lattice() const;
    // Representative of generator i in L* (coordinates in the basis of L).
    const RatVector& generator_lift(std::size_t i) const;

    FqfElement element(std::vector<std::int64_t> exps) const;
    FqfElement zero() const;
    FqfElement generator(std::size_t i) const;
    FqfElement from_index(std::uint64_t index) const;
    // Class of a dual vector x + L; throws if x is not in L*.
    FqfElement reduce(const RatVector& dual) const;

    // All elements in lexicographic exponent order.
    std::vector<FqfElement> enumerate(std::uint64_t cap = std::uint64_t(1) << 20) const;

    // Same group, presented on new generators given as dual vectors.
    // The new generators must form a basis (each element written uniquely).
    FiniteQuadraticForm with_generators(const std::vector<RatVector>& lifts,
                                        std::uint64_t cap = std::uint64_t(1) << 20) const;

    bool is_two_elementary() const;
    bool same_as(const FiniteQuadraticForm& other) const { return d_ == other.d_; }

    nlohmann::json to_json() const;

private:
    friend class FqfElement;
    friend FiniteQuadraticForm discriminant_form(const Lattice& lattice);

    struct Data {
        std::vector<std::int64_t> orders;
        // Values scaled by den: q numerators mod 2*den, b numerators mod den.
        std::int64_t den = 1;
        std::vector<std::int64_t> qn;
        std::vector<std::vector<std::int64_t>> bn;
        // Lattice-backed forms.
        std::optional<Lattice> lattice;
        std::vector<RatVector> lifts;
        IntMatrix reducer;                     // rows of U from the SNF of the Gram, for nontrivial factors
        std::vector<std::int64_t> snf_orders;  // matching invariant factors
        std::vector<std::vector<std::int64_t>> table;  // snf index -> exponents, for custom generators
    };
    static void fill_values(Data& d, const std::vector<Rational>& q, const std::vector<std::vector<Rational>>& b);
    std::vector<std::int64_t> snf_coordinates(const RatVector& dual) const;
    std::shared_ptr<const Data> d_;
};

class FqfElement {
public:
    FqfElement(FiniteQuadraticForm parent, std::vector<std::int64_t> exps);

    const FiniteQuadraticForm& parent() const { return parent_; }
    const std::vector<std::int64_t>& exps() const { return exps_; }
    std::uint64_t index() const;

    Rational q() const;
    Rational b(const FqfElement& other) const;
    bool is_zero() const;
    std::int64_t order() const;
    // Dual vector representing the class (lattice-backed forms only).
    RatVector lift() const;

    FqfElement operator+(const FqfElement& o) const;
    FqfElement operator-(const FqfElement& o) const;
    FqfElement operator-() const;
    FqfElement times(std::int64_t k) const;
    friend bool operator==(const FqfElement& a, const FqfElement& b) {
        return a.parent_.same_as(b.parent_) && a.exps_ == b.exps_;
    }
    friend bool operator<(const FqfElement& a, const FqfElement& b) { return a.exps_ < b.exps_; }

    // Scaled values: q() * den mod 2 den, and b() * den mod den.
    std::int64_t q_numerator() const;
    std::int64_t b_numerator(const FqfElement& other) const;

    std::string to_string() const;

private:
    FiniteQuadraticForm parent_;
    std::vector<std::int64_t> exps_;
};

FiniteQuadraticForm discriminant_form(const Lattice& lattice);
FiniteQuadraticForm direct_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);
// Element of a + b built from components.
FqfElement pair_element(const FiniteQuadraticForm& sum, const FqfElement& x, const FqfElement& y);

struct TwoElementaryInvariants {
    std::size_t s_plus = 0;
    std::size_t s_minus = 0;
    std::size_t alpha = 0;
    int delta = 0;
    friend bool operator==(const TwoElementaryInvariants&, const TwoElementaryInvariants&) = default;
};
std::ostream& operator<<(std::ostream& os, const TwoElementaryInvariants& t);

TwoElementaryInvariants two_elementary_invariants(const Lattice& lattice);

// Subgroup generated by gens, sorted.
std::vector<FqfElement> subgroup(const FiniteQuadraticForm& form, const std::vector<FqfElement>& gens,
                                 std::uint64_t cap = std::uint64_t(1) << 20);

// Homomorphism given by the images of the source generators.
class FqfMorphism {
public:
    FqfMorphism(FiniteQuadraticForm source, FiniteQuadraticForm target, std::vector<FqfElement> images);
    static FqfMorphism identity(const FiniteQuadraticForm& form);
    // Over (Z/2)^k: column j of m holds the target exponents of the image of generator j.
    static FqfMorphism from_f2_matrix(const FiniteQuadraticForm& source, const FiniteQuadraticForm& target,
                                      const std::vector<std::vector<int>>& m);

    const FiniteQuadraticForm& source() const { return source_; }
    const FiniteQuadraticForm& target() const { return target_; }
    const std::vector<FqfElement>& images() const { return images_; }

    FqfElement operator()(const FqfElement& x) const;
    // (f * g)(x) = f(g(x))
    FqfMorphism operator*(const FqfMorphism& g) const;
    friend bool operator==(const FqfMorphism& a, const FqfMorphism& b) { return a.images_ == b.images_; }

    bool is_injective() const;
    bool is_bijective() const;
    // q_target(f(x)) = sign * q_source(x) for every x.
    bool scales_q_by(int sign) const;
    bool is_isometry() const { return scales_q_by(1); }

private:
    FiniteQuadraticForm source_, target_;
    std::vector<FqfElement> images_;
};
using FqfAutomorphism = FqfMorphism;

struct GluingData {
    Lattice S, K;
    std::vector<FqfElement> H;      // generators of a subgroup of A_S
    std::vector<FqfElement> gamma;  // their images in A_K
};

struct GluedLattice {
    Lattice lattice;
    RatMatrix basis;        // rows: basis of the overlattice in S+K coordinates
    IntMatrix s_embedding;  // rows: basis of S in overlattice coordinates
    IntMatrix k_embedding;  // rows: basis of K in overlattice coordinates
};

// Even overlattice of S + K generated by the graph of gamma. Throws
// gluing_condition if gamma is not an injective homomorphism or the graph
// is not isotropic.
GluedLattice glue(const GluingData& data);

struct EmbeddingReport {
    bool monomorphism = false;
    bool q_condition = false;
    bool ambient_match = false;
    std::string details;
    bool ok() const { return monomorphism && q_condition && ambient_match; }
};

// Checks that the graph data defines an embedding with the given ambient
// discriminant form (compared on group order and the multiset of
// (element order, q value) pairs).
EmbeddingReport verify_embedding_data(const GluingData& data, const FiniteQuadraticForm& ambient);

}  // namespace k3lat

#pragma once

// Lattice isometries, reflections, their action on discriminant forms, and
// finite orbit/closure computations on discriminant groups.

#include <cstdint>
#include <vector>

#include "k3lat/discriminant.hpp"
#include "k3lat/lattice.hpp"

namespace k3lat {

// Matrix acts on coordinate columns: f(x) = M x, and M^T G M = G.
class Isometry {
public:
    Isometry(Lattice lattice, IntMatrix matrix);
    static Isometry identity(const Lattice& lattice);

    const Lattice& lattice() const { return lattice_; }
    const IntMatrix& matrix() const { return matrix_; }

    IntVector apply(const IntVector& x) const;
    RatVector apply(const RatVector& x) const;
    LatticeVector operator()(const LatticeVector& x) const;

    // (f * g)(x) = f(g(x))
    Isometry operator*(const Isometry& g) const;
    Isometry inverse() const;
    Isometry power(std::int64_t n) const;
    bool is_identity() const;
    friend bool operator==(const Isometry& a, const Isometry& b) { return a.matrix_ == b.matrix_; }

private:
    Lattice lattice_;
    IntMatrix matrix_;
};

// Block sum acting on direct_sum(f.lattice(), g.lattice()).
Isometry direct_sum(const Isometry& f, const Isometry& g);

// x -> x - 2 (x,v)/(v,v) v; throws not_integral when it does not preserve L.
Isometry reflection(const Lattice& lattice, const IntVector& v);

// f^n = id and f^m != id for 0 < m < n.
bool verify_order(const Isometry& f, std::size_t n);

// Eigenlattice {x : f(x) = eigenvalue * x} as rows of coordinates.
IntMatrix eigenlattice(const Isometry& f, int eigenvalue);

// Action on A_L for a form attached to the same lattice. Throws model_failure
// if q is not preserved.
FqfMorphism induced_on_discriminant(const Isometry& f, const FiniteQuadraticForm& form);

// Orbits of the group generated by gens on the given elements. Each orbit is
// sorted; orbits are ordered by their least element. Throws if the element
// set is not invariant.
std::vector<std::vector<FqfElement>> orbits(const std::vector<FqfMorphism>& gens,
                                            const std::vector<FqfElement>& elements);

// Group generated by automorphisms of one form, elements stored as packed
// generator images (one index per generator, mixed radix of the form's size).
class GroupClosure {
public:
    GroupClosure(FiniteQuadraticForm form, std::vector<std::uint64_t> keys, std::size_t width);
    std::size_t size() const { return keys_.size() / width_; }
    FqfMorphism element(std::size_t i) const;
    const FiniteQuadraticForm& form() const { return form_; }

private:
    FiniteQuadraticForm form_;
    std::vector<std::uint64_t> keys_;
    std::size_t width_;
};

// Deterministic, sorted closure. Throws cap_exceeded past cap elements.
GroupClosure group_closure(const std::vector<FqfMorphism>& gens, std::size_t cap = std::size_t(1) << 22);

}  // namespace k3lat

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "k3lat/linalg.hpp"

namespace k3lat {

// An integral symmetric bilinear form on Z^n. Immutable; copies share storage.
class Lattice {
public:
    Lattice();
    explicit Lattice(IntMatrix gram, std::vector<std::string> labels = {}, std::string name = {});

    const IntMatrix& gram() const { return impl_->gram; }
    const std::vector<std::string>& labels() const { return impl_->labels; }
    const std::string& name() const { return impl_->name; }
    std::size_t rank() const { return impl_->gram.rows(); }

    Lattice renamed(std::string name) const;
    Lattice relabeled(std::vector<std::string> labels) const;

    bool is_even() const;
    bool is_nondegenerate() const { return determinant() != 0; }
    bool is_unimodular() const { return abs(determinant()) == 1; }
    // Signed det of the Gram matrix.
    Integer determinant() const;
    Signature signature() const;

    Integer inner(const IntVector& x, const IntVector& y) const;
    Rational inner(const RatVector& x, const RatVector& y) const;
    // Row-wise products: rows of a against rows of b.
    IntMatrix pairing(const IntMatrix& a, const IntMatrix& b) const;
    // Gram matrix of the sublattice spanned by the rows of basis.
    IntMatrix restricted_gram(const IntMatrix& basis) const;

    std::size_t label_index(const std::string& label) const;

    // Same object, or same Gram matrix.
    bool same_as(const Lattice& other) const;

private:
    struct Impl {
        IntMatrix gram;
        std::vector<std::string> labels;
        std::string name;
        mutable std::optional<Integer> det;
    };
    std::shared_ptr<const Impl> impl_;
};

class LatticeVector {
public:
    LatticeVector(Lattice lattice, IntVector coords);

    const Lattice& lattice() const { return lattice_; }
    const IntVector& coords() const { return coords_; }
    const Integer& operator[](std::size_t i) const { return coords_[i]; }
    bool is_zero() const;

    LatticeVector operator+(const LatticeVector& o) const;
    LatticeVector operator-(const LatticeVector& o) const;
    LatticeVector operator-() const;
    friend LatticeVector operator*(const Integer& a, const LatticeVector& v);
    friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
        return a.lattice_.same_as(b.lattice_) && a.coords_ == b.coords_;
    }

private:
    Lattice lattice_;
    IntVector coords_;
};

LatticeVector basis_vector(const Lattice& lattice, std::size_t i);
LatticeVector basis_vector(const Lattice& lattice, const std::string& label);

Integer inner(const LatticeVector& v, const LatticeVector& w);
Integer norm(const LatticeVector& v);
// Positive generator of the ideal (v, L).
Integer divisibility(const LatticeVector& v);
bool is_primitive_vector(const LatticeVector& v);

// Constructors. ADE lattices are negative definite (negated Cartan matrix).
Lattice ade(char series, std::size_t n);
Lattice hyperbolic();
Lattice rank_one(const Integer& a);
Lattice twist(const Lattice& lattice, const Integer& a);
Lattice direct_sum(const Lattice& a, const Lattice& b);
Lattice direct_sum(const std::vector<Lattice>& parts);
Lattice power(const Lattice& lattice, std::size_t copies);
// Lattice on the rows of basis, with the induced form.
Lattice sublattice(const Lattice& ambient, const IntMatrix& basis, std::string name = {});

// Saturated basis of the vectors of L orthogonal to every row of s.
IntMatrix orthogonal_complement(const Lattice& lattice, const IntMatrix& s);

// Integer points z with (z - c) Q (z - c)^T <= bound for a positive definite Q,
// in lexicographic order.
std::vector<IntVector> short_vectors(const RatMatrix& q, const RatVector& center, const Rational& bound);

// Builtin lattices by name: A1..A20, D4..D20, E6, E7, E8, U, U(2), <2k>.
Lattice builtin_lattice(const std::string& name);

nlohmann::json lattice_to_json(const Lattice& lattice);
Lattice lattice_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace k3lat

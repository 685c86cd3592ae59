#pragma once

// The fixed lattices of the genus-three construction: the degree-two Del
// Pezzo model, the eigenlattices L+ and L- of the cyclic cover with their
// order-four isometry, the gluing map between their discriminant groups,
// and the resulting K3 lattice.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "k3lat/discriminant.hpp"
#include "k3lat/isometry.hpp"

namespace k3lat {

struct DelPezzoModel {
    Lattice lattice;               // diag(1, -1 x 7), basis e0..e7
    IntVector k;                   // canonical class -3 e0 + sum e_i
    std::vector<IntVector> roots;  // simple roots a0..a6 of k-perp
};
DelPezzoModel del_pezzo_model();

// (-1)-classes (x^2 = -1, (x,k) = -1) and roots (x^2 = -2, (x,k) = 0), found
// as the vectors with -x^2 + (x,k)^2 <= 2; lexicographic order.
struct DelPezzoClasses {
    std::vector<IntVector> exceptional;
    std::vector<IntVector> roots;
};
DelPezzoClasses del_pezzo_classes(const DelPezzoModel& dp);

// Column-convention matrices of the order-four isometries on <2>^2 and D4.
IntMatrix j1_matrix();
IntMatrix j2_matrix();
// The D4 matrix as printed (read row i = image of f_i), kept for comparison.
IntMatrix j2_printed_rows();

// Packed F2-linear map on (Z/2)^8: entry j is the mixed-radix index of the
// image of generator j (exponent i sits at index bit 7 - i).
using F2Map = std::array<std::uint8_t, 8>;
std::uint8_t apply_f2(const F2Map& m, std::uint8_t x);

struct GammaSearch {
    F2Map best{};
    int distance = -1;              // Hamming distance to the printed matrix
    std::uint64_t anti_isometries = 0;  // compatible anti-isometries found
};

struct KondoModel {
    DelPezzoModel del_pezzo;
    Lattice lplus;   // basis e~0..e~7
    Lattice lminus;  // basis t1, t2, f^1_1..f^3_4
    Isometry sigma_plus;
    Isometry sigma_minus;
    IntVector k_tilde;
    std::vector<IntVector> roots_tilde;  // pullbacks of a0..a6, norm -4
    FiniteQuadraticForm a_plus;   // generators e~_i / 2
    FiniteQuadraticForm a_minus;  // generators t1/2, t2/2, then (f2+f4)/2, (f1+f2)/2 per D4 copy
    std::vector<std::vector<int>> printed_gamma;  // 8x8 over F2, columns are images
    GammaSearch gamma_search;
    FqfMorphism gamma;  // A+ -> A-, the anti-isometry used for gluing
    FqfMorphism sigma_bar_plus;
    FqfMorphism sigma_bar_minus;
    GluedLattice k3;
    Isometry sigma_k3;  // extension of sigma_plus + sigma_minus
};

// Builds and checks the fixture; throws model_failure if a post-check fails.
KondoModel build_model();
// Shared immutable instance.
const KondoModel& kondo_model();

FqfElement k_half(const KondoModel& m);

// Coordinates (in e~ basis) of the listed representatives, doubled, with the
// class (1..4) they are claimed to lie in.
struct ListedClass {
    IntVector doubled;
    int claimed;
};
std::vector<ListedClass> listed_representatives(const KondoModel& m);

struct ClassPartition {
    std::array<std::vector<FqfElement>, 4> classes;  // C1..C4
    std::array<std::size_t, 4> sizes() const;
};
ClassPartition classify_discriminant(const KondoModel& m);
// 1..4 from the q value.
int class_of(const FqfElement& x);

// Elements on which the induced sigma disagrees with "k/2 - x on C1, C2 and
// x on C3, C4".
std::vector<FqfElement> sigma_formula_failures(const KondoModel& m);

struct NPlusReport {
    std::vector<FqfElement> integral;  // {x : q(x) integral}
    std::vector<FqfElement> spanned;   // span of k/2 and the a_i/2, i = 1..6
};
NPlusReport n_plus_subgroup(const KondoModel& m);

std::vector<FqfMorphism> weyl_generators(const KondoModel& m);

struct OrbitReport {
    std::array<std::vector<std::size_t>, 4> sizes;  // sorted orbit sizes per class
    std::array<std::vector<FqfElement>, 4> fixed;   // singleton orbits per class
};
OrbitReport weyl_orbit_report(const KondoModel& m);

struct GammaReport {
    bool isomorphism = false;
    bool preserves_q = false;  // q- o gamma = q+
    bool negates_q = false;    // q- o gamma = -q+
    std::size_t plus_failures = 0, minus_failures = 0;
    std::string evidence;
    int sign() const { return preserves_q == negates_q ? 0 : preserves_q ? 1 : -1; }
};
GammaReport verify_gamma(const KondoModel& m, const FqfMorphism& gamma);
// The printed matrix as a morphism A+ -> A-.
FqfMorphism printed_gamma_morphism(const KondoModel& m);

struct CompatibilityReport {
    std::vector<FqfElement> failures;  // x with gamma(sigma x) != sigma(gamma x)
    bool extension_integral = false;
    bool extension_order_four = false;
};
CompatibilityReport verify_sigma_gamma_compatibility(const KondoModel& m, const FqfMorphism& gamma);

// Exhaustive search for anti-isometries A+ -> A- compatible with sigma and
// sending k/2 to (t1+t2)/2; keeps the one closest to the printed matrix.
GammaSearch search_gamma(const FiniteQuadraticForm& a_plus, const FiniteQuadraticForm& a_minus,
                         const FqfMorphism& sigma_plus, const FqfMorphism& sigma_minus,
                         const std::vector<std::vector<int>>& printed);

}  // namespace k3lat

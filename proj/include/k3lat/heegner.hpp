#pragma once

// Invariants of primitive vectors r in L-: type, index, the glue group
// M_r = P / (L+ + Lambda_r), the splitting-degree formulas and their
// witness classes in the Del Pezzo model.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3lat/kondo.hpp"

namespace k3lat {

// r and sigma(r) as rows, in the t1, t2, f^c_j basis of L-.
struct LambdaSublattice {
    IntMatrix basis;
    IntMatrix gram;
    Integer minors_gcd;  // gcd of the 2x2 minors of basis
    bool primitive = false;
};

// n = -r^2/2. Throws imprimitive for non-primitive r and invalid_argument for r^2 >= 0.
std::int64_t type_of(const KondoModel& m, const IntVector& r);
LambdaSublattice lambda_of(const KondoModel& m, const IntVector& r);
// 2 iff (r, L-) = 2Z.
int index_of(const KondoModel& m, const IntVector& r);

struct MGroup {
    std::vector<Integer> factors;          // invariant factors > 1 of P / (L+ + Lambda_r)
    std::vector<FqfElement> plus_parts;    // A+ components of the quotient generators
    std::vector<FqfElement> minus_parts;   // A- components of the same generators
    std::vector<FqfElement> plus_subgroup; // projection of M_r into A+, sorted
};
// Full pipeline through the glued lattice; requires Lambda_r primitive.
MGroup m_group(const KondoModel& m, const IntVector& r);

// The vectors r_i(k) of the existence argument, i in 1..4, k >= 1.
IntVector existence_family(int i, int k);

struct C3Check {
    bool quotient = false;    // k/2 not in the A+ projection of M_r
    bool discriminant = false;  // (r + sigma r)/2 != gamma(k/2) in A-
    bool parity = false;      // the parity conditions do not all hold
};
// Requires even type.
C3Check check_c3(const KondoModel& m, const IntVector& r);
// Parity test for (r + sigma r)/2 = (t1 + t2)/2 in A-: h1 + h2 odd, and per
// D4 block a3 even and a1 + a2 + a4 even.
bool c3_parity_conditions(const IntVector& r);
// The same test with "h1 and h2 odd" for the first condition.
bool c3_literal_conditions(const IntVector& r);

// 2(n-1) for m = 1, n-2 for m = 2; n > 1.
std::int64_t splitting_degree(std::int64_t n, int m);
// Inverse on degrees d >= 1.
std::pair<std::int64_t, int> converse_type(std::int64_t d);

struct WitnessCheck {
    IntVector x;  // Del Pezzo coordinates
    Integer square, degree, genus_numerator;  // x^2, (x,-k), x^2 + (x,k)
    bool square_ok = false, degree_ok = false, genus_ok = false, class_ok = false;
    bool ok() const { return square_ok && degree_ok && genus_ok && class_ok; }
    std::string describe() const;
};
// Required class of x/2 in A+ (as a set of e~ indices with odd coefficient).
std::vector<int> witness_class_bits(std::int64_t n, int m);
WitnessCheck check_witness(std::int64_t n, int m, const IntVector& x);
// The class given in the degree argument, checked.
WitnessCheck witness_class(std::int64_t n, int m);
// Least x = a e0 - b e1 - c e2 (lexicographic on coordinates) with
// 0 <= a <= 2n, |b|, |c| <= 2n passing all checks; throws search_exhausted.
IntVector search_witness(std::int64_t n, int m);
// witness_class(n, m).x when it passes, search_witness(n, m) otherwise.
IntVector find_witness(std::int64_t n, int m);

struct HeegnerInvariants {
    IntVector r;
    std::int64_t type = 0;
    int index = 0;
    std::vector<Integer> m_group;
    std::optional<std::int64_t> min_degree;  // absent for type 1
    bool lambda_primitive = false;
};
HeegnerInvariants heegner_invariants(const KondoModel& m, const IntVector& r);

// Fast integer data for vectors of L- with small entries.
struct SmallVector {
    std::array<std::int64_t, 14> c{};
    std::int64_t norm() const;
    std::int64_t divisibility() const;
    std::int64_t content() const;
    std::int64_t lambda_minors_gcd() const;
    SmallVector sigma() const;
};

// Visits |t_i| <= bound, |f| <= 1 in lexicographic order with the norm of
// each vector; stops as soon as visit returns true.
bool find_in_box(std::int64_t bound, const std::function<bool(const SmallVector&, std::int64_t)>& visit);

struct CorpusEntry {
    std::string source;  // "r1(3)" or "box"
    IntVector r;
    std::int64_t type = 0;
    int index = 0;
};

struct BoxScan {
    std::int64_t bound = 0;
    std::uint64_t scanned = 0;          // vectors in the box
    std::uint64_t admissible = 0;       // primitive, 0 < -r^2 <= 24, Lambda primitive
    std::uint64_t even_type = 0;
    std::uint64_t index_two_even_type = 0;  // must stay 0
    std::uint64_t parity_hits = 0;          // even type vectors meeting the parity conditions
    std::uint64_t literal_hits = 0;           // even type vectors meeting the literal conditions
    std::uint64_t literal_disagreements = 0;  // literal vs corrected parity conditions, all admissible
    std::map<std::pair<std::int64_t, int>, IntVector> representatives;  // first per (type, index)
    std::vector<IntVector> sample;  // every stride-th admissible vector
};
// Scans |t_i| <= bound, |f| <= 1, in lexicographic order.
BoxScan scan_box(std::int64_t bound, std::int64_t max_minus_norm = 24, std::uint64_t stride = 10007);

// Families for k <= kmax, then box representatives in (type, index) order.
std::vector<CorpusEntry> heegner_corpus(const BoxScan& scan, int kmax = 6);

}  // namespace k3lat

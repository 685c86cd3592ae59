#pragma once

// Rank-ten Picard lattices <L+, C, sigma C> with C = (x~ + y)/2, x a Del
// Pezzo class and y in L-; the nodal-cubic arithmetic; the transcendental
// lattices of the two type-one divisors.

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "k3lat/discriminant.hpp"
#include "k3lat/kondo.hpp"

namespace k3lat {

struct GramDiff {
    std::size_t row, col;
    Integer derived, printed;
};

struct PicardExample {
    std::string name;
    IntVector x;            // Del Pezzo coordinates
    Integer y_square;       // y^2
    Integer y_sigma;        // (y, sigma y)
    IntMatrix derived;      // basis e~0..e~7, C, sigma C
    IntMatrix printed;
    std::vector<GramDiff> diffs;
    bool even = false;
    bool symmetric = false;
    Signature signature;
    Integer determinant;

    // Realisation inside the glued lattice with an explicit r from a small box.
    std::optional<IntVector> r;
    std::int64_t type = 0;
    int index = 0;
    bool realized_in_k3 = false;      // C lies in the glued lattice
    bool realized_gram_matches = false;
    bool generates_saturation = false;  // <L+, C, sigma C> = saturation of L+ + Lambda_r
    bool lplus_primitive = false;       // L+ primitive of corank 2 in it
};

// Gram of <L+, C, sigma C> from the pairings of x and the two numbers y^2 and
// (y, sigma y). Throws not_integral if a pairing is fractional.
IntMatrix derive_picard_gram(const KondoModel& m, const IntVector& x, const Integer& y_square,
                             const Integer& y_sigma);

// x = e7, y = r with r^2 = -6.
PicardExample picard_flex(const KondoModel& m);
// x = 2e0 - e1 - e2 - e3 - e4, y = r + sigma r with r^2 = -4.
PicardExample picard_con(const KondoModel& m);

IntMatrix printed_flex_gram();
IntMatrix printed_con_gram();

// (D0 - D2)^2 = d0^2 + d2^2 - 2 meets.
Integer cubic_case_square(const Integer& d0_sq, const Integer& d2_sq, const Integer& meets);

struct MirrorData {
    Lattice t_nodal;
    Lattice t_hyperelliptic;
    TwoElementaryInvariants nodal;
    TwoElementaryInvariants hyperelliptic;
};
MirrorData mirror_data();

}  // namespace k3lat

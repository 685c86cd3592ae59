#pragma once

// Single-object queries behind the command line: lattice invariants, the
// invariants of one vector of L-, and the model fixture as JSON.

#include <string>

#include "json.hpp"
#include "k3lat/kondo.hpp"

namespace k3lat {

// A builtin name (see builtin_lattice) or a path to a lattice JSON file.
// Throws parse_error or invalid_argument for unusable input.
Lattice load_lattice(const std::string& name_or_path);
nlohmann::ordered_json lattice_summary(const Lattice& l);
std::string lattice_summary_text(const Lattice& l);

// Parses 14 comma-separated integers; throws parse_error.
IntVector parse_lminus_vector(const std::string& csv);

struct HeegnerQuery {
    nlohmann::ordered_json report;  // {type, index, m_group, min_degree, checks, r}
    bool ok = false;  // no check failed
};
// Throws imprimitive or invalid_argument for r that names no Heegner divisor.
HeegnerQuery query_heegner(const KondoModel& m, const IntVector& r);

// Lattices in the lattice JSON format, isometry matrices and both glue maps.
nlohmann::json dump_model(const KondoModel& m);

}  // namespace k3lat

#pragma once

#include <json.hpp>

#include "freeset/residue_set.hpp"
#include "freeset/solver.hpp"

namespace freeset {

using Json = nlohmann::json;

/// {"n": int, "members": [sorted ints]}.
Json residue_set_to_json(const ResidueSet& a);
/// Throws std::invalid_argument on a malformed object.
ResidueSet residue_set_from_json(const Json& j);

/// One cache line: {"n","mode","max_size","witness","density","optimal",
/// "nodes","elapsed_ms"}.
Json solve_result_to_json(const SolveResult& r);
SolveResult solve_result_from_json(const Json& j);

/// v rounded to 15 significant digits, the precision floats are reported at.
double round_significant(double v);

}  // namespace freeset

#include "freeset/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace freeset {

Json residue_set_to_json(const ResidueSet& a) {
  return Json{{"n", a.modulus()}, {"members", a.members()}};
}

ResidueSet residue_set_from_json(const Json& j) {
  try {
    ResidueSet out(j.at("n").get<std::uint64_t>());
    for (const auto& m : j.at("members")) out.insert(m.get<std::uint64_t>());
    return out;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed residue set: ") + e.what());
  }
}

Json solve_result_to_json(const SolveResult& r) {
  return Json{{"n", r.n},
              {"mode", r.constraints.mode()},
              {"max_size", r.max_size},
              {"witness", r.witness.members()},
              {"density", to_string(r.density())},
              {"optimal", r.optimal},
              {"nodes", r.nodes},
              {"elapsed_ms", r.elapsed.count()}};
}

SolveResult solve_result_from_json(const Json& j) {
  try {
    SolveResult r;
    r.n = j.at("n").get<std::uint64_t>();
    r.constraints = ConstraintSpec::from_mode(j.at("mode").get<std::string>());
    r.max_size = j.at("max_size").get<std::size_t>();
    r.witness = ResidueSet(r.n);
    for (const auto& m : j.at("witness")) r.witness.insert(m.get<std::uint64_t>());
    r.optimal = j.at("optimal").get<bool>();
    r.nodes = j.at("nodes").get<std::uint64_t>();
    r.elapsed = std::chrono::milliseconds(j.at("elapsed_ms").get<std::int64_t>());
    if (parse_rational(j.at("density").get<std::string>()) != r.density()) {
      throw std::invalid_argument("density field disagrees with max_size / n");
    }
    return r;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed solve record: ") + e.what());
  }
}

double round_significant(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

}  // namespace freeset

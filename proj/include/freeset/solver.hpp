#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "freeset/residue_set.hpp"

namespace freeset {

/// Which freeness constraints are active. At least one must be set.
struct ConstraintSpec {
  bool sum_free = true;
  bool product_free = true;

  static ConstraintSpec sum_only() { return {true, false}; }
  static ConstraintSpec product_only() { return {false, true}; }
  static ConstraintSpec both() { return {true, true}; }

  /// "s", "p" or "sp".
  std::string mode() const;
  /// Throws std::invalid_argument for anything but "s", "p", "sp".
  static ConstraintSpec from_mode(std::string_view mode);

  bool admits(const ResidueSet& a) const;

  friend bool operator==(const ConstraintSpec&, const ConstraintSpec&) = default;
};

struct SolveResult {
  std::uint64_t n = 0;
  ConstraintSpec constraints;
  std::size_t max_size = 0;
  ResidueSet witness{1};
  /// True when the search finished; otherwise max_size is only a lower bound.
  bool optimal = false;
  std::uint64_t nodes = 0;
  std::chrono::milliseconds elapsed{0};

  Rational density() const { return Rational(BigInt(max_size), BigInt(n)); }

  friend bool operator==(const SolveResult&, const SolveResult&) = default;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;
inline constexpr std::uint64_t kBruteForceLimit = 20;
inline constexpr std::uint64_t kEnumerationLimit = 24;

/// Exhaustive reference: walks every feasible subset of Z/nZ on plain
/// bitmasks, sharing no code with the branch and bound. n <= 20.
SolveResult brute_force_max(std::uint64_t n, ConstraintSpec constraints);

/// Branch and bound over residues in descending conflict degree. On
/// inclusion the candidate set loses every residue that would close a
/// forbidden triple with the chosen ones; a node is pruned when its size plus
/// the remaining candidates cannot beat the incumbent. `budget` counts nodes.
SolveResult exact_max(std::uint64_t n, ConstraintSpec constraints,
                      std::uint64_t budget = kDefaultNodeBudget);

/// Deterministic feasible set: residues in ascending conflict degree (ties by
/// value), each kept when it does not break the constraints.
ResidueSet greedy_lower(std::uint64_t n, ConstraintSpec constraints);

/// Number of forbidden triples x op y = z passing through each residue.
std::vector<std::uint64_t> conflict_degrees(std::uint64_t n, ConstraintSpec constraints);

/// Calls `visit` once for every feasible subset of Z/nZ with at least
/// `min_size` members. n <= 24.
void enumerate_feasible(std::uint64_t n, ConstraintSpec constraints, std::size_t min_size,
                        const std::function<void(const ResidueSet&)>& visit);

}  // namespace freeset

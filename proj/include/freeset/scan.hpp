#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "freeset/cache.hpp"
#include "freeset/solver.hpp"

namespace freeset {

/// Moduli up to this size go to brute_force_max, larger ones to exact_max.
inline constexpr std::uint64_t kScanOracleLimit = 18;

struct ScanConfig {
  std::uint64_t first = 1;
  std::uint64_t last = 0;
  ConstraintSpec constraints = ConstraintSpec::both();
  std::uint64_t budget = kDefaultNodeBudget;
  /// kappa for the envelope value reported next to each result.
  double kappa = 1.0;
};

struct ScanRecord {
  SolveResult result;
  bool from_cache = false;
  /// max_size / n > 2/5.
  bool above_two_fifths = false;
  /// Envelope at n, when n is inside its domain (n >= 16).
  std::optional<double> envelope;
  /// For both-mode optima above 2/5: (A + A) ∩ (A * A) = ∅.
  std::optional<bool> sums_products_disjoint;
};

/// Solves every n in [first, last], skipping keys that already have an
/// optimal record in the cache and appending new results to it. An empty
/// range (first > last) yields nothing.
std::vector<ScanRecord> scan(const ScanConfig& config, ResultCache& cache);

}  // namespace freeset

#include "freeset/scan.hpp"

#include "freeset/analysis.hpp"

namespace freeset {

std::vector<ScanRecord> scan(const ScanConfig& config, ResultCache& cache) {
  std::vector<ScanRecord> out;
  const std::string mode = config.constraints.mode();
  const Rational two_fifths(2, 5);
  if (config.first > config.last) return out;
  for (std::uint64_t n = config.first;; ++n) {
    ScanRecord rec;
    auto cached = cache.lookup(n, mode);
    if (cached && cached->optimal) {
      rec.result = *cached;
      rec.from_cache = true;
    } else {
      rec.result = n <= kScanOracleLimit ? brute_force_max(n, config.constraints)
                                         : exact_max(n, config.constraints, config.budget);
      cache.append(rec.result);
    }
    rec.above_two_fifths = rec.result.density() > two_fifths;
    if (n >= 16) rec.envelope = envelope(static_cast<double>(n), config.kappa);
    if (rec.above_two_fifths && config.constraints == ConstraintSpec::both() && rec.result.optimal) {
      const auto& w = rec.result.witness;
      rec.sums_products_disjoint = !sumset(w, w).intersects(productset(w, w));
    }
    out.push_back(std::move(rec));
    if (n == config.last) break;
  }
  return out;
}

}  // namespace freeset

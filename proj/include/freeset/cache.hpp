#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "freeset/solver.hpp"

namespace freeset {

class CacheIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// FREESET_CACHE when set, else ./freeset_cache.jsonl.
std::filesystem::path default_cache_path();

/// Append-only JSONL store of solve results keyed by (n, mode). Among the
/// records for a key, the latest optimal one wins; without an optimal record
/// the latest record is returned.
class ResultCache {
 public:
  /// Loads an existing file; a missing file is an empty cache. Throws
  /// CacheIoError when the file exists but cannot be read or parsed.
  explicit ResultCache(std::filesystem::path path);

  const std::filesystem::path& path() const noexcept { return path_; }

  std::optional<SolveResult> lookup(std::uint64_t n, const std::string& mode) const;

  /// Writes and flushes one line unless an equivalent record (same size,
  /// optimality, node count and witness) is already stored, or an optimal
  /// record exists for the key. Returns whether a line was written. Throws
  /// CacheIoError when the file cannot be opened for appending.
  bool append(const SolveResult& r);

  std::size_t record_count() const noexcept;

 private:
  std::filesystem::path path_;
  std::map<std::pair<std::uint64_t, std::string>, std::vector<SolveResult>> records_;
};

}  // namespace freeset

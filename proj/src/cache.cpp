#include "freeset/cache.hpp"

#include <cstdlib>
#include <fstream>

#include "freeset/serialize.hpp"

namespace freeset {

std::filesystem::path default_cache_path() {
  if (const char* env = std::getenv("FREESET_CACHE"); env && *env) return env;
  return "freeset_cache.jsonl";
}

ResultCache::ResultCache(std::filesystem::path path) : path_(std::move(path)) {
  std::error_code ec;
  if (!std::filesystem::exists(path_, ec)) return;
  std::ifstream in(path_);
  if (!in) throw CacheIoError("cannot read cache " + path_.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto r = solve_result_from_json(Json::parse(line));
      records_[{r.n, r.constraints.mode()}].push_back(std::move(r));
    } catch (const std::exception& e) {
      throw CacheIoError(path_.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::optional<SolveResult> ResultCache::lookup(std::uint64_t n, const std::string& mode) const {
  auto it = records_.find({n, mode});
  if (it == records_.end() || it->second.empty()) return std::nullopt;
  for (auto r = it->second.rbegin(); r != it->second.rend(); ++r) {
    if (r->optimal) return *r;
  }
  return it->second.back();
}

bool ResultCache::append(const SolveResult& r) {
  auto& bucket = records_[{r.n, r.constraints.mode()}];
  for (const auto& old : bucket) {
    if (old.optimal) return false;
    if (old.max_size == r.max_size && old.optimal == r.optimal && old.nodes == r.nodes && old.witness == r.witness) {
      return false;
    }
  }
  std::ofstream out(path_, std::ios::app);
  if (!out) throw CacheIoError("cannot append to cache " + path_.string());
  out << solve_result_to_json(r).dump() << '\n';
  out.flush();
  if (!out) throw CacheIoError("write failed on cache " + path_.string());
  bucket.push_back(r);
  return true;
}

std::size_t ResultCache::record_count() const noexcept {
  std::size_t total = 0;
  for (const auto& [key, bucket] : records_) total += bucket.size();
  return total;
}

}  // namespace freeset

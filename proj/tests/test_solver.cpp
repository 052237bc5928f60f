#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <random>

#include "freeset/cache.hpp"
#include "freeset/scan.hpp"
#include "freeset/solver.hpp"

using namespace freeset;

namespace {

const ConstraintSpec kModes[] = {ConstraintSpec::sum_only(), ConstraintSpec::product_only(),
                                 ConstraintSpec::both()};

// Closed form for the largest sum-free density in Z/nZ, from a trial-division
// factorization.
Rational diananda_yap(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) primes.push_back(p);
    while (m % p == 0) m /= p;
  }
  if (m > 1) primes.push_back(m);
  for (std::uint64_t p : primes) {
    if (p % 3 == 2) return Rational(1, 3) + Rational(1, 3 * p);
  }
  bool all_one = true;
  for (std::uint64_t p : primes) all_one = all_one && p % 3 == 1;
  if (all_one) return Rational(1, 3) - Rational(1, 3 * n);
  return Rational(1, 3);
}

std::uint64_t naive_degree(std::uint64_t n, ConstraintSpec c, std::uint64_t r) {
  std::uint64_t d = 0;
  for (std::uint64_t x = 0; x < n; ++x) {
    for (std::uint64_t y = x; y < n; ++y) {
      if (c.sum_free) d += (r == x || r == y || r == (x + y) % n);
      if (c.product_free) d += (r == x || r == y || r == (x * y) % n);
    }
  }
  return d;
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name)
      : path(std::filesystem::temp_directory_path() / ("freeset_test_" + name)) {
    std::filesystem::remove(path);
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("ConstraintSpec modes") {
  CHECK(ConstraintSpec::from_mode("s") == ConstraintSpec::sum_only());
  CHECK(ConstraintSpec::from_mode("p") == ConstraintSpec::product_only());
  CHECK(ConstraintSpec::from_mode("sp") == ConstraintSpec::both());
  CHECK_THROWS_AS(ConstraintSpec::from_mode("ps"), std::invalid_argument);
  CHECK_THROWS_AS(ConstraintSpec::from_mode(""), std::invalid_argument);
  for (auto c : kModes) CHECK(ConstraintSpec::from_mode(c.mode()) == c);
  CHECK_THROWS(exact_max(5, ConstraintSpec{false, false}));
}

TEST_CASE("brute force examples") {
  const auto r5 = brute_force_max(5, ConstraintSpec::both());
  CHECK(r5.max_size == 2);
  CHECK(r5.optimal);
  CHECK(r5.density() == Rational(2, 5));
  CHECK(ConstraintSpec::both().admits(r5.witness));
  for (auto c : kModes) CHECK(brute_force_max(1, c).max_size == 0);
  CHECK(brute_force_max(10, ConstraintSpec::both()).max_size == 4);
  CHECK(ConstraintSpec::both().admits(ResidueSet::from_members(10, {2, 3, 7, 8})));
  CHECK_THROWS(brute_force_max(21, ConstraintSpec::both()));
}

TEST_CASE("exact_max examples") {
  CHECK(exact_max(10, ConstraintSpec::sum_only()).max_size == 5);
  CHECK(exact_max(7, ConstraintSpec::sum_only()).density() == Rational(2, 7));
  CHECK(exact_max(11, ConstraintSpec::sum_only()).density() == Rational(4, 11));
  CHECK(exact_max(9, ConstraintSpec::sum_only()).density() == Rational(1, 3));
  const auto r = exact_max(5, ConstraintSpec::both());
  CHECK(r.max_size == 2);
  CHECK(r.optimal);
  CHECK(r.witness == ResidueSet::from_members(5, {2, 3}));
  for (auto c : kModes) CHECK(exact_max(1, c).max_size == 0);
}

TEST_CASE("exact_max agrees with the exhaustive oracle for n <= 18") {
  for (std::uint64_t n = 1; n <= 18; ++n) {
    for (auto c : kModes) {
      CAPTURE(n);
      CAPTURE(c.mode());
      const auto fast = exact_max(n, c);
      const auto slow = brute_force_max(n, c);
      CHECK(fast.optimal);
      CHECK(fast.max_size == slow.max_size);
      CHECK(fast.witness.cardinality() == fast.max_size);
      CHECK(c.admits(fast.witness));
      CHECK(c.admits(slow.witness));
      CHECK(slow.witness.cardinality() == slow.max_size);
    }
  }
}

TEST_CASE("sum-free maxima follow the closed forms for 3 <= n <= 40") {
  for (std::uint64_t n = 3; n <= 40; ++n) {
    CAPTURE(n);
    const auto r = exact_max(n, ConstraintSpec::sum_only());
    REQUIRE(r.optimal);
    CHECK(r.density() == diananda_yap(n));
    if (n % 2 == 0) CHECK(r.density() == Rational(1, 2));
  }
}

TEST_CASE("budget exhaustion returns a feasible lower bound") {
  const auto full = exact_max(37, ConstraintSpec::sum_only());
  const auto cut = exact_max(37, ConstraintSpec::sum_only(), 3);
  CHECK_FALSE(cut.optimal);
  CHECK(cut.max_size <= full.max_size);
  CHECK(cut.witness.cardinality() == cut.max_size);
  CHECK(ConstraintSpec::sum_only().admits(cut.witness));
  CHECK(full.optimal);
  CHECK(full.nodes > 3);
}

TEST_CASE("greedy_lower is feasible and below the optimum") {
  CHECK(greedy_lower(1, ConstraintSpec::both()).empty());
  CHECK(greedy_lower(5, ConstraintSpec::both()).cardinality() >= 1);
  for (std::uint64_t n = 1; n <= 36; ++n) {
    for (auto c : kModes) {
      const auto g = greedy_lower(n, c);
      CHECK(c.admits(g));
      CHECK(g.cardinality() <= exact_max(n, c).max_size);
      CHECK(greedy_lower(n, c) == g);
    }
  }
}

TEST_CASE("conflict_degrees against a direct count") {
  for (std::uint64_t n : {1u, 2u, 5u, 9u, 12u}) {
    for (auto c : kModes) {
      const auto deg = conflict_degrees(n, c);
      REQUIRE(deg.size() == n);
      for (std::uint64_t r = 0; r < n; ++r) CHECK(deg[r] == naive_degree(n, c, r));
    }
  }
}

TEST_CASE("optimum grows under lifting along divisors") {
  for (std::uint64_t n = 2; n <= 30; ++n) {
    for (std::uint64_t m = 1; m < n; ++m) {
      if (n % m != 0) continue;
      for (auto c : kModes) {
        const auto small = exact_max(m, c);
        const auto lifted = lift(small.witness, n);
        CHECK(c.admits(lifted));
        CHECK(exact_max(n, c).max_size >= small.max_size * (n / m));
      }
    }
  }
}

TEST_CASE("enumerate_feasible visits each feasible set once") {
  for (std::uint64_t n = 1; n <= 12; ++n) {
    for (auto c : kModes) {
      // Oracle: test every mask.
      std::size_t expected = 0;
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        ResidueSet a(n);
        for (std::uint64_t r = 0; r < n; ++r) {
          if (mask >> r & 1) a.insert(r);
        }
        expected += c.admits(a);
      }
      std::set<std::vector<Residue>> seen;
      std::size_t visits = 0;
      enumerate_feasible(n, c, 1, [&](const ResidueSet& a) {
        CHECK(c.admits(a));
        seen.insert(a.members());
        ++visits;
      });
      CAPTURE(n);
      CHECK(visits == expected);
      CHECK(seen.size() == expected);
    }
  }
  CHECK_THROWS(enumerate_feasible(25, ConstraintSpec::sum_only(), 0, [](const ResidueSet&) {}));
}

TEST_CASE("large sum-free sets for n <= 24 sit inside the odd residues") {
  std::size_t found = 0;
  for (std::uint64_t n = 1; n <= 24; ++n) {
    enumerate_feasible(n, ConstraintSpec::sum_only(), 2 * n / 5 + 1, [&](const ResidueSet& a) {
      REQUIRE(5 * a.cardinality() > 2 * n);
      CHECK(n % 2 == 0);
      a.for_each([](Residue r) { CHECK(r % 2 == 1); });
      ++found;
    });
  }
  CHECK(found > 0);
}

TEST_CASE("scan matches the oracle and is idempotent on its cache") {
  TempFile tmp("scan.jsonl");
  ResultCache cache(tmp.path);
  ScanConfig cfg;
  cfg.first = 1;
  cfg.last = 18;
  const auto first = scan(cfg, cache);
  REQUIRE(first.size() == 18);
  for (const auto& rec : first) {
    CHECK(rec.result.optimal);
    CHECK_FALSE(rec.from_cache);
    CHECK(rec.result.max_size == brute_force_max(rec.result.n, ConstraintSpec::both()).max_size);
    CHECK(rec.envelope.has_value() == (rec.result.n >= 16));
  }
  const auto lines = cache.record_count();
  CHECK(lines == 18);
  const auto size_before = std::filesystem::file_size(tmp.path);

  ResultCache reopened(tmp.path);
  const auto second = scan(cfg, reopened);
  REQUIRE(second.size() == 18);
  for (std::size_t i = 0; i < 18; ++i) {
    CHECK(second[i].from_cache);
    CHECK(second[i].result.max_size == first[i].result.max_size);
    CHECK(second[i].result.witness == first[i].result.witness);
  }
  CHECK(std::filesystem::file_size(tmp.path) == size_before);
}

TEST_CASE("scan over multiples of five reaches 2/5") {
  TempFile tmp("scan5.jsonl");
  ResultCache cache(tmp.path);
  ScanConfig cfg;
  cfg.first = 5;
  cfg.last = 40;
  for (const auto& rec : scan(cfg, cache)) {
    if (rec.result.n % 5 != 0) continue;
    CAPTURE(rec.result.n);
    CHECK(rec.result.optimal);
    CHECK(rec.result.density() >= Rational(2, 5));
    CHECK(rec.above_two_fifths == (rec.result.density() > Rational(2, 5)));
    CHECK(ConstraintSpec::both().admits(lift(ResidueSet::from_members(5, {2, 3}), rec.result.n)));
  }
}

TEST_CASE("scan edge cases") {
  TempFile tmp("scan_empty.jsonl");
  ResultCache cache(tmp.path);
  ScanConfig cfg;
  cfg.first = 9;
  cfg.last = 3;
  CHECK(scan(cfg, cache).empty());
  CHECK(cache.record_count() == 0);

  ResultCache bad("/nonexistent_dir_for_freeset/cache.jsonl");
  cfg.first = 1;
  cfg.last = 2;
  CHECK_THROWS_AS(scan(cfg, bad), CacheIoError);
}

TEST_CASE("cache keeps the latest optimal record") {
  TempFile tmp("cache.jsonl");
  ResultCache cache(tmp.path);
  auto partial = exact_max(37, ConstraintSpec::sum_only(), 3);
  REQUIRE_FALSE(partial.optimal);
  CHECK(cache.append(partial));
  CHECK_FALSE(cache.append(partial));
  auto done = exact_max(37, ConstraintSpec::sum_only());
  CHECK(cache.append(done));
  CHECK_FALSE(cache.append(partial));
  const auto hit = ResultCache(tmp.path).lookup(37, "s");
  REQUIRE(hit);
  CHECK(hit->optimal);
  CHECK(hit->max_size == done.max_size);
  CHECK(hit->witness == done.witness);
  CHECK_FALSE(cache.lookup(37, "sp"));

  {
    std::ofstream out(tmp.path, std::ios::app);
    out << "{not json\n";
  }
  CHECK_THROWS_AS(ResultCache(tmp.path), CacheIoError);
}

}  // TEST_SUITE

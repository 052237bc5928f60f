#include <doctest.h>

#include <numeric>

#include "freeset/constructions.hpp"
#include "freeset/solver.hpp"

using namespace freeset;

namespace {

bool product_free_naive(const ResidueSet& a) {
  const auto m = a.members();
  const std::uint64_t n = a.modulus();
  for (std::uint64_t x : m) {
    for (std::uint64_t y : m) {
      if (a.contains(x * y % n)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("constructions") {

TEST_CASE("odd_residues") {
  CHECK(odd_residues(2) == ResidueSet::from_members(2, {1}));
  const auto o10 = odd_residues(10);
  CHECK(o10 == ResidueSet::from_members(10, {1, 3, 5, 7, 9}));
  CHECK(density(o10) == Rational(1, 2));
  CHECK(is_sum_free(o10));
  CHECK_FALSE(is_product_free(o10));  // 3 * 3 = 9
  CHECK_THROWS_AS(odd_residues(7), std::invalid_argument);
}

TEST_CASE("blowup of {3,7} mod 10") {
  const auto rep = blowup(ResidueSet::from_members(10, {3, 7}));
  CHECK(rep.k == 4);
  CHECK(rep.big_n == 2560);
  CHECK(rep.size == 992);
  CHECK(rep.expected_size == 16 * 31 * 2);
  CHECK(rep.count_identity_holds);
  CHECK(rep.lower_bound_holds);
  CHECK(rep.product_free);
  CHECK(product_free_naive(rep.set));

  // Independent rebuild straight from the definition.
  ResidueSet direct(2560);
  for (std::uint64_t j = 0; j <= 4; ++j) {
    for (std::uint64_t b = 1; b <= (2560u >> j); ++b) {
      if (b % 10 == 3 || b % 10 == 7) direct.insert((b << j) % 2560);
    }
  }
  CHECK(rep.set == direct);
}

TEST_CASE("blowup preconditions") {
  CHECK(blowup(ResidueSet(10)).set.empty());
  CHECK_THROWS_AS(blowup(ResidueSet::from_members(5, {2, 3})), std::invalid_argument);
  CHECK_THROWS_AS(blowup(ResidueSet::from_members(10, {2, 3})), std::invalid_argument);  // 2 is even
  CHECK_THROWS_AS(blowup(ResidueSet::from_members(4, {1})), std::invalid_argument);      // 1 * 1 = 1
  CHECK_THROWS_AS(blowup(ResidueSet::from_members(1000, {3})), ModulusCapExceeded);
}

TEST_CASE("blowup count identity on every admissible odd set for small n") {
  int checked = 0;
  for (std::uint64_t n = 2; n <= 14; n += 2) {
    enumerate_feasible(n, ConstraintSpec::both(), 1, [&](const ResidueSet& a) {
      bool odd = true;
      a.for_each([&](Residue r) { odd = odd && r % 2 == 1; });
      if (!odd) return;
      const auto rep = blowup(a);
      CHECK(rep.count_identity_holds);
      CHECK(rep.lower_bound_holds);
      CHECK(rep.product_free);
      CHECK(rep.big_n <= 4 * n * n * n);
      // Odd members of B are the j = 0 layer and reduce into A.
      rep.set.for_each([&](Residue r) {
        if (r % 2 == 1) CHECK(a.contains(r % n));
      });
      ++checked;
    });
  }
  CHECK(checked > 10);
}

TEST_CASE("section4_params") {
  const auto p = section4_params(8);
  CHECK(*p.ell.value() == 840);
  CHECK(*p.n.value() == 705600);
  CHECK(p.k == 1);
  CHECK_FALSE(p.k_overridden);
  CHECK(p.log_log_n == doctest::Approx(std::log(std::log(705600.0))).epsilon(1e-12));
  CHECK(p.divisors->empty());

  const auto q = section4_params(8, 2);
  CHECK(q.k_overridden);
  REQUIRE(q.divisors->size() == 1);
  CHECK(*q.divisors->front().value() == 105);

  const auto r = section4_params(2);
  CHECK(*r.ell.value() == 2);
  CHECK(*r.n.value() == 4);
  CHECK(r.window.is_empty());
  CHECK_THROWS_AS(section4_params(1), std::invalid_argument);

  const auto big = section4_params(100, std::nullopt, false);
  CHECK_FALSE(big.divisors.has_value());
  CHECK_FALSE(big.n.value().has_value());
}

TEST_CASE("section4_set and density at x = 8, k = 2") {
  const auto p = section4_params(8, 2);
  const auto a = section4_set(p);
  CHECK(a.modulus() == 705600);
  CHECK(a.cardinality() == 1536);
  std::size_t gcd_105 = 0;
  for (std::uint64_t r = 0; r < 705600; ++r) gcd_105 += std::gcd(r, std::uint64_t{705600}) == 105;
  CHECK(gcd_105 == 1536);
  a.for_each([](Residue r) { REQUIRE(r % 2 == 1); });
  CHECK(is_sum_free(a));
  CHECK(is_product_free(a));
  CHECK(section4_density(p) == Rational(8, 3675));
  CHECK(density(a) == section4_density(p));
}

TEST_CASE("section4 empty windows and the modulus cap") {
  CHECK(section4_set(section4_params(5, 1)).empty());
  CHECK(section4_density(section4_params(5, 1)) == 0);
  CHECK_THROWS_AS(section4_set(section4_params(12, 2)), ModulusCapExceeded);
  CHECK(section4_density(section4_params(12, 2, false)) > 0);
}

TEST_CASE("section4 explicit sets match the exact density for x <= 10") {
  for (std::uint64_t x = 2; x <= 10; ++x) {
    for (std::uint32_t k = 1; k <= 4; ++k) {
      const auto p = section4_params(x, k);
      if (*p.n.value() > kDefaultModulusCap) continue;
      CAPTURE(x);
      CAPTURE(k);
      const auto a = section4_set(p);
      CHECK(section4_density(p) * *p.n.value() == a.cardinality());
      CHECK(density(a) == section4_density(p));
      a.for_each([](Residue r) { REQUIRE(r % 2 == 1); });
      CHECK(is_sum_free(a));
      CHECK(is_product_free(a));
    }
  }
}

}  // TEST_SUITE

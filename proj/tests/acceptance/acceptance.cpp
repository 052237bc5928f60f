// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any
// criterion fails or overruns its time limit.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <chrono>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "freeset/analysis.hpp"
#include "freeset/arith.hpp"
#include "freeset/cli.hpp"
#include "freeset/constructions.hpp"
#include "freeset/residue_set.hpp"
#include "freeset/solver.hpp"

using namespace freeset;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

#define EXPECT(cond)                                  \
  do {                                                \
    if (!(cond)) return Outcome{false, "failed: " #cond}; \
  } while (0)

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.ok && s > limit_s) o = {false, "over time limit"};
  if (!o.ok) ++failures;
  std::printf("[%s] %2d. %s (%.3fs, limit %gs)%s%s\n", o.ok ? "PASS" : "FAIL", id, name, s, limit_s,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
}

const ConstraintSpec kModes[] = {ConstraintSpec::sum_only(), ConstraintSpec::product_only(),
                                 ConstraintSpec::both()};

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

Rational sum_free_closed_form(std::uint64_t n) {
  const auto ps = prime_factors(n);
  for (auto p : ps) {
    if (p % 3 == 2) return Rational(1, 3) + Rational(BigInt(1), BigInt(3 * p));
  }
  bool all_one = true;
  for (auto p : ps) all_one = all_one && p % 3 == 1;
  if (all_one) return Rational(1, 3) - Rational(BigInt(1), BigInt(3 * n));
  return Rational(1, 3);
}

// Every divisor of m with its Omega, by recursion over trial-division factors.
void divisors_with_omega(std::uint64_t m, std::vector<std::pair<std::uint64_t, int>>& out) {
  std::vector<std::pair<std::uint64_t, int>> pe;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) m /= p, ++e;
    if (e) pe.push_back({p, e});
  }
  if (m > 1) pe.push_back({m, 1});
  std::function<void(std::size_t, std::uint64_t, int)> rec = [&](std::size_t i, std::uint64_t d, int w) {
    if (i == pe.size()) {
      out.push_back({d, w});
      return;
    }
    std::uint64_t q = 1;
    for (int j = 0; j <= pe[i].second; ++j, q *= pe[i].first) rec(i + 1, d * q, w + j);
  };
  rec(0, 1, 0);
}

std::uint64_t lcm_fold(std::uint64_t x) {
  std::uint64_t l = 1;
  for (std::uint64_t i = 2; i <= x; ++i) l = l / std::gcd(l, i) * i;
  return l;
}

// Sum-free sets with density above 2/5 for n <= 24, shared by criteria 4 and 11.
std::vector<ResidueSet> dense_sum_free;

}  // namespace

int main() {
  criterion(1, "D'(5) = 2/5 via solve --n 5 --mode sp", 1, [] {
    std::ostringstream out, err;
    EXPECT(cli::run({"solve", "--n", "5", "--mode", "sp"}, out, err) == cli::kOk);
    const auto j = nlohmann::json::parse(out.str());
    EXPECT(j["max_size"] == 2);
    EXPECT(j["optimal"] == true);
    EXPECT(j["density"] == "2/5");
    ResidueSet w(5);
    for (auto r : j["witness"]) w.insert(r.get<Residue>());
    EXPECT(w.cardinality() == 2);
    EXPECT(is_sum_free(w) && is_product_free(w));
    return Outcome{true, "witness " + j["witness"].dump()};
  });

  criterion(2, "exact_max = brute_force_max for n in [1,18], modes s/p/sp", 300, [] {
    for (std::uint64_t n = 1; n <= 18; ++n) {
      for (auto c : kModes) {
        const auto fast = exact_max(n, c);
        const auto slow = brute_force_max(n, c);
        if (!fast.optimal || fast.max_size != slow.max_size) {
          return Outcome{false, "n=" + std::to_string(n) + " mode " + c.mode()};
        }
      }
    }
    return Outcome{true, "54 instances"};
  });

  criterion(3, "sum-free maxima follow the Diananda-Yap closed forms for 3 <= n <= 40", 600, [] {
    for (std::uint64_t n = 3; n <= 40; ++n) {
      const auto r = exact_max(n, ConstraintSpec::sum_only());
      if (!r.optimal || r.density() != sum_free_closed_form(n)) {
        return Outcome{false, "n=" + std::to_string(n) + " got " + to_string(r.density())};
      }
      if (n % 2 == 0 && r.density() != Rational(1, 2)) return Outcome{false, "even n=" + std::to_string(n)};
    }
    return Outcome{true, ""};
  });

  criterion(4, "sum-free A with |A| > 2n/5, n <= 24: n even and A within the odds", 600, [] {
    for (std::uint64_t n = 1; n <= 24; ++n) {
      enumerate_feasible(n, ConstraintSpec::sum_only(), 2 * n / 5 + 1,
                         [&](const ResidueSet& a) { dense_sum_free.push_back(a); });
    }
    for (const auto& a : dense_sum_free) {
      const auto n = a.modulus();
      EXPECT(5 * a.cardinality() > 2 * n);
      EXPECT(n % 2 == 0);
      for (auto r : a.members()) EXPECT(r % 2 == 1);
    }
    EXPECT(!dense_sum_free.empty());
    return Outcome{true, std::to_string(dense_sum_free.size()) + " sets"};
  });

  criterion(5, "blowup({3,7} mod 10): N = 2560, |B| = 992, B product-free", 1, [] {
    const auto rep = blowup(ResidueSet::from_members(10, {3, 7}));
    EXPECT(rep.big_n == 2560);
    EXPECT(rep.set.modulus() == 2560);
    EXPECT(rep.set.cardinality() == 16 * (32 - 1) * 2);
    EXPECT(rep.count_identity_holds);
    EXPECT(is_product_free(rep.set));
    return Outcome{true, ""};
  });

  criterion(6, "x = 8, k = 2: 1536 odd residues mod 705600, sum-free, product-free, density 8/3675", 30, [] {
    const auto p = section4_params(8, 2);
    const auto a = section4_set(p);
    EXPECT(a.modulus() == 705600);
    EXPECT(a.cardinality() == 1536);
    for (auto r : a.members()) EXPECT(r % 2 == 1);
    EXPECT(is_sum_free(a));
    EXPECT(is_product_free(a));
    EXPECT(section4_density(p) == Rational(8, 3675));
    EXPECT(section4_density(p) == Rational(1536, 705600));
    return Outcome{true, ""};
  });

  criterion(7, "Omega-window divisor harmonic sums match enumeration, x <= 30, k in [1,5]", 60, [] {
    int checked = 0;
    for (std::uint64_t x = 1; x <= 30; ++x) {
      const auto ell = lcm_up_to(x);
      EXPECT(ell.value() == lcm_fold(x));
      std::vector<std::pair<std::uint64_t, int>> divs;
      divisors_with_omega(lcm_fold(x), divs);
      for (int k = 1; k <= 5; ++k) {
        for (bool odd : {true, false}) {
          Rational naive(0);
          for (auto [d, w] : divs) {
            if (odd && d % 2 == 0) continue;
            if (k < w && w < 2 * k) naive += Rational(BigInt(1), BigInt(d));
          }
          if (omega_restricted_divisor_harmonic(ell, odd, OmegaWindow::between(k)) != naive) {
            return Outcome{false, "x=" + std::to_string(x) + " k=" + std::to_string(k)};
          }
          ++checked;
        }
      }
    }
    return Outcome{true, std::to_string(checked) + " sums"};
  });

  criterion(8, "first-term chain holds for x in [2,30]", 60, [] {
    for (std::uint64_t x = 2; x <= 30; ++x) {
      const auto r = first_term_check(x);
      if (!r.holds()) return Outcome{false, "x=" + std::to_string(x)};
      // Independent LHS: phi(n)/n and the odd-divisor sum as Euler products.
      Rational lhs(1);
      for (std::uint64_t p : prime_factors(lcm_fold(x))) {
        lhs *= Rational(BigInt(p - 1), BigInt(p));
        if (p == 2) continue;
        Rational local(1), term(1);
        for (std::uint64_t q = p; q <= x; q *= p) {
          term /= p;
          local += term;
        }
        lhs *= local;
      }
      if (r.lhs != lhs) return Outcome{false, "lhs mismatch at x=" + std::to_string(x)};
    }
    return Outcome{true, ""};
  });

  criterion(9, "Kneser: 1000 random pairs over n <= 64", 10, [] {
    std::mt19937_64 rng(20240601);
    for (int t = 0; t < 1000; ++t) {
      const std::uint64_t n = 1 + rng() % 64;
      ResidueSet a(n), b(n);
      const auto fill_a = 1 + rng() % 4, fill_b = 1 + rng() % 4;
      for (std::uint64_t r = 0; r < n; ++r) {
        if (rng() % (fill_a + 1) == 0) a.insert(r);
        if (rng() % (fill_b + 1) == 0) b.insert(r);
      }
      if (a.empty()) a.insert(rng() % n);
      if (b.empty()) b.insert(rng() % n);
      // Naive sumset and stabilizer.
      std::vector<char> c(n, 0), h(n, 0);
      for (auto x : a.members()) {
        for (auto y : b.members()) c[(x + y) % n] = 1;
      }
      for (std::uint64_t g = 0; g < n; ++g) {
        bool fixes = true;
        for (std::uint64_t z = 0; z < n && fixes; ++z) fixes = !c[z] || c[(z + g) % n];
        h[g] = fixes;
      }
      auto plus_h = [&](const ResidueSet& s) {
        std::vector<char> v(n, 0);
        for (auto x : s.members()) {
          for (std::uint64_t g = 0; g < n; ++g) {
            if (h[g]) v[(x + g) % n] = 1;
          }
        }
        return static_cast<std::int64_t>(std::count(v.begin(), v.end(), 1));
      };
      const auto size_c = std::count(c.begin(), c.end(), 1);
      const auto size_h = std::count(h.begin(), h.end(), 1);
      if (size_c < plus_h(a) + plus_h(b) - size_h) return Outcome{false, "naive check, n=" + std::to_string(n)};
      const auto rep = kneser_check(a, b);
      if (!rep.inequality_holds || static_cast<std::int64_t>(rep.size_c) != size_c ||
          static_cast<std::int64_t>(rep.size_h) != size_h) {
        return Outcome{false, "library report, n=" + std::to_string(n)};
      }
    }
    return Outcome{true, ""};
  });

  criterion(10, "interval, shift-intersection and A_g checks for x <= 10^4; difference groups", 60, [] {
    const PeriodicSet odds(ResidueSet::from_members(2, {1}));
    const PeriodicSet two_three(ResidueSet::from_members(5, {2, 3}));
    struct Case {
      const PeriodicSet* p;
      std::uint64_t a1, a2;
    };
    const Case cases[] = {{&odds, 1, 1}, {&odds, 3, 1}, {&odds, 1, 5}, {&two_three, 2, 3},
                          {&two_three, 3, 2}, {&two_three, 2, 2}, {&two_three, 7, 3}};
    std::size_t checks = 0;
    for (std::uint64_t x = 1; x <= 10000; ++x) {
      for (const auto* p : {&odds, &two_three}) {
        if (!interval_bound_check(*p, 1, x).holds) return Outcome{false, "interval x=" + std::to_string(x)};
        ++checks;
      }
      for (const auto& c : cases) {
        if (x <= c.a1 + c.a2) continue;
        if (!shift_intersection_check(*c.p, c.a1, c.a2, x).holds) {
          return Outcome{false, "shift x=" + std::to_string(x)};
        }
        const auto g = static_cast<std::int64_t>(c.a1) - static_cast<std::int64_t>(c.a2);
        if (!a_g_window_check(*c.p, g, c.a1, c.a2, x).holds) return Outcome{false, "A_g x=" + std::to_string(x)};
        checks += 2;
      }
    }
    EXPECT(periodic_difference_group(odds) == 2u);
    EXPECT(!periodic_difference_group(two_three).has_value());
    return Outcome{true, std::to_string(checks) + " checks"};
  });

  criterion(11, "product-free sets among criterion 4's satisfy density <= (1/2)(1 - 1/(5 a0))", 600, [] {
    EXPECT(!dense_sum_free.empty());
    std::size_t seen = 0;
    for (const auto& a : dense_sum_free) {
      const PeriodicSet p(a);
      if (!p.is_product_free()) continue;
      ++seen;
      EXPECT(p.density() <= theorem1_bound(*p.least_element()));
    }
    // The dense sets are never product-free at this scale, so also run the
    // bound over every sum-free, product-free subset for n <= 24.
    std::size_t all = 0;
    bool ok = true;
    for (std::uint64_t n = 1; n <= 24; ++n) {
      enumerate_feasible(n, ConstraintSpec::both(), 1, [&](const ResidueSet& a) {
        const PeriodicSet p(a);
        ok = ok && p.density() <= theorem1_bound(*p.least_element());
        ++all;
      });
    }
    EXPECT(ok);
    return Outcome{true, std::to_string(seen) + " product-free of " + std::to_string(dense_sum_free.size()) +
                             " dense sets; bound also holds on all " + std::to_string(all) +
                             " sum-free product-free sets"};
  });

  criterion(12, "exponent 1 - (e/2) log 2 to 1e-9; envelope monotone on a grid", 1, [] {
    using Big = boost::multiprecision::cpp_bin_float_50;
    const Big exact = 1 - exp(Big(1)) / 2 * log(Big(2));
    EXPECT(std::abs(exponent_constant() - exact.convert_to<double>()) < 1e-9);
    double prev = envelope(16, 1);
    for (double n = 17; n < 1e300; n *= 1.9) {
      const double e = envelope(n, 1);
      EXPECT(e > prev);
      prev = e;
    }
    for (double n : {16.0, 1e4, 1e12, 1e100}) {
      double last = envelope(n, 0);
      for (double k = 0.1; k <= 5; k += 0.1) {
        const double e = envelope(n, k);
        EXPECT(e < last);
        last = e;
      }
    }
    std::ostringstream digits;
    digits.precision(12);
    digits << exponent_constant();
    return Outcome{true, "exponent " + digits.str()};
  });

  std::printf("%d failed\n", failures);
  return failures == 0 ? 0 : 1;
}

#include "freeset/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "freeset/arith.hpp"

namespace freeset {

std::uint64_t PeriodicSet::count_up_to(std::uint64_t x) const {
  const std::uint64_t m = modulus();
  std::uint64_t total = 0;
  classes_.for_each([&](Residue r) {
    if (r == 0) {
      total += x / m;
    } else if (r <= x) {
      total += (x - r) / m + 1;
    }
  });
  return total;
}

std::optional<std::uint64_t> PeriodicSet::least_element() const {
  std::optional<std::uint64_t> best;
  classes_.for_each([&](Residue r) {
    const std::uint64_t rep = r == 0 ? modulus() : r;
    if (!best || rep < *best) best = rep;
  });
  return best;
}

bool PeriodicSet::least_multiple_disjoint() const {
  const auto a0 = least_element();
  if (!a0) return true;
  bool disjoint = true;
  classes_.for_each([&](Residue r) {
    if (classes_.contains((*a0 % modulus()) * r % modulus())) disjoint = false;
  });
  return disjoint;
}

WindowStats window_count(const PeriodicSet& p, std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("window_count: x must be at least 1");
  WindowStats w;
  w.x = x;
  w.count = p.count_up_to(x);
  w.delta = 1 - Rational(BigInt(2 * w.count), BigInt(x));
  return w;
}

namespace {

void require_sum_free(const PeriodicSet& p, const char* who) {
  if (!p.is_sum_free()) throw std::invalid_argument(std::string(who) + ": set is not sum-free");
}

void require_member(const PeriodicSet& p, std::uint64_t a, const char* who) {
  if (!p.contains(static_cast<std::int64_t>(a))) {
    throw std::invalid_argument(std::string(who) + ": " + std::to_string(a) + " is not a member");
  }
}

// The sets A(x), a1 + A(x - a1), a2 + A(x - a2) all sit in [1, x]; the last
// two avoid A(x). Counting their union against x - |A(x)| gives this bound.
std::int64_t shift_bound(const PeriodicSet& p, std::uint64_t a1, std::uint64_t a2, std::uint64_t x) {
  return 3 * static_cast<std::int64_t>(p.count_up_to(x)) - static_cast<std::int64_t>(x) -
         static_cast<std::int64_t>(a1 + a2);
}

}  // namespace

IntervalBoundReport interval_bound_check(const PeriodicSet& p, std::uint64_t u, std::uint64_t v) {
  if (u == 0 || u > v) throw std::invalid_argument("interval_bound_check: need 1 <= u <= v");
  const auto a0 = p.least_element();
  if (!a0) throw std::invalid_argument("interval_bound_check: set is empty");
  require_sum_free(p, "interval_bound_check");
  // The argument only uses (a0 + A) ∩ A = ∅; check it on one full period.
  if (p.classes().rotated(*a0 % p.modulus()).intersects(p.classes())) {
    throw std::invalid_argument("interval_bound_check: a0 + A meets A");
  }
  IntervalBoundReport rep;
  rep.u = u;
  rep.v = v;
  rep.a0 = *a0;
  rep.count = p.count_up_to(v) - p.count_up_to(u - 1);
  rep.bound = Rational(BigInt(v - u + 1 + *a0), BigInt(2));
  rep.slack = rep.bound - rep.count;
  rep.holds = rep.slack >= 0;
  return rep;
}

ShiftIntersectionReport shift_intersection_check(const PeriodicSet& p, std::uint64_t a1, std::uint64_t a2,
                                                 std::uint64_t x) {
  require_member(p, a1, "shift_intersection_check");
  require_member(p, a2, "shift_intersection_check");
  require_sum_free(p, "shift_intersection_check");
  if (x <= a1 + a2) throw std::invalid_argument("shift_intersection_check: x must exceed a1 + a2");

  ShiftIntersectionReport rep;
  rep.a1 = a1;
  rep.a2 = a2;
  rep.x = x;
  for (std::uint64_t t = 1; t <= x; ++t) {
    const bool in_first = t > a1 && p.contains(static_cast<std::int64_t>(t - a1));
    const bool in_second = t > a2 && p.contains(static_cast<std::int64_t>(t - a2));
    if (in_first && in_second) ++rep.intersection;
  }
  rep.bound = shift_bound(p, a1, a2, x);
  rep.holds = static_cast<std::int64_t>(rep.intersection) >= rep.bound;
  return rep;
}

AgWindowReport a_g_window_check(const PeriodicSet& p, std::int64_t g, std::uint64_t a1, std::uint64_t a2,
                                std::uint64_t x) {
  require_member(p, a1, "a_g_window_check");
  require_member(p, a2, "a_g_window_check");
  require_sum_free(p, "a_g_window_check");
  if (static_cast<std::int64_t>(a1) - static_cast<std::int64_t>(a2) != g) {
    throw std::invalid_argument("a_g_window_check: witnesses must satisfy a1 - a2 = g");
  }
  if (x <= a1 + a2) throw std::invalid_argument("a_g_window_check: x must exceed a1 + a2");

  AgWindowReport rep;
  rep.g = g;
  rep.a1 = a1;
  rep.a2 = a2;
  rep.x = x;
  for (std::uint64_t a = 1; a <= x - a1; ++a) {
    const auto ai = static_cast<std::int64_t>(a);
    if (p.contains(ai) && p.contains(ai + g)) ++rep.count;
  }
  rep.bound = shift_bound(p, a1, a2, x);
  rep.holds = static_cast<std::int64_t>(rep.count) >= rep.bound;
  return rep;
}

std::optional<std::uint64_t> periodic_difference_group(const PeriodicSet& p) {
  return subgroup_test(difference_classes(p.classes()));
}

Rational theorem1_bound(std::uint64_t a0) {
  if (a0 == 0) throw std::invalid_argument("theorem1_bound: a0 must be positive");
  return Rational(1, 2) * (1 - Rational(BigInt(1), BigInt(5 * a0)));
}

double exponent_constant() { return 1.0 - std::numbers::e / 2.0 * std::numbers::ln2; }

double envelope_from_log(double log_n, double kappa) {
  const double ll = std::log(log_n);
  if (!(ll > 1.0) || !std::isfinite(ll)) {
    throw std::domain_error("envelope: needs log log log n > 0, i.e. n > e^e");
  }
  return 0.5 - kappa / (std::pow(ll, exponent_constant()) * std::sqrt(std::log(ll)));
}

double envelope(double n, double kappa) {
  if (!(n > 0.0)) throw std::domain_error("envelope: n must be positive");
  return envelope_from_log(std::log(n), kappa);
}

FirstTermReport first_term_check(std::uint64_t x) {
  if (x < 2) throw std::invalid_argument("first_term_check: x must be at least 2");
  FirstTermReport rep;
  rep.x = x;
  rep.pi_x = sieve_primes(x).size();
  const FactoredInteger ell = lcm_up_to(x);
  rep.lhs = euler_phi_ratio(ell.squared()) *
            omega_restricted_divisor_harmonic(ell, true, OmegaWindow::unbounded());
  const Rational step = 1 - Rational(BigInt(1), BigInt(x));
  Rational power = 1;
  for (std::uint64_t i = 0; i < rep.pi_x; ++i) power *= step;
  rep.middle = Rational(1, 2) * power;
  rep.rhs = Rational(1, 2) - Rational(BigInt(rep.pi_x), BigInt(x));
  rep.lhs_ge_middle = rep.lhs >= rep.middle;
  rep.middle_ge_rhs = rep.middle >= rep.rhs;
  return rep;
}

void write_window_csv(std::ostream& out, const PeriodicSet& p, std::span<const std::uint64_t> xs) {
  const std::uint64_t a0 = p.least_element().value_or(0);
  out << "x,count,delta_x_num,delta_x_den,bound,slack\n";
  for (auto x : xs) {
    const auto w = window_count(p, x);
    const Rational bound(BigInt(x + a0), BigInt(2));
    out << x << ',' << w.count << ',' << boost::multiprecision::numerator(w.delta) << ','
        << boost::multiprecision::denominator(w.delta) << ',' << to_string(bound) << ','
        << to_string(bound - w.count) << '\n';
  }
}

}  // namespace freeset

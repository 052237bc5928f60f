#pragma once

// Finite, explicit-constant forms of the density arguments for sets of
// positive integers. Sets are periodic: A = {a >= 1 : a mod m in classes}.
// Every inequality below is the exact integer statement that the proofs
// establish before their O(1) terms are absorbed, so each one is asserted as
// is, with no slack.
//
// A periodic A is sum-free (product-free) as a set of integers exactly when
// its classes are sum-free (product-free) mod m. If a + b = c (a b = c) in A
// the residues satisfy the same relation; conversely a residue relation
// r + s = t (r s = t) is realized by the least positive representatives of
// r and s, whose sum (product) is a positive integer in class t.

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>

#include "freeset/rational.hpp"
#include "freeset/residue_set.hpp"

namespace freeset {

class PeriodicSet {
 public:
  explicit PeriodicSet(ResidueSet classes) : classes_(std::move(classes)) {}

  std::uint64_t modulus() const noexcept { return classes_.modulus(); }
  const ResidueSet& classes() const noexcept { return classes_; }

  bool contains(std::int64_t a) const noexcept {
    return a >= 1 && classes_.contains(static_cast<std::uint64_t>(a) % modulus());
  }

  /// |A(x)| = |A ∩ [1, x]|, by whole periods plus a remainder.
  std::uint64_t count_up_to(std::uint64_t x) const;

  Rational density() const { return freeset::density(classes_); }

  /// a0, the least member; absent for the empty set.
  std::optional<std::uint64_t> least_element() const;

  bool is_sum_free() const { return freeset::is_sum_free(classes_); }
  bool is_product_free() const { return freeset::is_product_free(classes_); }

  /// ({a0} * A) ∩ A = ∅, checked on classes.
  bool least_multiple_disjoint() const;

 private:
  ResidueSet classes_;
};

struct WindowStats {
  std::uint64_t x = 0;
  std::uint64_t count = 0;
  /// 1 - 2 count / x.
  Rational delta;
};

WindowStats window_count(const PeriodicSet& p, std::uint64_t x);

struct IntervalBoundReport {
  std::uint64_t u = 0, v = 0;
  std::uint64_t a0 = 0;
  std::uint64_t count = 0;
  /// ((v - u + 1) + a0) / 2.
  Rational bound;
  Rational slack;
  bool holds = false;
};

/// |A ∩ [u, v]| <= ((v - u + 1) + a0) / 2 for sum-free A: the members and
/// their a0-translates are disjoint, and all but a0 of the translates stay in
/// the interval. Throws std::invalid_argument when A is empty, not sum-free,
/// or u > v or u = 0.
IntervalBoundReport interval_bound_check(const PeriodicSet& p, std::uint64_t u, std::uint64_t v);

struct ShiftIntersectionReport {
  std::uint64_t a1 = 0, a2 = 0, x = 0;
  /// |(a1 + A(x - a1)) ∩ (a2 + A(x - a2))|, by enumeration.
  std::uint64_t intersection = 0;
  /// 3 |A(x)| - x - (a1 + a2).
  std::int64_t bound = 0;
  bool holds = false;
};

/// Throws std::invalid_argument unless a1, a2 are members, A is sum-free and
/// x > a1 + a2.
ShiftIntersectionReport shift_intersection_check(const PeriodicSet& p, std::uint64_t a1, std::uint64_t a2,
                                                 std::uint64_t x);

struct AgWindowReport {
  std::int64_t g = 0;
  std::uint64_t a1 = 0, a2 = 0, x = 0;
  /// |A_g(x - a1)| with A_g = {a in A : a + g in A}, by enumeration.
  std::uint64_t count = 0;
  std::int64_t bound = 0;
  bool holds = false;
};

/// Same preconditions as shift_intersection_check plus a1 - a2 = g.
AgWindowReport a_g_window_check(const PeriodicSet& p, std::int64_t g, std::uint64_t a1, std::uint64_t a2,
                                std::uint64_t x);

/// g with ΔA = gZ when the difference classes form a subgroup of Z/mZ;
/// nullopt otherwise. Every difference class is realized by arbitrarily
/// large differences, so the integer difference set is the union of classes.
std::optional<std::uint64_t> periodic_difference_group(const PeriodicSet& p);

/// (1/2)(1 - 1/(5 a0)). Throws std::invalid_argument for a0 = 0.
Rational theorem1_bound(std::uint64_t a0);

/// 1 - (e/2) log 2.
double exponent_constant();

/// 1/2 - kappa / ((log log n)^c (log log log n)^(1/2)) with c =
/// exponent_constant(). Throws std::domain_error unless log log log n > 0.
double envelope(double n, double kappa);

/// envelope() from log n, for moduli held only as factorizations.
double envelope_from_log(double log_n, double kappa);

struct FirstTermReport {
  std::uint64_t x = 0;
  std::uint64_t pi_x = 0;
  /// phi(n_x)/n_x * (sum of 1/d over odd d | l_x).
  Rational lhs;
  /// (1/2)(1 - 1/x)^pi(x).
  Rational middle;
  /// 1/2 - pi(x)/x.
  Rational rhs;
  bool lhs_ge_middle = false;
  bool middle_ge_rhs = false;
  bool holds() const { return lhs_ge_middle && middle_ge_rhs; }
};

/// Throws std::invalid_argument for x < 2.
FirstTermReport first_term_check(std::uint64_t x);

/// CSV rows x,count,delta_x_num,delta_x_den,bound,slack with the interval
/// bound taken over [1, x]. The header line is written first.
void write_window_csv(std::ostream& out, const PeriodicSet& p, std::span<const std::uint64_t> xs);

}  // namespace freeset

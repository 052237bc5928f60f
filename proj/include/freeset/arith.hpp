#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "freeset/rational.hpp"

namespace freeset {

/// Natural logarithm is used for every log/log-log quantity in the library.
inline constexpr const char* kLogBase = "e";

struct PrimePower {
  std::uint64_t prime;
  std::uint32_t exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A positive integer held as its prime factorization. The empty factor list
/// is 1. Values far beyond 64 bits (lcm(1..x) squared) are the normal case, so
/// nothing here expands the product unless asked to and it fits.
class FactoredInteger {
 public:
  FactoredInteger() = default;

  /// Throws std::invalid_argument unless primes are strictly increasing and
  /// every exponent is at least one.
  explicit FactoredInteger(std::vector<PrimePower> factors);

  /// Trial-division factorization; m must be at least 1.
  static FactoredInteger from_u64(std::uint64_t m);

  const std::vector<PrimePower>& factors() const noexcept { return factors_; }
  bool is_one() const noexcept { return factors_.empty(); }

  /// The integer itself, or nullopt when it does not fit in 64 bits.
  std::optional<std::uint64_t> value() const noexcept;

  /// Exponent of p (0 when p does not divide).
  std::uint32_t exponent_of(std::uint64_t p) const noexcept;

  FactoredInteger squared() const;
  FactoredInteger operator*(const FactoredInteger& other) const;

  std::string to_string() const;  // "2^3*3*5*7", "1" for the empty product

  friend bool operator==(const FactoredInteger&, const FactoredInteger&) = default;

 private:
  std::vector<PrimePower> factors_;
};

/// Open interval (lower, upper) of admissible Omega values. An absent upper
/// end means unbounded.
struct OmegaWindow {
  int lower = -1;
  std::optional<int> upper;

  /// The window (k, 2k) that selects divisors with k < Omega(d) < 2k.
  static OmegaWindow between(int k);
  static OmegaWindow unbounded() { return {}; }

  bool contains(std::uint32_t omega) const noexcept;
  bool is_empty() const noexcept;
};

class DivisorCapExceeded : public std::runtime_error {
 public:
  explicit DivisorCapExceeded(std::size_t cap);
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

inline constexpr std::size_t kDefaultDivisorCap = 10'000'000;

std::vector<std::uint64_t> sieve_primes(std::uint64_t x);

/// lcm(1, 2, ..., x): every prime p <= x at the largest power not exceeding x.
FactoredInteger lcm_up_to(std::uint64_t x);

std::uint32_t big_omega(std::uint64_t m);
std::uint32_t big_omega(const FactoredInteger& m);

/// Throws std::invalid_argument for m < 2.
std::uint64_t largest_prime_factor(std::uint64_t m);

/// phi(F)/F = prod over p | F of (1 - 1/p).
Rational euler_phi_ratio(const FactoredInteger& f);

/// Divisors d of F with Omega(d) inside the window (and d odd when requested).
/// Throws DivisorCapExceeded once more than `cap` divisors would be returned.
std::vector<FactoredInteger> divisors_filtered(const FactoredInteger& f, bool odd_only,
                                               const OmegaWindow& window,
                                               std::size_t cap = kDefaultDivisorCap);

/// Sum of 1/d over the same divisors, without enumerating them.
///
/// Each admitted prime power p^a contributes the polynomial
/// sum_{j=0..a} z^j / p^j; the product of these polynomials, truncated at the
/// window's upper end, has as its z^w coefficient the sum of 1/d over
/// divisors with Omega(d) = w.
Rational omega_restricted_divisor_harmonic(const FactoredInteger& f, bool odd_only,
                                           const OmegaWindow& window);

/// log F as a double. Throws std::domain_error for F = 1.
double log_of(const FactoredInteger& f);

}  // namespace freeset

#include "freeset/arith.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace freeset {

FactoredInteger::FactoredInteger(std::vector<PrimePower> factors) : factors_(std::move(factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].prime < 2 || factors_[i].exponent == 0) {
      throw std::invalid_argument("FactoredInteger: prime >= 2 and exponent >= 1 required");
    }
    if (i > 0 && factors_[i - 1].prime >= factors_[i].prime) {
      throw std::invalid_argument("FactoredInteger: primes must be strictly increasing");
    }
  }
}

FactoredInteger FactoredInteger::from_u64(std::uint64_t m) {
  if (m == 0) {
    throw std::invalid_argument("FactoredInteger::from_u64: zero has no factorization");
  }
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p <= m / p; p += (p == 2 ? 1 : 2)) {
    std::uint32_t e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  }
  if (m > 1) out.push_back({m, 1});
  return FactoredInteger(std::move(out));
}

std::optional<std::uint64_t> FactoredInteger::value() const noexcept {
  std::uint64_t acc = 1;
  for (const auto& [p, e] : factors_) {
    for (std::uint32_t i = 0; i < e; ++i) {
      if (__builtin_mul_overflow(acc, p, &acc)) return std::nullopt;
    }
  }
  return acc;
}

std::uint32_t FactoredInteger::exponent_of(std::uint64_t p) const noexcept {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), p,
                             [](const PrimePower& pp, std::uint64_t q) { return pp.prime < q; });
  return (it != factors_.end() && it->prime == p) ? it->exponent : 0;
}

FactoredInteger FactoredInteger::squared() const {
  auto out = factors_;
  for (auto& pp : out) pp.exponent *= 2;
  return FactoredInteger(std::move(out));
}

FactoredInteger FactoredInteger::operator*(const FactoredInteger& other) const {
  std::vector<PrimePower> out;
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->prime < b->prime)) {
      out.push_back(*a++);
    } else if (a == factors_.end() || b->prime < a->prime) {
      out.push_back(*b++);
    } else {
      out.push_back({a->prime, a->exponent + b->exponent});
      ++a;
      ++b;
    }
  }
  return FactoredInteger(std::move(out));
}

std::string FactoredInteger::to_string() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [p, e] : factors_) {
    if (!s.empty()) s += '*';
    s += std::to_string(p);
    if (e > 1) s += '^' + std::to_string(e);
  }
  return s;
}

OmegaWindow OmegaWindow::between(int k) {
  if (k < 0) throw std::invalid_argument("OmegaWindow::between: k must be nonnegative");
  return {k, 2 * k};
}

bool OmegaWindow::contains(std::uint32_t omega) const noexcept {
  auto w = static_cast<long long>(omega);
  return w > lower && (!upper || w < *upper);
}

bool OmegaWindow::is_empty() const noexcept {
  // Omega is never negative, so the first admissible value is max(lower + 1, 0).
  return upper && std::max(lower + 1, 0) >= *upper;
}

DivisorCapExceeded::DivisorCapExceeded(std::size_t cap)
    : std::runtime_error("divisor enumeration exceeds cap of " + std::to_string(cap)), cap_(cap) {}

std::vector<std::uint64_t> sieve_primes(std::uint64_t x) {
  std::vector<std::uint64_t> primes;
  if (x < 2) return primes;
  std::vector<bool> composite(x + 1, false);
  for (std::uint64_t i = 2; i <= x; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= x; j += i) composite[j] = true;
  }
  return primes;
}

FactoredInteger lcm_up_to(std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("lcm_up_to: x must be at least 1");
  std::vector<PrimePower> out;
  for (auto p : sieve_primes(x)) {
    std::uint32_t e = 1;
    for (std::uint64_t pw = p; pw <= x / p; pw *= p) ++e;
    out.push_back({p, e});
  }
  return FactoredInteger(std::move(out));
}

std::uint32_t big_omega(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("big_omega: m must be positive");
  return big_omega(FactoredInteger::from_u64(m));
}

std::uint32_t big_omega(const FactoredInteger& m) {
  std::uint32_t total = 0;
  for (const auto& pp : m.factors()) total += pp.exponent;
  return total;
}

std::uint64_t largest_prime_factor(std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("largest_prime_factor: undefined for m < 2");
  return FactoredInteger::from_u64(m).factors().back().prime;
}

Rational euler_phi_ratio(const FactoredInteger& f) {
  Rational r = 1;
  for (const auto& pp : f.factors()) r *= Rational(pp.prime - 1, pp.prime);
  return r;
}

namespace {

std::vector<PrimePower> admitted_factors(const FactoredInteger& f, bool odd_only) {
  std::vector<PrimePower> out;
  for (const auto& pp : f.factors()) {
    if (odd_only && pp.prime == 2) continue;
    out.push_back(pp);
  }
  return out;
}

}  // namespace

std::vector<FactoredInteger> divisors_filtered(const FactoredInteger& f, bool odd_only,
                                               const OmegaWindow& window, std::size_t cap) {
  std::vector<FactoredInteger> out;
  if (window.is_empty()) return out;
  const auto factors = admitted_factors(f, odd_only);
  std::vector<PrimePower> current;

  std::function<void(std::size_t, std::uint32_t)> walk = [&](std::size_t i, std::uint32_t omega) {
    if (window.upper && static_cast<long long>(omega) >= *window.upper) return;
    if (i == factors.size()) {
      if (window.contains(omega)) {
        if (out.size() == cap) throw DivisorCapExceeded(cap);
        out.emplace_back(current);
      }
      return;
    }
    walk(i + 1, omega);
    for (std::uint32_t e = 1; e <= factors[i].exponent; ++e) {
      current.push_back({factors[i].prime, e});
      walk(i + 1, omega + e);
      current.pop_back();
    }
  };
  walk(0, 0);
  return out;
}

Rational omega_restricted_divisor_harmonic(const FactoredInteger& f, bool odd_only,
                                           const OmegaWindow& window) {
  if (window.is_empty()) return 0;
  const auto factors = admitted_factors(f, odd_only);

  // poly[w] = sum of 1/d over divisors built so far with Omega(d) = w.
  std::vector<Rational> poly{Rational(1)};
  for (const auto& [p, a] : factors) {
    std::size_t degree = poly.size() - 1 + a;
    if (window.upper) degree = std::min<std::size_t>(degree, *window.upper - 1);
    std::vector<Rational> next(degree + 1);
    Rational inv_pow = 1;
    for (std::uint32_t j = 0; j <= a && j <= degree; ++j) {
      for (std::size_t w = 0; w < poly.size() && w + j <= degree; ++w) {
        if (poly[w] != 0) next[w + j] += poly[w] * inv_pow;
      }
      inv_pow /= p;
    }
    poly = std::move(next);
  }

  Rational sum = 0;
  for (std::size_t w = 0; w < poly.size(); ++w) {
    if (window.contains(static_cast<std::uint32_t>(w))) sum += poly[w];
  }
  return sum;
}

double log_of(const FactoredInteger& f) {
  if (f.is_one()) throw std::domain_error("log_of: F = 1 has log 0, unusable for log log");
  double acc = 0.0;
  for (const auto& [p, e] : f.factors()) acc += e * std::log(static_cast<double>(p));
  return acc;
}

}  // namespace freeset

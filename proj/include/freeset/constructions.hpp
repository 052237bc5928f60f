#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "freeset/arith.hpp"
#include "freeset/rational.hpp"
#include "freeset/residue_set.hpp"

namespace freeset {

/// Default ceiling on an explicitly materialized modulus: 2^23 bits, 1 MiB per set.
inline constexpr std::uint64_t kDefaultModulusCap = std::uint64_t{1} << 23;

class ModulusCapExceeded : public std::runtime_error {
 public:
  ModulusCapExceeded(const std::string& what_modulus, std::uint64_t cap);
};

/// {1, 3, ..., n - 1}. Throws std::invalid_argument for odd n.
ResidueSet odd_residues(std::uint64_t n);

struct BlowupReport {
  ResidueSet set{1};
  std::uint64_t n = 0;
  /// The least k with n <= 2^k < 2n.
  std::uint32_t k = 0;
  /// N = 2^(2k) * n.
  std::uint64_t big_n = 0;
  std::size_t size = 0;
  /// 2^k (2^(k+1) - 1) |A|.
  std::size_t expected_size = 0;
  bool count_identity_holds = false;
  /// |B| > (1 - 1/n) 2^(2k+1) |A|.
  bool lower_bound_holds = false;
  bool product_free = false;
};

/// The 2-adic blow-up of an odd, sum-free, product-free A mod even n:
/// B = {2^j b mod N : 0 <= j <= k, 1 <= b <= N / 2^j, b mod n in A}.
///
/// Throws std::invalid_argument when n is odd or A is not odd, sum-free and
/// product-free; ModulusCapExceeded when N exceeds `cap`.
BlowupReport blowup(const ResidueSet& a, std::uint64_t cap = kDefaultModulusCap);

/// Parameters of the lcm construction: l_x = lcm(1..x), n_x = l_x^2, and the
/// residues a mod n_x with gcd(a, n_x) an odd divisor d of l_x whose Omega(d)
/// lies strictly between k and 2k.
struct Section4Params {
  std::uint64_t x = 0;
  FactoredInteger ell;
  FactoredInteger n;
  std::uint32_t k = 0;
  bool k_overridden = false;
  /// log log n_x, kept so the floor that produced k can be audited.
  double log_log_n = 0.0;
  /// (e/4) log log n_x.
  double k_real = 0.0;
  OmegaWindow window;
  /// The admitted divisors, when materialized.
  std::optional<std::vector<FactoredInteger>> divisors;
};

/// Throws std::invalid_argument for x < 2 and DivisorCapExceeded when the
/// divisor list is requested and too large.
Section4Params section4_params(std::uint64_t x, std::optional<std::uint32_t> k_override = std::nullopt,
                               bool materialize_divisors = true,
                               std::size_t divisor_cap = kDefaultDivisorCap);

/// The explicit residue set. Throws ModulusCapExceeded when n_x > cap.
ResidueSet section4_set(const Section4Params& params, std::uint64_t cap = kDefaultModulusCap);

/// Exact density phi(n_x)/n_x * sum of 1/d over admitted d, without
/// enumerating residues or divisors.
Rational section4_density(const Section4Params& params);

}  // namespace freeset

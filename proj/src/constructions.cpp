#include "freeset/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace freeset {

ModulusCapExceeded::ModulusCapExceeded(const std::string& what_modulus, std::uint64_t cap)
    : std::runtime_error(what_modulus + " exceeds the explicit modulus cap " + std::to_string(cap)) {}

ResidueSet odd_residues(std::uint64_t n) {
  if (n % 2 != 0) throw std::invalid_argument("odd_residues: n must be even, got " + std::to_string(n));
  ResidueSet out(n);
  for (std::uint64_t r = 1; r < n; r += 2) out.insert(r);
  return out;
}

BlowupReport blowup(const ResidueSet& a, std::uint64_t cap) {
  const std::uint64_t n = a.modulus();
  if (n % 2 != 0) throw std::invalid_argument("blowup: modulus must be even, got " + std::to_string(n));
  bool all_odd = true;
  a.for_each([&](Residue r) { all_odd = all_odd && (r % 2 == 1); });
  if (!all_odd) throw std::invalid_argument("blowup: set must consist of odd residues");
  if (!is_sum_free(a)) throw std::invalid_argument("blowup: set must be sum-free");
  if (!is_product_free(a)) throw std::invalid_argument("blowup: set must be product-free");

  BlowupReport rep;
  rep.n = n;
  while ((std::uint64_t{1} << rep.k) < n) ++rep.k;
  const std::uint32_t k = rep.k;
  if (2 * k + std::bit_width(n) > 63 || (n << (2 * k)) > cap) {
    throw ModulusCapExceeded("blow-up modulus 2^" + std::to_string(2 * k) + "*" + std::to_string(n), cap);
  }
  const std::uint64_t big_n = n << (2 * k);
  rep.big_n = big_n;

  ResidueSet b(big_n);
  const auto members = a.members();
  for (std::uint32_t j = 0; j <= k; ++j) {
    const std::uint64_t limit = big_n >> j;
    for (std::uint64_t r : members) {
      for (std::uint64_t v = r; v <= limit; v += n) {
        if (v == 0) continue;
        b.insert((v << j) % big_n);
      }
    }
  }

  rep.size = b.cardinality();
  rep.expected_size = (std::size_t{1} << k) * ((std::size_t{1} << (k + 1)) - 1) * members.size();
  rep.count_identity_holds = rep.size == rep.expected_size;
  // |B| > (1 - 1/n) 2^(2k+1) |A|, multiplied through by n.
  const auto lhs = static_cast<unsigned __int128>(rep.size) * n;
  const auto rhs = static_cast<unsigned __int128>(n - 1) * (std::uint64_t{1} << (2 * k + 1)) * members.size();
  rep.lower_bound_holds = lhs > rhs;
  rep.product_free = is_product_free(b);
  rep.set = std::move(b);
  return rep;
}

Section4Params section4_params(std::uint64_t x, std::optional<std::uint32_t> k_override,
                               bool materialize_divisors, std::size_t divisor_cap) {
  if (x < 2) throw std::invalid_argument("section4_params: x must be at least 2");
  Section4Params p;
  p.x = x;
  p.ell = lcm_up_to(x);
  p.n = p.ell.squared();
  p.log_log_n = std::log(log_of(p.n));
  p.k_real = std::numbers::e / 4.0 * p.log_log_n;
  if (k_override) {
    p.k = *k_override;
    p.k_overridden = true;
  } else {
    p.k = static_cast<std::uint32_t>(std::max(0.0, std::floor(p.k_real)));
  }
  p.window = OmegaWindow::between(static_cast<int>(p.k));
  if (materialize_divisors) p.divisors = divisors_filtered(p.ell, true, p.window, divisor_cap);
  return p;
}

ResidueSet section4_set(const Section4Params& params, std::uint64_t cap) {
  const auto n = params.n.value();
  if (!n || *n > cap) throw ModulusCapExceeded("n_x = " + params.n.to_string(), cap);

  std::vector<std::uint64_t> admitted;
  const auto divisors = params.divisors ? *params.divisors : divisors_filtered(params.ell, true, params.window);
  for (const auto& d : divisors) admitted.push_back(*d.value());
  std::sort(admitted.begin(), admitted.end());

  ResidueSet out(*n);
  if (admitted.empty()) return out;
  for (std::uint64_t a = 0; a < *n; ++a) {
    if (std::binary_search(admitted.begin(), admitted.end(), std::gcd(a, *n))) out.insert(a);
  }
  return out;
}

Rational section4_density(const Section4Params& params) {
  return euler_phi_ratio(params.n) * omega_restricted_divisor_harmonic(params.ell, true, params.window);
}

}  // namespace freeset

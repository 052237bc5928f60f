#include "freeset/residue_set.hpp"

#include <algorithm>
#include <string>

namespace freeset {

namespace {

constexpr std::size_t words_for(std::uint64_t n) { return (n + kernels::kWordBits - 1) / kernels::kWordBits; }

void require_same_modulus(const ResidueSet& a, const ResidueSet& b) {
  if (a.modulus() != b.modulus()) throw ModulusMismatch(a.modulus(), b.modulus());
}

std::vector<std::uint64_t> divisors_ascending(std::uint64_t n) {
  std::vector<std::uint64_t> low, high;
  for (std::uint64_t d = 1; d <= n / d; ++d) {
    if (n % d != 0) continue;
    low.push_back(d);
    if (d != n / d) high.push_back(n / d);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

ResidueSet multiples_of(std::uint64_t h, std::uint64_t n) {
  ResidueSet out(n);
  for (std::uint64_t g = 0; g < n; g += h) out.insert(g);
  return out;
}

}  // namespace

ModulusMismatch::ModulusMismatch(std::uint64_t a, std::uint64_t b)
    : std::invalid_argument("modulus mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}

ResidueSet::ResidueSet(std::uint64_t n) : n_(n) {
  if (n == 0 || n > kMaxModulus) {
    throw std::invalid_argument("ResidueSet: modulus must be in [1, 2^31], got " + std::to_string(n));
  }
  words_.assign(words_for(n), 0);
}

ResidueSet ResidueSet::from_members(std::uint64_t n, std::span<const std::uint64_t> members) {
  ResidueSet out(n);
  for (auto r : members) out.insert(r);
  return out;
}

ResidueSet ResidueSet::from_members(std::uint64_t n, std::initializer_list<std::uint64_t> members) {
  return from_members(n, std::span<const std::uint64_t>(members.begin(), members.size()));
}

ResidueSet ResidueSet::full(std::uint64_t n) {
  ResidueSet out(n);
  std::fill(out.words_.begin(), out.words_.end(), ~Word{0});
  out.clear_tail();
  return out;
}

void ResidueSet::insert(std::uint64_t r) {
  if (r >= n_) {
    throw std::out_of_range("residue " + std::to_string(r) + " not below modulus " + std::to_string(n_));
  }
  words_[r / kernels::kWordBits] |= Word{1} << (r % kernels::kWordBits);
}

void ResidueSet::erase(std::uint64_t r) noexcept {
  if (r < n_) words_[r / kernels::kWordBits] &= ~(Word{1} << (r % kernels::kWordBits));
}

std::size_t ResidueSet::cardinality() const noexcept { return kernels::popcount(words_); }

bool ResidueSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

std::optional<Residue> ResidueSet::first() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w]) return static_cast<Residue>(w * kernels::kWordBits + std::countr_zero(words_[w]));
  }
  return std::nullopt;
}

std::vector<Residue> ResidueSet::members() const {
  std::vector<Residue> out;
  out.reserve(cardinality());
  for_each([&](Residue r) { out.push_back(r); });
  return out;
}

ResidueSet ResidueSet::rotated(std::uint64_t shift) const {
  ResidueSet out(n_);
  out.or_rotated(*this, shift);
  return out;
}

void ResidueSet::or_rotated(const ResidueSet& src, std::uint64_t shift) {
  require_same_modulus(*this, src);
  shift %= n_;
  if (shift == 0) {
    *this |= src;
    return;
  }
  // Bits [0, n - shift) move up by shift; bits [n - shift, n) wrap to the bottom.
  kernels::or_shift_left(words_, src.words_, shift);
  clear_tail();
  kernels::or_shift_right(words_, src.words_, n_ - shift);
}

ResidueSet ResidueSet::negated() const {
  ResidueSet out(n_);
  for_each([&](Residue r) { out.insert(r == 0 ? 0 : n_ - r); });
  return out;
}

ResidueSet& ResidueSet::operator|=(const ResidueSet& other) {
  require_same_modulus(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

ResidueSet& ResidueSet::operator&=(const ResidueSet& other) {
  require_same_modulus(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

ResidueSet& ResidueSet::subtract(const ResidueSet& other) {
  require_same_modulus(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

bool ResidueSet::intersects(const ResidueSet& other) const {
  require_same_modulus(*this, other);
  return kernels::intersects(words_, other.words_);
}

void ResidueSet::clear_tail() noexcept {
  const auto used = n_ % kernels::kWordBits;
  if (used != 0) words_.back() &= (Word{1} << used) - 1;
}

ResidueSet sumset(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a, b);
  const bool a_smaller = a.cardinality() <= b.cardinality();
  const ResidueSet& shifts = a_smaller ? a : b;
  const ResidueSet& base = a_smaller ? b : a;
  ResidueSet out(a.modulus());
  shifts.for_each([&](Residue s) { out.or_rotated(base, s); });
  return out;
}

ResidueSet productset(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a, b);
  const bool a_smaller = a.cardinality() <= b.cardinality();
  const auto outer = (a_smaller ? a : b).members();
  const auto inner = (a_smaller ? b : a).members();
  const std::uint64_t n = a.modulus();
  ResidueSet out(n);
  for (std::uint64_t x : outer) {
    for (std::uint64_t y : inner) out.insert((x * y) % n);
  }
  return out;
}

namespace detail {

bool is_sum_free_by_rotation(const ResidueSet& a) {
  ResidueSet shifted(a.modulus());
  bool free = true;
  a.for_each([&](Residue r) {
    if (!free) return;
    shifted.clear();
    shifted.or_rotated(a, r);
    if (shifted.intersects(a)) free = false;
  });
  return free;
}

bool is_sum_free_pairwise(const ResidueSet& a) {
  const auto m = a.members();
  const auto n = static_cast<std::uint32_t>(a.modulus());
  std::span<const Residue> all(m);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (kernels::any_sum_hit(m[i], all.subspan(i), n, a.words())) return false;
  }
  return true;
}

}  // namespace detail

bool is_sum_free(const ResidueSet& a) {
  // Pairwise costs |A|^2 / 2 lookups, rotation |A| passes over n / 64 words.
  if (a.cardinality() <= a.words().size()) return detail::is_sum_free_pairwise(a);
  return detail::is_sum_free_by_rotation(a);
}

bool is_product_free(const ResidueSet& a) {
  const auto m = a.members();
  const auto n = static_cast<std::uint32_t>(a.modulus());
  std::span<const Residue> all(m);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (kernels::any_product_hit(m[i], all.subspan(i), n, a.words())) return false;
  }
  return true;
}

Rational density(const ResidueSet& a) {
  return Rational(BigInt(a.cardinality()), BigInt(a.modulus()));
}

ResidueSet difference_classes(const ResidueSet& a) {
  const std::uint64_t n = a.modulus();
  ResidueSet out(n);
  a.for_each([&](Residue r) { out.or_rotated(a, (n - r) % n); });
  return out;
}

ResidueSet stabilizer(const ResidueSet& c) {
  const std::uint64_t n = c.modulus();
  const std::size_t size = c.cardinality();
  if (size == 0 || size == n) return ResidueSet::full(n);
  // H = <h> for the least h | n fixing C; C is then a union of cosets of
  // size n / h, so that must divide |C|.
  for (auto h : divisors_ascending(n)) {
    if (size % (n / h) != 0) continue;
    if (c.rotated(h) == c) return multiples_of(h, n);
  }
  return multiples_of(n, n);
}

std::optional<std::uint64_t> subgroup_test(const ResidueSet& s) {
  const std::uint64_t n = s.modulus();
  const std::size_t size = s.cardinality();
  if (size == 0 || n % size != 0) return std::nullopt;
  const std::uint64_t h = n / size;
  if (s == multiples_of(h, n)) return h;
  return std::nullopt;
}

ResidueSet project(const ResidueSet& a, std::uint64_t h) {
  if (h == 0 || a.modulus() % h != 0) {
    throw std::invalid_argument("project: " + std::to_string(h) + " does not divide " + std::to_string(a.modulus()));
  }
  ResidueSet out(h);
  a.for_each([&](Residue r) { out.insert(r % h); });
  return out;
}

ResidueSet lift(const ResidueSet& a, std::uint64_t n) {
  const std::uint64_t m = a.modulus();
  if (n == 0 || n % m != 0) {
    throw std::invalid_argument("lift: " + std::to_string(m) + " does not divide " + std::to_string(n));
  }
  ResidueSet out(n);
  a.for_each([&](Residue r) {
    for (std::uint64_t b = r; b < n; b += m) out.insert(b);
  });
  return out;
}

KneserReport kneser_check(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a, b);
  if (a.empty() || b.empty()) throw std::invalid_argument("kneser_check: sets must be nonempty");
  KneserReport rep;
  const ResidueSet c = sumset(a, b);
  rep.stabilizer = stabilizer(c);
  rep.size_a = a.cardinality();
  rep.size_b = b.cardinality();
  rep.size_c = c.cardinality();
  rep.size_h = rep.stabilizer.cardinality();
  rep.size_a_plus_h = sumset(a, rep.stabilizer).cardinality();
  rep.size_b_plus_h = sumset(b, rep.stabilizer).cardinality();
  const auto strong = static_cast<long long>(rep.size_a_plus_h + rep.size_b_plus_h) - static_cast<long long>(rep.size_h);
  const auto weak = static_cast<long long>(rep.size_a + rep.size_b) - static_cast<long long>(rep.size_h);
  rep.inequality_holds = static_cast<long long>(rep.size_c) >= strong;
  rep.weak_form_holds = strong >= weak;
  return rep;
}

}  // namespace freeset

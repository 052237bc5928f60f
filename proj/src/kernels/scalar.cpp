// Reference kernels. Straight loops; the AVX2 file is checked against these.

#include <algorithm>
#include <bit>

#include "freeset/kernels.hpp"

namespace freeset::kernels::scalar {

void or_shift_left(std::span<Word> dst, std::span<const Word> src, std::size_t shift) noexcept {
  const std::size_t q = shift / kWordBits;
  const unsigned r = shift % kWordBits;
  for (std::size_t w = dst.size(); w-- > q;) {
    const std::size_t s = w - q;
    Word v = 0;
    if (s < src.size()) v = src[s] << r;
    if (r != 0 && s >= 1 && s - 1 < src.size()) v |= src[s - 1] >> (kWordBits - r);
    dst[w] |= v;
  }
}

void or_shift_right(std::span<Word> dst, std::span<const Word> src, std::size_t shift) noexcept {
  const std::size_t q = shift / kWordBits;
  const unsigned r = shift % kWordBits;
  for (std::size_t w = 0; w < dst.size(); ++w) {
    const std::size_t s = w + q;
    if (s >= src.size()) break;
    Word v = src[s] >> r;
    if (r != 0 && s + 1 < src.size()) v |= src[s + 1] << (kWordBits - r);
    dst[w] |= v;
  }
}

bool intersects(std::span<const Word> a, std::span<const Word> b) noexcept {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] & b[i]) return true;
  }
  return false;
}

std::size_t popcount(std::span<const Word> words) noexcept {
  std::size_t total = 0;
  for (Word w : words) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

namespace {
inline bool test_bit(std::span<const Word> bits, std::uint64_t i) noexcept {
  return (bits[i / kWordBits] >> (i % kWordBits)) & 1u;
}
}  // namespace

bool any_sum_hit(std::uint32_t a, std::span<const std::uint32_t> members, std::uint32_t n,
                 std::span<const Word> bits) noexcept {
  for (std::uint32_t b : members) {
    std::uint64_t s = std::uint64_t{a} + b;
    if (s >= n) s -= n;
    if (test_bit(bits, s)) return true;
  }
  return false;
}

bool any_product_hit(std::uint32_t a, std::span<const std::uint32_t> members, std::uint32_t n,
                     std::span<const Word> bits) noexcept {
  for (std::uint32_t b : members) {
    if (test_bit(bits, (std::uint64_t{a} * b) % n)) return true;
  }
  return false;
}

}  // namespace freeset::kernels::scalar

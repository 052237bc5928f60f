// AVX2 variants. Compiled with -mavx2 only in this translation unit; callers
// reach these through the dispatcher after a cpuid check.

#include <immintrin.h>

#include <algorithm>
#include <bit>

#include "freeset/kernels.hpp"

namespace freeset::kernels::avx2 {

namespace {

inline __m256i load(const Word* p) noexcept {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}
inline void store(Word* p, __m256i v) noexcept {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

// Products must stay below 2^52 to be exact in a double.
constexpr std::uint32_t kMaxProductModulus = 1u << 26;

}  // namespace

void or_shift_left(std::span<Word> dst, std::span<const Word> src, std::size_t shift) noexcept {
  const std::size_t q = shift / kWordBits;
  const unsigned r = shift % kWordBits;
  auto one = [&](std::size_t w) {
    const std::size_t s = w - q;
    Word v = 0;
    if (s < src.size()) v = src[s] << r;
    if (r != 0 && s >= 1 && s - 1 < src.size()) v |= src[s - 1] >> (kWordBits - r);
    dst[w] |= v;
  };
  if (q >= dst.size()) return;
  std::size_t w = q;
  one(w++);
  // A count of 64 in the right shift yields zero lanes, which covers r == 0.
  const __m128i left = _mm_cvtsi32_si128(static_cast<int>(r));
  const __m128i right = _mm_cvtsi32_si128(static_cast<int>(kWordBits - r));
  for (; w + 4 <= dst.size() && w - q + 4 <= src.size(); w += 4) {
    const Word* s = src.data() + (w - q);
    __m256i v = _mm256_or_si256(_mm256_sll_epi64(load(s), left), _mm256_srl_epi64(load(s - 1), right));
    store(dst.data() + w, _mm256_or_si256(load(dst.data() + w), v));
  }
  for (; w < dst.size(); ++w) one(w);
}

void or_shift_right(std::span<Word> dst, std::span<const Word> src, std::size_t shift) noexcept {
  const std::size_t q = shift / kWordBits;
  const unsigned r = shift % kWordBits;
  const __m128i right = _mm_cvtsi32_si128(static_cast<int>(r));
  const __m128i left = _mm_cvtsi32_si128(static_cast<int>(kWordBits - r));
  std::size_t w = 0;
  for (; w + 4 <= dst.size() && w + q + 5 <= src.size(); w += 4) {
    const Word* s = src.data() + (w + q);
    __m256i v = _mm256_or_si256(_mm256_srl_epi64(load(s), right), _mm256_sll_epi64(load(s + 1), left));
    store(dst.data() + w, _mm256_or_si256(load(dst.data() + w), v));
  }
  for (; w < dst.size(); ++w) {
    const std::size_t s = w + q;
    if (s >= src.size()) break;
    Word v = src[s] >> r;
    if (r != 0 && s + 1 < src.size()) v |= src[s + 1] << (kWordBits - r);
    dst[w] |= v;
  }
}

bool intersects(std::span<const Word> a, std::span<const Word> b) noexcept {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    if (!_mm256_testz_si256(load(a.data() + i), load(b.data() + i))) return true;
  }
  for (; i < n; ++i) {
    if (a[i] & b[i]) return true;
  }
  return false;
}

std::size_t popcount(std::span<const Word> words) noexcept {
  // Nibble lookup with pshufb, horizontal byte sums with psadbw.
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words.size(); i += 4) {
    __m256i v = load(words.data() + i);
    __m256i lo = _mm256_shuffle_epi8(lut, _mm256_and_si256(v, low));
    __m256i hi = _mm256_shuffle_epi8(lut, _mm256_and_si256(_mm256_srli_epi16(v, 4), low));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(_mm256_add_epi8(lo, hi), _mm256_setzero_si256()));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::size_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < words.size(); ++i) total += static_cast<std::size_t>(std::popcount(words[i]));
  return total;
}

namespace {

// Nonzero lanes where bit `idx` of `bits` is set.
inline __m256i gather_bits(std::span<const Word> bits, __m256i idx) noexcept {
  __m256i word_idx = _mm256_srli_epi64(idx, 6);
  __m256i words = _mm256_i64gather_epi64(reinterpret_cast<const long long*>(bits.data()), word_idx, 8);
  __m256i bit = _mm256_and_si256(idx, _mm256_set1_epi64x(63));
  return _mm256_and_si256(_mm256_srlv_epi64(words, bit), _mm256_set1_epi64x(1));
}

inline bool test_bit(std::span<const Word> bits, std::uint64_t i) noexcept {
  return (bits[i / kWordBits] >> (i % kWordBits)) & 1u;
}

}  // namespace

bool any_sum_hit(std::uint32_t a, std::span<const std::uint32_t> members, std::uint32_t n,
                 std::span<const Word> bits) noexcept {
  const __m256i va = _mm256_set1_epi64x(a);
  const __m256i vn = _mm256_set1_epi64x(n);
  const __m256i vn_minus_1 = _mm256_set1_epi64x(static_cast<long long>(n) - 1);
  std::size_t i = 0;
  for (; i + 4 <= members.size(); i += 4) {
    __m256i b = _mm256_cvtepu32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(members.data() + i)));
    __m256i s = _mm256_add_epi64(va, b);
    s = _mm256_sub_epi64(s, _mm256_and_si256(_mm256_cmpgt_epi64(s, vn_minus_1), vn));
    __m256i hit = gather_bits(bits, s);
    if (!_mm256_testz_si256(hit, hit)) return true;
  }
  for (; i < members.size(); ++i) {
    std::uint64_t s = std::uint64_t{a} + members[i];
    if (s >= n) s -= n;
    if (test_bit(bits, s)) return true;
  }
  return false;
}

bool any_product_hit(std::uint32_t a, std::span<const std::uint32_t> members, std::uint32_t n,
                     std::span<const Word> bits) noexcept {
  std::size_t i = 0;
  if (n < kMaxProductModulus) {
    // Exact integers below 2^52 convert through the 2^52 exponent trick.
    const __m256i magic_bits = _mm256_set1_epi64x(0x4330000000000000LL);
    const __m256d magic = _mm256_set1_pd(4503599627370496.0);
    const __m256d inv_n = _mm256_set1_pd(1.0 / static_cast<double>(n));
    const __m256i va = _mm256_set1_epi64x(a);
    const __m256i vn = _mm256_set1_epi64x(n);
    const __m256i vn_minus_1 = _mm256_set1_epi64x(static_cast<long long>(n) - 1);
    const __m256i zero = _mm256_setzero_si256();
    for (; i + 4 <= members.size(); i += 4) {
      __m256i b = _mm256_cvtepu32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(members.data() + i)));
      __m256i p = _mm256_mul_epu32(va, b);
      __m256d pd = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(p, magic_bits)), magic);
      __m256d qd = _mm256_floor_pd(_mm256_mul_pd(pd, inv_n));
      __m256i qi = _mm256_xor_si256(_mm256_castpd_si256(_mm256_add_pd(qd, magic)), magic_bits);
      __m256i r = _mm256_sub_epi64(p, _mm256_mul_epu32(qi, vn));
      // The floating quotient is off by at most one in either direction.
      r = _mm256_add_epi64(r, _mm256_and_si256(_mm256_cmpgt_epi64(zero, r), vn));
      r = _mm256_sub_epi64(r, _mm256_and_si256(_mm256_cmpgt_epi64(r, vn_minus_1), vn));
      __m256i hit = gather_bits(bits, r);
      if (!_mm256_testz_si256(hit, hit)) return true;
    }
  }
  for (; i < members.size(); ++i) {
    if (test_bit(bits, (std::uint64_t{a} * members[i]) % n)) return true;
  }
  return false;
}

}  // namespace freeset::kernels::avx2

// Runtime selection between kernel backends. No intrinsics in this file.

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "freeset/kernels.hpp"

namespace freeset::kernels {

#ifndef FREESET_HAVE_AVX2
// Without the AVX2 translation unit the avx2 names forward to the reference.
namespace avx2 {
void or_shift_left(std::span<Word> d, std::span<const Word> s, std::size_t k) noexcept { scalar::or_shift_left(d, s, k); }
void or_shift_right(std::span<Word> d, std::span<const Word> s, std::size_t k) noexcept { scalar::or_shift_right(d, s, k); }
bool intersects(std::span<const Word> a, std::span<const Word> b) noexcept { return scalar::intersects(a, b); }
std::size_t popcount(std::span<const Word> w) noexcept { return scalar::popcount(w); }
bool any_sum_hit(std::uint32_t a, std::span<const std::uint32_t> m, std::uint32_t n, std::span<const Word> b) noexcept {
  return scalar::any_sum_hit(a, m, n, b);
}
bool any_product_hit(std::uint32_t a, std::span<const std::uint32_t> m, std::uint32_t n, std::span<const Word> b) noexcept {
  return scalar::any_product_hit(a, m, n, b);
}
}  // namespace avx2
#endif

namespace {

struct Table {
  decltype(&scalar::or_shift_left) or_shift_left;
  decltype(&scalar::or_shift_right) or_shift_right;
  decltype(&scalar::intersects) intersects;
  decltype(&scalar::popcount) popcount;
  decltype(&scalar::any_sum_hit) any_sum_hit;
  decltype(&scalar::any_product_hit) any_product_hit;
};

constexpr Table kScalar{scalar::or_shift_left, scalar::or_shift_right, scalar::intersects,
                        scalar::popcount,      scalar::any_sum_hit,    scalar::any_product_hit};
constexpr Table kAvx2{avx2::or_shift_left, avx2::or_shift_right, avx2::intersects,
                      avx2::popcount,      avx2::any_sum_hit,    avx2::any_product_hit};

const Table* table_for(Backend b) noexcept { return b == Backend::avx2 ? &kAvx2 : &kScalar; }

Backend initial_backend() noexcept {
  if (const char* env = std::getenv("FREESET_KERNELS")) {
    std::string v(env);
    if (v == "scalar") return Backend::scalar;
    if (v == "avx2" && backend_available(Backend::avx2)) return Backend::avx2;
  }
  return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() noexcept {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

inline const Table& table() noexcept { return *table_for(current().load(std::memory_order_relaxed)); }

}  // namespace

std::string_view backend_name(Backend b) noexcept { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool backend_available(Backend b) noexcept {
  if (b == Backend::scalar) return true;
#if defined(FREESET_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

void force_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::invalid_argument("kernel backend not available: " + std::string(backend_name(b)));
  }
  current().store(b, std::memory_order_relaxed);
}

void or_shift_left(std::span<Word> dst, std::span<const Word> src, std::size_t shift) noexcept {
  table().or_shift_left(dst, src, shift);
}
void or_shift_right(std::span<Word> dst, std::span<const Word> src, std::size_t shift) noexcept {
  table().or_shift_right(dst, src, shift);
}
bool intersects(std::span<const Word> a, std::span<const Word> b) noexcept { return table().intersects(a, b); }
std::size_t popcount(std::span<const Word> words) noexcept { return table().popcount(words); }
bool any_sum_hit(std::uint32_t a, std::span<const std::uint32_t> members, std::uint32_t n,
                 std::span<const Word> bits) noexcept {
  return table().any_sum_hit(a, members, n, bits);
}
bool any_product_hit(std::uint32_t a, std::span<const std::uint32_t> members, std::uint32_t n,
                     std::span<const Word> bits) noexcept {
  return table().any_product_hit(a, members, n, bits);
}

}  // namespace freeset::kernels

#pragma once

// Word-level kernels behind ResidueSet and the freeness checks. Every kernel
// has a scalar reference implementation; wider variants are selected at
// runtime from the CPU's feature set and must agree with the reference bit for
// bit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace freeset::kernels {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b) noexcept;

/// Compiled in and supported by the running CPU.
bool backend_available(Backend b) noexcept;

/// Best available backend, unless overridden by force_backend() or the
/// FREESET_KERNELS environment variable ("scalar" or "avx2").
Backend active_backend() noexcept;

/// Throws std::invalid_argument when the backend is not available.
void force_backend(Backend b);

// dst |= src << shift. Bits pushed past the end of dst are dropped.
void or_shift_left(std::span<Word> dst, std::span<const Word> src, std::size_t shift) noexcept;

// dst |= src >> shift.
void or_shift_right(std::span<Word> dst, std::span<const Word> src, std::size_t shift) noexcept;

bool intersects(std::span<const Word> a, std::span<const Word> b) noexcept;

std::size_t popcount(std::span<const Word> words) noexcept;

// True when (a + b) mod n is a set bit of `bits` for some b in `members`.
// All members and a are < n.
bool any_sum_hit(std::uint32_t a, std::span<const std::uint32_t> members, std::uint32_t n,
                 std::span<const Word> bits) noexcept;

// True when (a * b) mod n is a set bit of `bits` for some b in `members`.
bool any_product_hit(std::uint32_t a, std::span<const std::uint32_t> members, std::uint32_t n,
                     std::span<const Word> bits) noexcept;

// Per-backend entry points, exposed for equivalence testing.
namespace scalar {
void or_shift_left(std::span<Word> dst, std::span<const Word> src, std::size_t shift) noexcept;
void or_shift_right(std::span<Word> dst, std::span<const Word> src, std::size_t shift) noexcept;
bool intersects(std::span<const Word> a, std::span<const Word> b) noexcept;
std::size_t popcount(std::span<const Word> words) noexcept;
bool any_sum_hit(std::uint32_t a, std::span<const std::uint32_t> members, std::uint32_t n,
                 std::span<const Word> bits) noexcept;
bool any_product_hit(std::uint32_t a, std::span<const std::uint32_t> members, std::uint32_t n,
                     std::span<const Word> bits) noexcept;
}  // namespace scalar

namespace avx2 {
void or_shift_left(std::span<Word> dst, std::span<const Word> src, std::size_t shift) noexcept;
void or_shift_right(std::span<Word> dst, std::span<const Word> src, std::size_t shift) noexcept;
bool intersects(std::span<const Word> a, std::span<const Word> b) noexcept;
std::size_t popcount(std::span<const Word> words) noexcept;
bool any_sum_hit(std::uint32_t a, std::span<const std::uint32_t> members, std::uint32_t n,
                 std::span<const Word> bits) noexcept;
bool any_product_hit(std::uint32_t a, std::span<const std::uint32_t> members, std::uint32_t n,
                     std::span<const Word> bits) noexcept;
}  // namespace avx2

}  // namespace freeset::kernels

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "freeset/kernels.hpp"
#include "freeset/rational.hpp"

namespace freeset {

using Residue = std::uint32_t;

/// Largest supported modulus. Residues fit in 32 bits and products of two
/// residues in 64.
inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

class ModulusMismatch : public std::invalid_argument {
 public:
  ModulusMismatch(std::uint64_t a, std::uint64_t b);
};

/// A subset of Z/nZ stored as a bit array of n bits in 64-bit words. Bits at
/// index >= n are always zero.
class ResidueSet {
 public:
  using Word = kernels::Word;

  /// The empty subset of Z/nZ. Throws std::invalid_argument unless
  /// 1 <= n <= kMaxModulus.
  explicit ResidueSet(std::uint64_t n);

  static ResidueSet from_members(std::uint64_t n, std::span<const std::uint64_t> members);
  static ResidueSet from_members(std::uint64_t n, std::initializer_list<std::uint64_t> members);
  static ResidueSet full(std::uint64_t n);

  std::uint64_t modulus() const noexcept { return n_; }

  bool contains(std::uint64_t r) const noexcept {
    return r < n_ && ((words_[r / kernels::kWordBits] >> (r % kernels::kWordBits)) & 1u);
  }
  void insert(std::uint64_t r);
  void erase(std::uint64_t r) noexcept;
  void clear() noexcept { std::fill(words_.begin(), words_.end(), Word{0}); }

  std::size_t cardinality() const noexcept;
  bool empty() const noexcept;

  /// Smallest member, if any.
  std::optional<Residue> first() const noexcept;

  /// Members in ascending order.
  std::vector<Residue> members() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits) {
        f(static_cast<Residue>(w * kernels::kWordBits + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::span<const Word> words() const noexcept { return words_; }

  /// {r + shift mod n : r in this set}.
  ResidueSet rotated(std::uint64_t shift) const;
  /// this |= rotated(src, shift); moduli must match.
  void or_rotated(const ResidueSet& src, std::uint64_t shift);
  /// {-r mod n : r in this set}.
  ResidueSet negated() const;

  ResidueSet& operator|=(const ResidueSet& other);
  ResidueSet& operator&=(const ResidueSet& other);
  /// Removes every member of `other`.
  ResidueSet& subtract(const ResidueSet& other);

  bool intersects(const ResidueSet& other) const;

  friend bool operator==(const ResidueSet& a, const ResidueSet& b) noexcept {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

 private:
  void clear_tail() noexcept;

  std::uint64_t n_;
  std::vector<Word> words_;
};

/// A + B = {a + b mod n}, diagonal included.
ResidueSet sumset(const ResidueSet& a, const ResidueSet& b);

/// A * B = {a * b mod n}, diagonal included.
ResidueSet productset(const ResidueSet& a, const ResidueSet& b);

bool is_sum_free(const ResidueSet& a);
bool is_product_free(const ResidueSet& a);

/// |A| / n.
Rational density(const ResidueSet& a);

/// {a1 - a2 mod n : a1, a2 in A}.
ResidueSet difference_classes(const ResidueSet& a);

/// {g : g + C = C}, always a subgroup of Z/nZ.
ResidueSet stabilizer(const ResidueSet& c);

/// The generator h (h | n) when S is the subgroup <h> of Z/nZ. The trivial
/// subgroup {0} yields h = n.
std::optional<std::uint64_t> subgroup_test(const ResidueSet& s);

/// {a mod h : a in A}. Throws std::invalid_argument unless h | n.
ResidueSet project(const ResidueSet& a, std::uint64_t h);

/// {b mod n : b mod m in A}, the preimage of A under Z/nZ -> Z/mZ.
/// Throws std::invalid_argument unless m | n.
ResidueSet lift(const ResidueSet& a, std::uint64_t n);

struct KneserReport {
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  std::size_t size_c = 0;
  std::size_t size_a_plus_h = 0;
  std::size_t size_b_plus_h = 0;
  std::size_t size_h = 0;
  ResidueSet stabilizer{1};
  /// |C| >= |A+H| + |B+H| - |H|.
  bool inequality_holds = false;
  /// |A+H| + |B+H| - |H| >= |A| + |B| - |H|.
  bool weak_form_holds = false;
};

/// Evaluates Kneser's inequality for C = A + B with H the stabilizer of C.
/// Throws std::invalid_argument for empty inputs or mismatched moduli.
KneserReport kneser_check(const ResidueSet& a, const ResidueSet& b);

namespace detail {
// The two sum-freeness strategies is_sum_free chooses between.
bool is_sum_free_by_rotation(const ResidueSet& a);
bool is_sum_free_pairwise(const ResidueSet& a);
}  // namespace detail

}  // namespace freeset

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace canopy {

/// Element of the direct sum of countably many copies of Z_b, identified with
/// a leaf of the canopy tree. Coordinate i >= 1 labels the edge between
/// heights i-1 and i on the leaf's upward path and is stored at digits()[i-1].
/// Canonical form drops trailing zeros, so the stored length equals ell(),
/// the index of the last nonzero coordinate; the empty sequence is the
/// identity (the distinguished leaf v0).
class LeafAddress {
 public:
  LeafAddress() = default;

  /// Canonicalizes (strips trailing zeros). Throws std::invalid_argument on a
  /// digit >= b.
  static LeafAddress from_digits(std::vector<std::uint8_t> digits, int b);

  int ell() const { return static_cast<int>(digits_.size()); }
  bool is_identity() const { return digits_.empty(); }

  /// 1-based coordinate; coordinates beyond the stored length are zero.
  std::uint8_t digit(int i) const {
    return (i >= 1 && i <= ell()) ? digits_[static_cast<std::size_t>(i) - 1] : 0;
  }

  const std::vector<std::uint8_t>& digits() const { return digits_; }

  /// Textual form "d1.d2.....dk"; the identity prints as "0".
  std::string to_string() const;
  static LeafAddress parse(const std::string& text, int b);

  friend bool operator==(const LeafAddress&, const LeafAddress&) = default;
  friend auto operator<=>(const LeafAddress&, const LeafAddress&) = default;

  struct Hash {
    std::size_t operator()(const LeafAddress& a) const noexcept;
  };

 private:
  std::vector<std::uint8_t> digits_;
};

/// Componentwise addition mod b.
LeafAddress group_add(const LeafAddress& x, const LeafAddress& y, int b);

/// Digitwise negation mod b (identity map for b = 2).
LeafAddress group_inverse(const LeafAddress& x, int b);

/// Height of the lowest common ancestor of two distinct leaves: the largest
/// coordinate at which they differ. Tree distance is twice this value.
/// Throws std::invalid_argument when x == y.
int lca_height(const LeafAddress& x, const LeafAddress& y);

/// Number of leaves y != x with lca_height(x, y) == k, namely (b-1) b^(k-1).
/// Independent of x. Throws std::invalid_argument when k < 1.
std::uint64_t count_leaves_at_lca_height(int k, int b);

/// Mapping between addresses with ell <= n and leaf indices 0..b^n-1 of the
/// height-n tree: coordinate i is the i-th base-b digit of the index,
/// least significant first.
std::uint64_t leaf_index(const LeafAddress& a, int n, int b);
LeafAddress leaf_from_index(std::uint64_t index, int b);

/// lca height for two distinct leaf indices of the same tree.
int lca_height_index(std::uint64_t x, std::uint64_t y, int b);

inline std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace canopy

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace simjoin {

inline constexpr int kMaxDim = 64;

/// Mask with the low `dim` bits set.
constexpr std::uint64_t dim_mask(int dim) noexcept {
  return dim >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << dim) - 1;
}

/// A vertex of {0,1}^d packed into one machine word. Coordinate i is bit i;
/// bits at positions >= dim are always zero.
class BitPoint {
 public:
  BitPoint(std::uint64_t bits, int dim);

  static BitPoint zero(int dim) { return BitPoint(0, dim); }

  std::uint64_t bits() const noexcept { return bits_; }
  int dim() const noexcept { return dim_; }
  bool coordinate(int i) const noexcept { return (bits_ >> i) & 1u; }
  int weight() const noexcept;

  /// XOR translation; throws DimensionMismatch.
  BitPoint operator^(const BitPoint& other) const;

  /// Binary string, most significant coordinate (dim-1) first.
  std::string to_string() const;
  static BitPoint parse(std::string_view text);

  friend bool operator==(const BitPoint&, const BitPoint&) = default;
  friend auto operator<=>(const BitPoint& a, const BitPoint& b) {
    if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  std::uint64_t bits_;
  int dim_;
};

std::string format_word(std::uint64_t bits, int dim);

/// Sorted, duplicate-free set of points of one dimension.
class PointSet {
 public:
  explicit PointSet(int dim);
  /// Sorts and deduplicates; throws if a word has bits beyond `dim`.
  PointSet(int dim, std::vector<std::uint64_t> words);

  static PointSet from_points(int dim, std::span<const BitPoint> points);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  BitPoint operator[](std::size_t i) const { return BitPoint(words_[i], dim_); }
  bool contains(std::uint64_t word) const;
  bool contains(const BitPoint& p) const;

  auto begin() const noexcept { return words_.begin(); }
  auto end() const noexcept { return words_.end(); }

  /// {a xor t : a in A}
  PointSet translated(std::uint64_t t) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  int dim_;
  std::vector<std::uint64_t> words_;
};

void check_dim(int dim);

}  // namespace simjoin

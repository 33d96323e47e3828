#include "simjoin/bit_point.hpp"

#include <algorithm>
#include <bit>

#include "simjoin/errors.hpp"

namespace simjoin {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw PreconditionError("dimension must be in [1, 64], got " + std::to_string(dim));
  }
}

BitPoint::BitPoint(std::uint64_t bits, int dim) : bits_(bits), dim_(dim) {
  check_dim(dim);
  if (bits & ~dim_mask(dim)) {
    throw PreconditionError("point has bits set beyond dimension " + std::to_string(dim));
  }
}

int BitPoint::weight() const noexcept { return std::popcount(bits_); }

BitPoint BitPoint::operator^(const BitPoint& other) const {
  if (dim_ != other.dim_) throw DimensionMismatch("xor of points with different dimensions");
  return BitPoint(bits_ ^ other.bits_, dim_);
}

std::string format_word(std::uint64_t bits, int dim) {
  std::string out(static_cast<std::size_t>(dim), '0');
  for (int i = 0; i < dim; ++i) {
    if ((bits >> i) & 1u) out[static_cast<std::size_t>(dim - 1 - i)] = '1';
  }
  return out;
}

std::string BitPoint::to_string() const { return format_word(bits_, dim_); }

BitPoint BitPoint::parse(std::string_view text) {
  const int dim = static_cast<int>(text.size());
  check_dim(dim);
  std::uint64_t bits = 0;
  for (char c : text) {
    if (c != '0' && c != '1') throw PreconditionError("binary string contains '" + std::string(1, c) + "'");
    bits = (bits << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return BitPoint(bits, dim);
}

PointSet::PointSet(int dim) : dim_(dim) { check_dim(dim); }

PointSet::PointSet(int dim, std::vector<std::uint64_t> words) : dim_(dim), words_(std::move(words)) {
  check_dim(dim);
  const std::uint64_t mask = dim_mask(dim);
  for (auto w : words_) {
    if (w & ~mask) throw PreconditionError("point has bits set beyond dimension " + std::to_string(dim));
  }
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

PointSet PointSet::from_points(int dim, std::span<const BitPoint> points) {
  std::vector<std::uint64_t> words;
  words.reserve(points.size());
  for (const auto& p : points) {
    if (p.dim() != dim) throw DimensionMismatch("point dimension differs from set dimension");
    words.push_back(p.bits());
  }
  return PointSet(dim, std::move(words));
}

bool PointSet::contains(std::uint64_t word) const {
  return std::binary_search(words_.begin(), words_.end(), word);
}

bool PointSet::contains(const BitPoint& p) const {
  if (p.dim() != dim_) throw DimensionMismatch("membership query with wrong dimension");
  return contains(p.bits());
}

PointSet PointSet::translated(std::uint64_t t) const {
  if (t & ~dim_mask(dim_)) throw PreconditionError("translation has bits beyond dimension");
  std::vector<std::uint64_t> out(words_.begin(), words_.end());
  for (auto& w : out) w ^= t;
  return PointSet(dim_, std::move(out));
}

}  // namespace simjoin

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>

namespace vgraph {

template <typename Scalar>
using PointT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Point = PointT<double>;
using Integrand = std::function<double(const Point&)>;

/// Largest number of generators a vertex can carry (d + 1).
inline constexpr int kMaxGenerators = 16;
inline constexpr int kMaxDim = kMaxGenerators - 1;

/// Relative tolerance for equidistance of a vertex to its generators.
inline constexpr double kTolVertex = 1e-8;
/// Relative gap below which a competing generator makes a vertex degenerate.
inline constexpr double kTolDegenerate = 1e-10;

// Errors ---------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define VGRAPH_DEFINE_ERROR(Name) \
  class Name : public Error {     \
   public:                        \
    using Error::Error;           \
  }

VGRAPH_DEFINE_ERROR(DimensionMismatch);
VGRAPH_DEFINE_ERROR(DuplicatePoint);
VGRAPH_DEFINE_ERROR(DegenerateConfiguration);
VGRAPH_DEFINE_ERROR(ParallelGenerator);
VGRAPH_DEFINE_ERROR(RetryExhausted);
VGRAPH_DEFINE_ERROR(UnboundedCell);
VGRAPH_DEFINE_ERROR(UnboundedFace);
VGRAPH_DEFINE_ERROR(MissingCache);
VGRAPH_DEFINE_ERROR(MissingNeighbor);
VGRAPH_DEFINE_ERROR(OrderViolation);
VGRAPH_DEFINE_ERROR(InvalidArgument);

#undef VGRAPH_DEFINE_ERROR

/// A ray leaving a cell center escaped to infinity.
class UnboundedRay : public Error {
 public:
  UnboundedRay(const std::string& what, Point direction)
      : Error(what), direction_(std::move(direction)) {}
  const Point& direction() const { return direction_; }

 private:
  Point direction_;
};

// IndexSet -------------------------------------------------------------------

/// Sorted set of at most kMaxGenerators distinct generator indices.
///
/// Used both for vertex keys (sigma, d + 1 entries) and edge keys (eta, d
/// entries). Stored inline so the hash maps of the graph traversal do not
/// allocate per key.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<int> ids) {
    for (int id : ids) insert(id);
  }
  explicit IndexSet(std::span<const int> ids) {
    for (int id : ids) insert(id);
  }

  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  int operator[](int k) const { return ids_[k]; }
  const int* begin() const { return ids_.data(); }
  const int* end() const { return ids_.data() + size_; }

  bool contains(int id) const { return std::binary_search(begin(), end(), id); }

  /// Inserts id keeping the order; no-op if present.
  void insert(int id) {
    auto* pos = std::lower_bound(ids_.data(), ids_.data() + size_, id);
    if (pos != ids_.data() + size_ && *pos == id) return;
    if (size_ == kMaxGenerators) throw InvalidArgument("IndexSet capacity exceeded");
    std::move_backward(pos, ids_.data() + size_, ids_.data() + size_ + 1);
    *pos = id;
    ++size_;
  }

  IndexSet with(int id) const {
    IndexSet out = *this;
    out.insert(id);
    return out;
  }

  IndexSet without(int id) const {
    IndexSet out;
    for (int v : *this)
      if (v != id) out.ids_[out.size_++] = v;
    return out;
  }

  bool is_subset_of(const IndexSet& other) const {
    return std::includes(other.begin(), other.end(), begin(), end());
  }

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.size_ == b.size_ && std::equal(a.begin(), a.end(), b.begin());
  }
  friend bool operator<(const IndexSet& a, const IndexSet& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(size_);
    for (int v : *this) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xbf58476d1ce4e5b9ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }

 private:
  std::array<int, kMaxGenerators> ids_{};
  int size_ = 0;
};

struct IndexSetHash {
  std::size_t operator()(const IndexSet& s) const { return s.hash(); }
};

std::string to_string(const IndexSet& s);

}  // namespace vgraph

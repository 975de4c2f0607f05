#pragma once

#include "vgraph/types.hpp"

#include <concepts>
#include <limits>
#include <optional>
#include <vector>

namespace vgraph {

struct Neighbor {
  int index = -1;
  double distance = 0.0;
};

/// Squared distance in a fixed summation order, shared by every search path
/// so the kd-tree and the scans compare bitwise-identical values.
inline double squared_distance(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) {
    double t = a[k] - b[k];
    s += t * t;
  }
  return s;
}

// Skip predicates -------------------------------------------------------------
//
// A skip predicate receives a node index and its coordinates and returns true
// for nodes that must not be reported. Predicates that can also reject whole
// bounding boxes expose skips_box(), which the kd-tree uses for pruning.

template <class S>
concept SkipPredicate = requires(const S& s, int i, const double* x) {
  { s(i, x) } -> std::convertible_to<bool>;
};

template <class S>
concept BoxSkipPredicate =
    SkipPredicate<S> && requires(const S& s, const double* lo, const double* hi) {
      { s.skips_box(lo, hi) } -> std::convertible_to<bool>;
    };

struct NoSkip {
  bool operator()(int, const double*) const { return false; }
};

/// Adapts a plain predicate on the node index.
template <class F>
struct IndexSkip {
  F pred;
  bool operator()(int i, const double*) const { return pred(i); }
};
template <class F>
IndexSkip(F) -> IndexSkip<F>;

/// Skips every node with <x, u> <= threshold, i.e. keeps the open halfspace
/// in front of a ray.
class HalfspaceSkip {
 public:
  HalfspaceSkip(const Point& normal, double threshold)
      : normal_(normal), threshold_(threshold) {}

  bool operator()(int, const double* x) const {
    double s = 0.0;
    for (Eigen::Index k = 0; k < normal_.size(); ++k) s += normal_[k] * x[k];
    return s <= threshold_;
  }

  bool skips_box(const double* lo, const double* hi) const {
    double s = 0.0;
    for (Eigen::Index k = 0; k < normal_.size(); ++k)
      s += normal_[k] > 0.0 ? normal_[k] * hi[k] : normal_[k] * lo[k];
    return s <= threshold_;
  }

  const Point& normal() const { return normal_; }
  double threshold() const { return threshold_; }

 private:
  Point normal_;
  double threshold_;
};

// KdTree ------------------------------------------------------------------------

/// Static kd-tree over a d x N column matrix with skip-filtered nearest
/// neighbor queries. Ties are broken towards the smallest node index.
class KdTree {
 public:
  KdTree() = default;
  explicit KdTree(const Eigen::MatrixXd& columns, int leaf_size = 8);

  template <SkipPredicate Skip>
  std::optional<Neighbor> nearest(const double* q, const Skip& skip) const {
    Best best;
    if (!nodes_.empty()) search(0, q, skip, best);
    if (best.index < 0) return std::nullopt;
    return Neighbor{best.index, std::sqrt(best.dist2)};
  }

 private:
  struct Node {
    int begin = 0;
    int end = 0;
    int left = -1;
    int right = -1;
  };
  struct Best {
    double dist2 = std::numeric_limits<double>::infinity();
    int index = -1;
  };

  int build(int begin, int end, int leaf_size);

  double box_dist2(int node, const double* q) const {
    const double* lo = &lo_[static_cast<std::size_t>(node) * dim_];
    const double* hi = &hi_[static_cast<std::size_t>(node) * dim_];
    double s = 0.0;
    for (int k = 0; k < dim_; ++k) {
      double g = q[k] < lo[k] ? lo[k] - q[k] : (q[k] > hi[k] ? q[k] - hi[k] : 0.0);
      s += g * g;
    }
    return s;
  }

  template <class Skip>
  void search(int node, const double* q, const Skip& skip, Best& best) const {
    const Node& n = nodes_[node];
    if constexpr (BoxSkipPredicate<Skip>) {
      if (skip.skips_box(&lo_[static_cast<std::size_t>(node) * dim_],
                         &hi_[static_cast<std::size_t>(node) * dim_]))
        return;
    }
    if (n.left < 0) {
      for (int p = n.begin; p < n.end; ++p) {
        const double* x = &coords_[static_cast<std::size_t>(p) * dim_];
        int id = ids_[p];
        double s = squared_distance(x, q, dim_);
        if (s > best.dist2 || (s == best.dist2 && id > best.index)) continue;
        if (skip(id, x)) continue;
        best.dist2 = s;
        best.index = id;
      }
      return;
    }
    double dl = box_dist2(n.left, q);
    double dr = box_dist2(n.right, q);
    int first = n.left, second = n.right;
    if (dr < dl) {
      std::swap(first, second);
      std::swap(dl, dr);
    }
    if (dl <= best.dist2) search(first, q, skip, best);
    if (dr <= best.dist2) search(second, q, skip, best);
  }

  int dim_ = 0;
  std::vector<double> coords_;  // permuted, row per point
  std::vector<int> ids_;
  std::vector<Node> nodes_;
  std::vector<double> lo_, hi_;
};

// NodeSet -----------------------------------------------------------------------

/// The generator points with a nearest-neighbor index. Immutable once built.
class NodeSet {
 public:
  NodeSet() = default;
  /// Throws DimensionMismatch, DuplicatePoint, InvalidArgument.
  explicit NodeSet(const std::vector<Point>& points);
  explicit NodeSet(Eigen::MatrixXd columns);

  int size() const { return static_cast<int>(points_.cols()); }
  int dim() const { return static_cast<int>(points_.rows()); }
  const Eigen::MatrixXd& points() const { return points_; }
  auto point(int i) const { return points_.col(i); }
  const double* data(int i) const { return points_.col(i).data(); }

  template <SkipPredicate Skip>
  std::optional<Neighbor> nearest(const Point& q, const Skip& skip) const {
    return tree_.nearest(q.data(), skip);
  }
  std::optional<Neighbor> nearest(const Point& q) const { return nearest(q, NoSkip{}); }

  /// Linear scan with the same contract as nearest(); the reference oracle.
  template <SkipPredicate Skip>
  std::optional<Neighbor> nearest_scan(const Point& q, const Skip& skip) const {
    int best = -1;
    double best2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < size(); ++i) {
      double s = squared_distance(data(i), q.data(), dim());
      if (s >= best2) continue;
      if (skip(i, data(i))) continue;
      best2 = s;
      best = i;
    }
    if (best < 0) return std::nullopt;
    return Neighbor{best, std::sqrt(best2)};
  }

  /// Coordinates of the generators listed in ids, one column each.
  Eigen::MatrixXd gather(const IndexSet& ids) const;

 private:
  void validate() const;

  Eigen::MatrixXd points_;
  KdTree tree_;
};

/// Generates n points uniform in [0,1]^d from stream (seed, "points").
NodeSet uniform_cube(int d, int n, std::uint64_t seed);

// Neighbor sources ----------------------------------------------------------------
//
// The raycast only needs a halfspace-filtered nearest neighbor query. Sources
// decide which nodes are candidates and how the search runs.

class NeighborSource {
 public:
  virtual ~NeighborSource() = default;
  virtual const NodeSet& nodes() const = 0;
  virtual std::optional<Neighbor> nearest(const Point& q, const HalfspaceSkip& skip) const = 0;
};

class KdTreeSource final : public NeighborSource {
 public:
  explicit KdTreeSource(const NodeSet& nodes) : nodes_(nodes) {}
  const NodeSet& nodes() const override { return nodes_; }
  std::optional<Neighbor> nearest(const Point& q, const HalfspaceSkip& skip) const override {
    return nodes_.nearest(q, skip);
  }

 private:
  const NodeSet& nodes_;
};

class ScanSource final : public NeighborSource {
 public:
  explicit ScanSource(const NodeSet& nodes) : nodes_(nodes) {}
  const NodeSet& nodes() const override { return nodes_; }
  std::optional<Neighbor> nearest(const Point& q, const HalfspaceSkip& skip) const override {
    return nodes_.nearest_scan(q, skip);
  }

 private:
  const NodeSet& nodes_;
};

/// Restricts candidates to a fixed index list (e.g. the known neighbors of a
/// cell) and scans them.
class SubsetSource final : public NeighborSource {
 public:
  SubsetSource(const NodeSet& nodes, std::vector<int> candidates);
  const NodeSet& nodes() const override { return nodes_; }
  std::optional<Neighbor> nearest(const Point& q, const HalfspaceSkip& skip) const override;

 private:
  const NodeSet& nodes_;
  std::vector<int> candidates_;
};

}  // namespace vgraph

#include "vgraph/node_set.hpp"

#include "vgraph/rng.hpp"

#include <numeric>
#include <sstream>

namespace vgraph {

std::string to_string(const IndexSet& s) {
  std::ostringstream os;
  os << '{';
  for (int k = 0; k < s.size(); ++k) os << (k ? "," : "") << s[k];
  os << '}';
  return os.str();
}

KdTree::KdTree(const Eigen::MatrixXd& columns, int leaf_size)
    : dim_(static_cast<int>(columns.rows())) {
  const int n = static_cast<int>(columns.cols());
  if (n == 0) return;
  ids_.resize(n);
  std::iota(ids_.begin(), ids_.end(), 0);
  coords_.resize(static_cast<std::size_t>(n) * dim_);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < dim_; ++k) coords_[static_cast<std::size_t>(i) * dim_ + k] = columns(k, i);
  nodes_.reserve(2 * (n / leaf_size + 1));
  build(0, n, std::max(1, leaf_size));

  // Reorder coordinates to follow the permuted ids.
  std::vector<double> sorted(coords_.size());
  for (int p = 0; p < n; ++p)
    for (int k = 0; k < dim_; ++k)
      sorted[static_cast<std::size_t>(p) * dim_ + k] = columns(k, ids_[p]);
  coords_ = std::move(sorted);
}

int KdTree::build(int begin, int end, int leaf_size) {
  const int node = static_cast<int>(nodes_.size());
  nodes_.push_back({begin, end, -1, -1});
  lo_.resize(lo_.size() + dim_);
  hi_.resize(hi_.size() + dim_);

  // ids_ holds original indices; coords_ is still in original order here.
  auto coord = [&](int id, int k) { return coords_[static_cast<std::size_t>(id) * dim_ + k]; };
  double* lo = &lo_[static_cast<std::size_t>(node) * dim_];
  double* hi = &hi_[static_cast<std::size_t>(node) * dim_];
  for (int k = 0; k < dim_; ++k) {
    lo[k] = std::numeric_limits<double>::infinity();
    hi[k] = -std::numeric_limits<double>::infinity();
  }
  for (int p = begin; p < end; ++p)
    for (int k = 0; k < dim_; ++k) {
      lo[k] = std::min(lo[k], coord(ids_[p], k));
      hi[k] = std::max(hi[k], coord(ids_[p], k));
    }
  if (end - begin <= leaf_size) return node;

  int axis = 0;
  double spread = -1.0;
  for (int k = 0; k < dim_; ++k)
    if (hi[k] - lo[k] > spread) {
      spread = hi[k] - lo[k];
      axis = k;
    }
  const int mid = begin + (end - begin) / 2;
  std::nth_element(ids_.begin() + begin, ids_.begin() + mid, ids_.begin() + end,
                   [&](int a, int b) {
                     double ca = coord(a, axis), cb = coord(b, axis);
                     return ca < cb || (ca == cb && a < b);
                   });
  const int left = build(begin, mid, leaf_size);
  const int right = build(mid, end, leaf_size);
  nodes_[node].left = left;
  nodes_[node].right = right;
  return node;
}

NodeSet::NodeSet(const std::vector<Point>& points) {
  if (points.empty()) throw InvalidArgument("empty point set");
  const auto d = points.front().size();
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].size() != d)
      throw DimensionMismatch("point " + std::to_string(i) + " has dimension " +
                              std::to_string(points[i].size()) + ", expected " +
                              std::to_string(d));
  points_.resize(d, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) points_.col(static_cast<Eigen::Index>(i)) = points[i];
  validate();
  tree_ = KdTree(points_);
}

NodeSet::NodeSet(Eigen::MatrixXd columns) : points_(std::move(columns)) {
  validate();
  tree_ = KdTree(points_);
}

void NodeSet::validate() const {
  const int d = dim();
  const int n = size();
  if (d < 2) throw DimensionMismatch("points must have at least two coordinates");
  if (d > kMaxDim) throw InvalidArgument("dimension " + std::to_string(d) + " exceeds maximum " +
                                         std::to_string(kMaxDim));
  if (n < d + 1)
    throw InvalidArgument("need at least d+1 = " + std::to_string(d + 1) + " points, got " +
                          std::to_string(n));
  if (!points_.allFinite()) throw InvalidArgument("non-finite coordinate");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](int a, int b) {
    for (int k = 0; k < d; ++k) {
      if (points_(k, a) != points_(k, b)) return points_(k, a) < points_(k, b);
    }
    return false;
  };
  std::sort(order.begin(), order.end(), less);
  for (int p = 1; p < n; ++p)
    if (!less(order[p - 1], order[p]))
      throw DuplicatePoint("points " + std::to_string(std::min(order[p - 1], order[p])) + " and " +
                           std::to_string(std::max(order[p - 1], order[p])) + " coincide");
}

Eigen::MatrixXd NodeSet::gather(const IndexSet& ids) const {
  Eigen::MatrixXd out(dim(), ids.size());
  for (int k = 0; k < ids.size(); ++k) out.col(k) = points_.col(ids[k]);
  return out;
}

NodeSet uniform_cube(int d, int n, std::uint64_t seed) {
  auto rng = make_stream(seed, "points");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd pts(d, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) pts(k, i) = unif(rng);
  return NodeSet(std::move(pts));
}

SubsetSource::SubsetSource(const NodeSet& nodes, std::vector<int> candidates)
    : nodes_(nodes), candidates_(std::move(candidates)) {
  std::sort(candidates_.begin(), candidates_.end());
  candidates_.erase(std::unique(candidates_.begin(), candidates_.end()), candidates_.end());
}

std::optional<Neighbor> SubsetSource::nearest(const Point& q, const HalfspaceSkip& skip) const {
  int best = -1;
  double best2 = std::numeric_limits<double>::infinity();
  for (int i : candidates_) {
    double s = squared_distance(nodes_.data(i), q.data(), nodes_.dim());
    if (s >= best2) continue;
    if (skip(i, nodes_.data(i))) continue;
    best2 = s;
    best = i;
  }
  if (best < 0) return std::nullopt;
  return Neighbor{best, std::sqrt(best2)};
}

}  // namespace vgraph

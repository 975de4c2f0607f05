#include "vgraph/raycast.hpp"

#include <Eigen/LU>
#include <limits>
#include <vector>

namespace vgraph {

namespace {

constexpr double kHalfspaceSlack = 1e-12;
constexpr double kAffineTol = 1e-10;

std::vector<Point> span_basis(const NodeSet& nodes, const IndexSet& ids) {
  std::vector<Point> basis;
  if (ids.size() < 2) return basis;
  const auto x0 = nodes.point(ids[0]);
  for (int k = 1; k < ids.size(); ++k) {
    Point v = nodes.point(ids[k]) - x0;
    const double scale = v.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v -= b.dot(v) * b;
    const double n = v.norm();
    if (n < kAffineTol * scale)
      throw DegenerateConfiguration("generators " + to_string(ids) + " are affinely dependent");
    basis.push_back(v / n);
  }
  return basis;
}

}  // namespace

Point project_out_span(const NodeSet& nodes, const IndexSet& ids, Point v) {
  const auto basis = span_basis(nodes, ids);
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) v -= b.dot(v) * b;
  return v;
}

Point search_direction(const NodeSet& nodes, const IndexSet& sigma, const IndexSet& eta) {
  if (!eta.is_subset_of(sigma) || sigma.size() != eta.size() + 1)
    throw InvalidArgument("edge " + to_string(eta) + " is not a facet of " + to_string(sigma));
  int extra = -1;
  for (int g : sigma)
    if (!eta.contains(g)) extra = g;
  Point v = nodes.point(extra) - nodes.point(eta[0]);
  const double scale = v.norm();
  v = project_out_span(nodes, eta, std::move(v));
  const double n = v.norm();
  if (n < kAffineTol * scale)
    throw DegenerateConfiguration("vertex " + to_string(sigma) + " has affinely dependent generators");
  return -v / n;
}

Point circumcenter(const NodeSet& nodes, const IndexSet& sigma) {
  const int d = nodes.dim();
  if (sigma.size() != d + 1) throw InvalidArgument("circumcenter needs d + 1 generators");
  const auto x0 = nodes.point(sigma[0]);
  Eigen::MatrixXd a(d, d);
  Eigen::VectorXd b(d);
  for (int k = 0; k < d; ++k) {
    a.row(k) = (nodes.point(sigma[k + 1]) - x0).transpose();
    b[k] = 0.5 * a.row(k).squaredNorm();
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible())
    throw DegenerateConfiguration("generators " + to_string(sigma) + " are affinely dependent");
  Eigen::VectorXd y = lu.solve(b);
  y += lu.solve(b - a * y);
  return x0 + y;
}

Point initial_heuristic(const RayQuery& q, const Point& x) {
  const double k = static_cast<double>(q.eta.size());
  Point r = q.r + q.u * q.u.dot(x - q.r);
  const double radius = (r - x).norm();
  r += q.u * (radius / std::sqrt((k - 1.0) * (k + 1.0)));
  return r;
}

HalfspaceSkip forward_halfspace(const NodeSet& nodes, const RayQuery& q) {
  double top = -std::numeric_limits<double>::infinity();
  double scale = 1.0;
  for (int g : q.eta) {
    const double s = q.u.dot(nodes.point(g));
    top = std::max(top, s);
    scale = std::max(scale, std::abs(s));
  }
  return HalfspaceSkip(q.u, top + kHalfspaceSlack * scale);
}

std::optional<RayHit> raycast_incircle(const NeighborSource& source, const RayQuery& q,
                                       RaycastStats& stats, RaycastOptions options) {
  const NodeSet& nodes = source.nodes();
  const Point x0 = nodes.point(q.eta[0]);
  const HalfspaceSkip skip = forward_halfspace(nodes, q);

  const Point start =
      (options.heuristic && q.eta.size() == nodes.dim()) ? initial_heuristic(q, x0) : q.r;
  ++stats.nn_calls;
  auto hit = source.nearest(start, skip);
  if (!hit) return std::nullopt;
  int i = hit->index;

  double last_t = std::numeric_limits<double>::infinity();
  for (;;) {
    ++stats.iterations;
    const Point x = nodes.point(i);
    // Solved from the ray origin: a far previous candidate would cancel badly.
    const double t = project_t(q.r, q.u, x0, x);
    // Termination witness: t strictly decreases.
    if (!(t < last_t))
      throw DegenerateConfiguration("raycast from " + to_string(q.eta) + " did not advance");
    last_t = t;
    const Point candidate = q.r + t * q.u;

    ++stats.nn_calls;
    auto next = source.nearest(candidate, skip);
    if (!next) return std::nullopt;
    if (next->index == i) {
      const IndexSet sigma = q.eta.with(i);
      if (sigma.size() == nodes.dim() + 1) {
        Point c = circumcenter(nodes, sigma);
        const double tc = q.u.dot(c - q.r);
        return RayHit{sigma, std::move(c), tc};
      }
      return RayHit{sigma, candidate, t};
    }

    const double radius = (candidate - x).norm();
    if (next->distance >= radius * (1.0 - kTolDegenerate))
      throw DegenerateConfiguration("generators " + std::to_string(i) + " and " +
                                    std::to_string(next->index) + " are cospherical with " +
                                    to_string(q.eta));
    i = next->index;
  }
}

std::optional<RayHit> raycast_bisection(const NeighborSource& source, const RayQuery& q,
                                        double eps, RaycastStats& stats) {
  if (!(eps > 0.0)) throw InvalidArgument("bisection tolerance must be positive");
  const NodeSet& nodes = source.nodes();
  const Point x0 = nodes.point(q.eta[0]);
  const HalfspaceSkip skip = forward_halfspace(nodes, q);

  ++stats.nn_calls;
  auto first = source.nearest(q.r, skip);
  if (!first) return std::nullopt;
  const double step = first->distance;

  // True when some forward node is closer to r + t u than the eta generators.
  int owner = -1;
  auto overshoots = [&](double t) {
    ++stats.nn_calls;
    ++stats.iterations;
    const Point p = q.r + t * q.u;
    auto nb = source.nearest(p, skip);
    if (!nb) return false;
    if (nb->distance < (p - x0).norm()) {
      owner = nb->index;
      return true;
    }
    return false;
  };

  const double limit = std::ldexp(step, 60);
  double lo = 0.0;
  double hi = step;
  while (!overshoots(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > limit) return std::nullopt;
  }
  int hi_owner = owner;
  while (hi - lo > eps) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;  // bracket below double resolution
    if (overshoots(mid)) {
      hi = mid;
      hi_owner = owner;
    } else {
      lo = mid;
    }
  }
  const double t = 0.5 * (lo + hi);
  return RayHit{q.eta.with(hi_owner), q.r + t * q.u, t};
}

}  // namespace vgraph

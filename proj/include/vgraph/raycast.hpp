#pragma once

#include "vgraph/node_set.hpp"

#include <cmath>
#include <cstdint>
#include <optional>

namespace vgraph {

/// A ray r + t u, t > 0, leaving a point equidistant to the generators eta.
/// u is a unit vector orthogonal to the affine span of those generators.
struct RayQuery {
  IndexSet eta;
  Point r;
  Point u;
};

struct RaycastStats {
  std::uint64_t nn_calls = 0;
  std::uint64_t iterations = 0;
};

/// Result of a successful raycast. t is the ray parameter of r relative to
/// the query start point.
struct RayHit {
  IndexSet sigma;
  Point r;
  double t = 0.0;
};

/// Ray parameter at which r + t u is equidistant to x0 and x.
///
/// Throws ParallelGenerator when x - x0 is (numerically) orthogonal to u.
template <class R, class U, class X0, class X>
typename R::Scalar project_t(const Eigen::MatrixBase<R>& r, const Eigen::MatrixBase<U>& u,
                             const Eigen::MatrixBase<X0>& x0, const Eigen::MatrixBase<X>& x) {
  using Scalar = typename R::Scalar;
  const Scalar denom = u.dot(x - x0);
  if (std::abs(denom) < Scalar(1e-14) * (x - x0).norm())
    throw ParallelGenerator("generator lies in the search hyperplane");
  return ((r - x).squaredNorm() - (r - x0).squaredNorm()) / (Scalar(2) * denom);
}

/// Point equidistant to the d + 1 generators sigma, solved relative to the
/// first one with one step of iterative refinement.
Point circumcenter(const NodeSet& nodes, const IndexSet& sigma);

/// Warm start for a vertex search (|eta| = d): moves r into the hyperplane of
/// the eta generators and then along u by the height a regular simplex would
/// have over that face. x is any generator of eta.
Point initial_heuristic(const RayQuery& q, const Point& x);

/// Forward halfspace filter of a query: keeps nodes strictly in front of the
/// hyperplane of the eta generators.
HalfspaceSkip forward_halfspace(const NodeSet& nodes, const RayQuery& q);

struct RaycastOptions {
  bool heuristic = true;
};

/// Exact incircle raycast. Returns the first point on the ray equidistant to
/// eta and one further generator with no generator strictly closer, or
/// nothing if the ray escapes to infinity.
std::optional<RayHit> raycast_incircle(const NeighborSource& source, const RayQuery& q,
                                       RaycastStats& stats, RaycastOptions options = {});

/// Bisection baseline: exponential bracketing of t followed by bisection until
/// the bracket is narrower than eps. Every probe is one nearest neighbor call.
std::optional<RayHit> raycast_bisection(const NeighborSource& source, const RayQuery& q,
                                        double eps, RaycastStats& stats);

/// Unit direction of the edge eta leaving vertex sigma, pointing away from the
/// generator sigma \ eta.
Point search_direction(const NodeSet& nodes, const IndexSet& sigma, const IndexSet& eta);

/// Removes from v its component in the span of the differences of the
/// generators ids (modified Gram-Schmidt). Throws DegenerateConfiguration if
/// the generators are affinely dependent.
Point project_out_span(const NodeSet& nodes, const IndexSet& ids, Point v);

}  // namespace vgraph

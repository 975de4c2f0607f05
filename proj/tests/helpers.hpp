#pragma once

#include "vgraph/graph.hpp"
#include "vgraph/rng.hpp"

#include <random>
#include <vector>

namespace vgraph::test {

inline Point vec(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) p[k++] = x;
  return p;
}

inline NodeSet nodes_of(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<Point> pts;
  for (auto r : rows) pts.push_back(vec(r));
  return NodeSet(pts);
}

/// x_0 at the origin with neighbors (+-1, 0), (0, +-1): cell 0 is [-1/2, 1/2]^2.
inline NodeSet unit_square_nodes() {
  return nodes_of({{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}});
}

inline Point random_point(int d, RngStream& rng, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Point p(d);
  for (int k = 0; k < d; ++k) p[k] = u(rng);
  return p;
}

inline Eigen::MatrixXd random_matrix(int d, RngStream& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = u(rng);
  return a;
}

}  // namespace vgraph::test

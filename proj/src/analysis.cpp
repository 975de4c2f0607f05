#include "vgraph/analysis.hpp"

#include <cmath>
#include <numbers>

namespace vgraph {

double vertex_bound_closed_form(int D) {
  if (D < 2 || D > 40) throw InvalidArgument("bound dimension out of range");
  const double k = D;
  const double a = k * k / 2.0;
  const double b = 0.5;
  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double log_c = std::log(2.0) + k / 2.0 * std::log(std::numbers::pi) + (k - 1.0) * std::log(k) -
                       std::log(k * (k + 1.0)) - log_beta +
                       k * (std::lgamma(k / 2.0) - std::lgamma((k + 1.0) / 2.0));
  return std::exp(log_c);
}

double expected_vertices_lower_bound(int d) {
  if (d < 2 || d > 30) throw InvalidArgument("dimension must lie in [2, 30]");
  return vertex_bound_closed_form(d + 1);
}

ScalingStats empirical_scaling(const Mesh& mesh) {
  ScalingStats s;
  const int n = mesh.num_cells();
  s.vertices = mesh.vertices().size();
  double verts = 0.0, nbrs = 0.0, bverts = 0.0, bnbrs = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = mesh.cell_vertices(i).size();
    const double nb = mesh.neighbors(i).size();
    verts += v;
    nbrs += nb;
    if (mesh.is_bounded(i)) {
      ++s.bounded_cells;
      bverts += v;
      bnbrs += nb;
    }
  }
  s.vertices_per_cell = verts / n;
  s.neighbors_per_cell = nbrs / n;
  if (s.bounded_cells > 0) {
    s.bounded_vertices_per_cell = bverts / s.bounded_cells;
    s.bounded_neighbors_per_cell = bnbrs / s.bounded_cells;
  }
  return s;
}

}  // namespace vgraph

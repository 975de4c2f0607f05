#pragma once

#include "vgraph/mesh.hpp"

namespace vgraph {

/// Lower bound on the expected number of vertices per cell for uniform nodes
/// in R^d (n -> infinity), from the closed form
///
///   C(D) = 2 pi^{D/2} D^{D-1} / (D (D+1)) * B(D^2/2, 1/2)^{-1}
///          * (Gamma(D/2) / Gamma((D+1)/2))^D
///
/// evaluated in log-gamma arithmetic. The tabulated reference values for
/// dimension d are reproduced by D = d + 1 (the same closed form at D = 2
/// gives 2, the vertex count of a 1-dimensional cell).
double expected_vertices_lower_bound(int d);

/// The closed form above at its own argument D, without the shift.
double vertex_bound_closed_form(int D);

struct ScalingStats {
  double vertices_per_cell = 0.0;
  double neighbors_per_cell = 0.0;
  /// Same averages restricted to bounded cells.
  double bounded_vertices_per_cell = 0.0;
  double bounded_neighbors_per_cell = 0.0;
  int bounded_cells = 0;
  std::size_t vertices = 0;
};

ScalingStats empirical_scaling(const Mesh& mesh);

}  // namespace vgraph

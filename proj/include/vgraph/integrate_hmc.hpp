#pragma once

#include "vgraph/integrate_mc.hpp"
#include "vgraph/mesh.hpp"

#include <map>
#include <vector>

namespace vgraph {

/// Pyramid-sum volume (1/d) sum_j |x_i - x_j|/2 * A_ij.
/// Throws MissingNeighbor if a mesh neighbor of i has no entry in areas.
double hmc_volume(const Mesh& mesh, int i, const std::map<int, double>& areas);

/// Vertex-averaged interface rule
///   d/(d+1) * mean_k f(v_k) * A + 1/(d+1) * f(y) * A
/// with v_k the vertices of interface (i, j) and y their centroid.
/// Throws UnboundedFace.
double hmc_interface_integral(const Mesh& mesh, int i, int j, double area, const Integrand& f);

/// Cone rule with apex x_i applied once over all interfaces:
///   sum_j h_j/d * (d/(d+1) * F_ij + 1/(d+1) * f(x_i) * A_ij),  h_j = |x_i - x_j|/2.
double hmc_cell_integral(const Mesh& mesh, int i, const Integrand& f,
                         const std::map<int, double>& areas);

/// Full heuristic result for a cell from given areas.
CellIntegrals hmc_integrate_cell(const Mesh& mesh, int i, const Integrand& f,
                                 const std::map<int, double>& areas);

/// Runs the Monte-Carlo area pass for the given bounded cells and applies the
/// heuristic rules. Neighbors missed by every ray get area 0.
std::vector<CellIntegrals> hmc_integrate_cells(const Mesh& mesh, const std::vector<int>& cells,
                                               const Integrand& f, const McOptions& options);

}  // namespace vgraph

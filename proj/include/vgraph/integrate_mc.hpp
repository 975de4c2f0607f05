#pragma once

#include "vgraph/mesh.hpp"
#include "vgraph/rng.hpp"

#include <map>
#include <vector>

namespace vgraph {

/// Volume, interface areas and integrals of one cell.
///
/// Maps are keyed by neighbor index and ordered, so serialization is stable.
struct CellIntegrals {
  int cell = -1;
  double volume = 0.0;
  /// Standard error of the volume estimate (0 for exact methods).
  double volume_stderr = 0.0;
  std::map<int, double> area;
  std::map<int, double> area_stderr;
  std::map<int, double> surface_integral;
  double volume_integral = 0.0;
  int n_rays = 0;
  int m_subsamples = 0;
  bool exact = false;
};

/// Uniform direction on S^{d-1} from a normalized Gaussian draw.
Point sample_unit_sphere(int d, RngStream& rng);

/// Surface area 2 pi^{d/2} / Gamma(d/2) of the unit sphere in R^d.
template <typename Scalar = double>
Scalar sphere_surface_area(int d) {
  using std::pow, std::tgamma;
  const Scalar pi = Scalar(3.141592653589793238462643383279502884L);
  return Scalar(2) * pow(pi, Scalar(d) / Scalar(2)) / tgamma(Scalar(d) / Scalar(2));
}

/// Monte-Carlo estimate of volume, interface areas, interface integrals and
/// the volume integral of f for cell i using n rays from x_i and m radial
/// subsamples per ray.
///
/// Throws UnboundedRay when a ray leaves the cell through infinity.
CellIntegrals mc_integrate_cell(const NeighborSource& source, int i, const Integrand& f, int n,
                                int m, RngStream& rng);

/// Same rays as mc_integrate_cell without evaluating any integrand.
CellIntegrals mc_areas_only(const NeighborSource& source, int i, int n, RngStream& rng);

struct McOptions {
  int rays = 1000;
  int subsamples = 2;
  std::uint64_t seed = 0;
  /// With a mesh, restrict the raycast search to the known neighbors.
  bool known_neighbors = true;
  int threads = 1;
};

/// Runs mc_integrate_cell (or mc_areas_only when f is empty) over cells,
/// each with its own stream (seed, "mc", cell). Results follow cells order.
std::vector<CellIntegrals> mc_integrate_cells(const Mesh& mesh, const std::vector<int>& cells,
                                              const Integrand& f, const McOptions& options);

/// Mesh-free variant over a node set (no neighbor restriction).
std::vector<CellIntegrals> mc_integrate_cells(const NodeSet& nodes, const std::vector<int>& cells,
                                              const Integrand& f, const McOptions& options);

}  // namespace vgraph

#pragma once

#include "vgraph/integrate_mc.hpp"
#include "vgraph/mesh.hpp"

#include <map>
#include <utility>
#include <vector>

namespace vgraph {

struct FaceIntegral {
  double area = 0.0;
  double integral = 0.0;
};

/// Interface areas and integrals produced while integrating the lower-index
/// cell of each pair, keyed by (min(i, j), max(i, j)).
class AreaCache {
 public:
  void store(int i, int j, FaceIntegral face) { faces_[key(i, j)] = face; }
  const FaceIntegral* find(int i, int j) const {
    auto it = faces_.find(key(i, j));
    return it == faces_.end() ? nullptr : &it->second;
  }
  std::size_t size() const { return faces_.size(); }

 private:
  static std::pair<int, int> key(int i, int j) { return {std::min(i, j), std::max(i, j)}; }
  std::map<std::pair<int, int>, FaceIntegral> faces_;
};

/// Exact volume, interface areas and the exact integral of the piecewise
/// linear interpolant of f (on vertices, face centroids and x_i) for a
/// bounded cell, by recursive simplex decomposition.
///
/// With a cache, faces towards lower-index bounded neighbors are taken from
/// it and faces towards higher-index neighbors are stored in it, so cells
/// must be processed in ascending order. Without a cache every face is
/// computed from this side.
///
/// Throws UnboundedCell, MissingCache.
CellIntegrals integrate_cell_poly(const Mesh& mesh, int i, const Integrand& f,
                                  AreaCache* cache = nullptr);

/// Integrates the given cells in ascending order sharing one cache.
std::vector<CellIntegrals> integrate_cells_poly(const Mesh& mesh, std::vector<int> cells,
                                                const Integrand& f, bool use_cache = true);

/// Largest distance between two vertices of cell i.
double cell_diameter(const Mesh& mesh, int i);

struct ErrorBounds {
  double absolute = 0.0;
  double relative = 0.0;
};

/// Taylor bounds |C| sup|f''| diam^2 and sup|f''| diam^2 / inf|f| for the
/// interpolation error of integrate_cell_poly.
ErrorBounds poly_error_bounds(const Mesh& mesh, int i, double sup_second_derivative,
                              double inf_abs_value);

}  // namespace vgraph

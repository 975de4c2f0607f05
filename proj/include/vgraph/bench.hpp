#pragma once

#include "vgraph/graph.hpp"
#include "vgraph/integrate_mc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vgraph {

// Raycast efficiency -------------------------------------------------------------

struct RaycastBench {
  int dim = 0;
  int n = 0;
  RaycastMethod method = RaycastMethod::incircle_heuristic;
  double eps = 0.0;
  std::uint64_t nn_calls = 0;
  std::uint64_t raycasts = 0;
  std::size_t vertices = 0;
  double calls_per_vertex = 0.0;
  double seconds = 0.0;
  /// Vertex count of the exact diagram, filled for the bisection method.
  std::optional<std::size_t> reference_vertices;
  /// Bisection found a different vertex count than the exact search.
  bool spurious_vertices = false;
};

/// Builds the full diagram of n uniform points in [0,1]^d with the given
/// raycast and reports nearest neighbor calls per vertex.
RaycastBench bench_raycast(int d, int n, RaycastMethod method, double eps, std::uint64_t seed);

// Wall-clock scaling -----------------------------------------------------------------

struct ScalingRow {
  int n = 0;
  double seconds = 0.0;
  std::size_t vertices = 0;
};

std::vector<ScalingRow> bench_scaling(int d, const std::vector<int>& sizes, std::uint64_t seed);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Integration accuracy -----------------------------------------------------------------

struct BinStats {
  int rays = 0;
  /// Area-fraction bin in percent: covers [bin %, bin + 1 %).
  int bin = 0;
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

/// Relative deviation (A_mc - A_exact) / A_exact of cube-cell interfaces,
/// binned by the exact area fraction A_ij / sum_j A_ij, per ray count.
std::vector<BinStats> bench_area_accuracy(int d, int n, const std::vector<int>& rays_list, int bins,
                                          std::uint64_t seed, int threads = 1);

enum class IntegrationMethod { mc, poly, hmc };

std::string to_string(IntegrationMethod m);
IntegrationMethod parse_integration_method(const std::string& name);

struct FaceDeviation {
  int cell = 0;
  int neighbor = 0;
  double fraction = 0.0;
  /// 1 + 2 (I1 - I2) / (I1 + I2)
  double deviation = 1.0;
};

struct IntegralComparison {
  std::vector<FaceDeviation> faces;
  std::vector<BinStats> bins;
};

struct ComparisonOptions {
  int rays = 1000;
  int subsamples = 2;
  int bins = 30;
  int threads = 1;
};

/// Interface integrals of f by two methods on the cube cells of one
/// diagram. Monte-Carlo based methods share their rays.
IntegralComparison bench_integral_comparison(int d, int n, IntegrationMethod first,
                                             IntegrationMethod second, const Integrand& f,
                                             std::uint64_t seed,
                                             const ComparisonOptions& options = {});

/// Cells of the mesh that are bounded, ascending.
std::vector<int> bounded_cells(const Mesh& mesh);

/// Bounded cells with every vertex in [0,1]^d, i.e. cells a restriction to
/// the unit cube leaves unchanged. The accuracy benchmarks run on these.
std::vector<int> cube_cells(const Mesh& mesh);

/// Groups values by integer bin and reports mean and sample std per bin.
std::vector<BinStats> bin_statistics(const std::vector<std::pair<int, double>>& binned, int rays);

}  // namespace vgraph

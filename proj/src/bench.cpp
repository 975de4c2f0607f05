#include "vgraph/bench.hpp"

#include "vgraph/integrate_hmc.hpp"
#include "vgraph/integrate_poly.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

namespace vgraph {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int fraction_bin(double fraction, int bins) {
  const int b = static_cast<int>(std::floor(fraction * 100.0));
  return (b >= 1 && b <= bins) ? b : -1;
}

}  // namespace

RaycastBench bench_raycast(int d, int n, RaycastMethod method, double eps, std::uint64_t seed) {
  const NodeSet nodes = uniform_cube(d, n, seed);
  RaycastBench out;
  out.dim = d;
  out.n = n;
  out.method = method;
  out.eps = method == RaycastMethod::bisection ? eps : 0.0;

  GraphOptions options;
  options.method = method;
  options.eps = eps;
  GraphStats stats;
  const auto start = std::chrono::steady_clock::now();
  const Mesh mesh = voronoi_graph(nodes, seed, options, &stats);
  out.seconds = seconds_since(start);
  out.nn_calls = stats.raycast.nn_calls;
  out.raycasts = stats.raycasts + stats.descent_raycasts;
  out.vertices = mesh.vertices().size();
  out.calls_per_vertex = out.vertices ? static_cast<double>(out.nn_calls) / out.vertices : 0.0;

  if (method == RaycastMethod::bisection) {
    const Mesh exact = voronoi_graph(nodes, seed, {});
    out.reference_vertices = exact.vertices().size();
    out.spurious_vertices = *out.reference_vertices != out.vertices;
  }
  return out;
}

std::vector<ScalingRow> bench_scaling(int d, const std::vector<int>& sizes, std::uint64_t seed) {
  std::vector<ScalingRow> rows;
  for (int n : sizes) {
    const NodeSet nodes = uniform_cube(d, n, seed);
    const auto start = std::chrono::steady_clock::now();
    const Mesh mesh = voronoi_graph(nodes, seed);
    rows.push_back({n, seconds_since(start), mesh.vertices().size()});
  }
  return rows;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += std::log(x[k]);
    my += std::log(y[k]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = std::log(x[k]) - mx;
    sxy += dx * (std::log(y[k]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

std::vector<int> bounded_cells(const Mesh& mesh) {
  std::vector<int> cells;
  for (int i = 0; i < mesh.num_cells(); ++i)
    if (mesh.is_bounded(i)) cells.push_back(i);
  return cells;
}

std::vector<int> cube_cells(const Mesh& mesh) {
  std::vector<int> cells;
  for (int i : bounded_cells(mesh)) {
    const auto& ids = mesh.cell_vertices(i);
    if (std::all_of(ids.begin(), ids.end(), [&](int v) {
          const auto& r = mesh.vertices()[v].r;
          return (r.array() >= 0.0).all() && (r.array() <= 1.0).all();
        }))
      cells.push_back(i);
  }
  return cells;
}

std::vector<BinStats> bin_statistics(const std::vector<std::pair<int, double>>& binned, int rays) {
  std::map<int, std::vector<double>> groups;
  for (const auto& [bin, value] : binned) groups[bin].push_back(value);
  std::vector<BinStats> out;
  for (const auto& [bin, values] : groups) {
    BinStats s;
    s.rays = rays;
    s.bin = bin;
    s.count = values.size();
    for (double v : values) s.mean += v;
    s.mean /= values.size();
    if (values.size() > 1) {
      double ss = 0.0;
      for (double v : values) ss += (v - s.mean) * (v - s.mean);
      s.stddev = std::sqrt(ss / (values.size() - 1));
    }
    out.push_back(s);
  }
  return out;
}

std::vector<BinStats> bench_area_accuracy(int d, int n, const std::vector<int>& rays_list, int bins,
                                          std::uint64_t seed, int threads) {
  const NodeSet nodes = uniform_cube(d, n, seed);
  const Mesh mesh = voronoi_graph(nodes, seed);
  const auto cells = cube_cells(mesh);
  const Integrand zero = [](const Point&) { return 0.0; };
  const auto exact = integrate_cells_poly(mesh, cells, zero);

  std::vector<BinStats> out;
  for (int rays : rays_list) {
    McOptions options;
    options.rays = rays;
    options.seed = seed;
    options.threads = threads;
    const auto mc = mc_integrate_cells(mesh, cells, Integrand{}, options);
    std::vector<std::pair<int, double>> binned;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      double total = 0.0;
      for (const auto& [j, a] : exact[k].area) total += a;
      for (const auto& [j, a] : exact[k].area) {
        const int bin = fraction_bin(a / total, bins);
        if (bin < 0 || a <= 0.0) continue;
        auto it = mc[k].area.find(j);
        const double estimate = it == mc[k].area.end() ? 0.0 : it->second;
        binned.emplace_back(bin, (estimate - a) / a);
      }
    }
    auto stats = bin_statistics(binned, rays);
    out.insert(out.end(), stats.begin(), stats.end());
  }
  return out;
}

std::string to_string(IntegrationMethod m) {
  switch (m) {
    case IntegrationMethod::mc: return "mc";
    case IntegrationMethod::poly: return "poly";
    case IntegrationMethod::hmc: return "hmc";
  }
  return "unknown";
}

IntegrationMethod parse_integration_method(const std::string& name) {
  if (name == "mc" || name == "MC") return IntegrationMethod::mc;
  if (name == "poly" || name == "P" || name == "p") return IntegrationMethod::poly;
  if (name == "hmc" || name == "HMC") return IntegrationMethod::hmc;
  throw InvalidArgument("unknown integration method '" + name + "'");
}

IntegralComparison bench_integral_comparison(int d, int n, IntegrationMethod first,
                                             IntegrationMethod second, const Integrand& f,
                                             std::uint64_t seed,
                                             const ComparisonOptions& options) {
  const NodeSet nodes = uniform_cube(d, n, seed);
  const Mesh mesh = voronoi_graph(nodes, seed);
  const auto cells = cube_cells(mesh);

  McOptions mc;
  mc.rays = options.rays;
  mc.subsamples = options.subsamples;
  mc.seed = seed;
  mc.threads = options.threads;
  std::map<IntegrationMethod, std::vector<CellIntegrals>> results;
  for (auto method : {first, second}) {
    if (results.count(method)) continue;
    switch (method) {
      case IntegrationMethod::mc: results[method] = mc_integrate_cells(mesh, cells, f, mc); break;
      case IntegrationMethod::poly: results[method] = integrate_cells_poly(mesh, cells, f); break;
      case IntegrationMethod::hmc: results[method] = hmc_integrate_cells(mesh, cells, f, mc); break;
    }
  }
  const auto& a = results.at(first);
  const auto& b = results.at(second);

  IntegralComparison out;
  std::vector<std::pair<int, double>> binned;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    double total = 0.0;
    for (const auto& [j, area] : a[k].area) total += area;
    for (const auto& [j, i1] : a[k].surface_integral) {
      auto it = b[k].surface_integral.find(j);
      if (it == b[k].surface_integral.end()) continue;
      const double i2 = it->second;
      if (i1 + i2 == 0.0) continue;
      FaceDeviation face;
      face.cell = cells[k];
      face.neighbor = j;
      face.fraction = total > 0.0 ? a[k].area.at(j) / total : 0.0;
      face.deviation = 1.0 + 2.0 * (i1 - i2) / (i1 + i2);
      out.faces.push_back(face);
      const int bin = fraction_bin(face.fraction, options.bins);
      if (bin > 0) binned.emplace_back(bin, face.deviation);
    }
  }
  out.bins = bin_statistics(binned, options.rays);
  return out;
}

}  // namespace vgraph

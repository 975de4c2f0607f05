#include "vgraph/integrate_mc.hpp"

#include "vgraph/parallel.hpp"
#include "vgraph/raycast.hpp"

#include <cmath>
#include <memory>

namespace vgraph {

Point sample_unit_sphere(int d, RngStream& rng) {
  if (d < 1) throw InvalidArgument("sphere dimension must be positive");
  std::normal_distribution<double> normal;
  Point y(d);
  double norm = 0.0;
  while (norm == 0.0) {
    for (int k = 0; k < d; ++k) y[k] = normal(rng);
    norm = y.norm();
  }
  return y / norm;
}

namespace {

struct FaceAccumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  double integral = 0.0;
};

CellIntegrals run_mc(const NeighborSource& source, int i, const Integrand* f, int n, int m,
                     RngStream& rng) {
  if (n < 1) throw InvalidArgument("need at least one ray");
  if (f && m < 1) throw InvalidArgument("need at least one radial subsample");
  const NodeSet& nodes = source.nodes();
  const int d = nodes.dim();
  const Point xi = nodes.point(i);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  // Child stream for the radial draws; ray directions are independent of f and m.
  RngStream radial(rng());

  std::map<int, FaceAccumulator> faces;
  double vol_sum = 0.0, vol_sq = 0.0, fv_sum = 0.0;
  RaycastStats stats;
  for (int k = 0; k < n; ++k) {
    Point y = sample_unit_sphere(d, rng);
    auto hit = raycast_incircle(source, {IndexSet{i}, xi, y}, stats);
    if (!hit) throw UnboundedRay("ray from cell " + std::to_string(i) + " is unbounded", y);
    const int j = hit->sigma[0] == i ? hit->sigma[1] : hit->sigma[0];
    const double l = (hit->r - xi).norm();
    const Point normal = (nodes.point(j) - xi).normalized();
    const double lpow = std::pow(l, d - 1);
    const double w = lpow / normal.dot(y);
    const double v = lpow * l;

    auto& face = faces[j];
    face.sum += w;
    face.sum_sq += w * w;
    vol_sum += v;
    vol_sq += v * v;
    if (f) {
      face.integral += (*f)(hit->r) * w;
      // t ~ d t^{d-1} absorbs the radial Jacobian.
      double ray_sum = 0.0;
      for (int s = 0; s < m; ++s) {
        const double t = std::pow(unif(radial), 1.0 / d);
        ray_sum += (*f)(xi + t * (hit->r - xi));
      }
      fv_sum += (ray_sum / m) * v;
    }
  }

  const double sphere = sphere_surface_area(d);
  const double dn = static_cast<double>(n);
  CellIntegrals out;
  out.cell = i;
  out.n_rays = n;
  out.m_subsamples = f ? m : 0;
  out.volume = sphere / (d * dn) * vol_sum;
  auto stderr_of = [&](double sum, double sum_sq) {
    if (n < 2) return 0.0;
    const double mean = sum / dn;
    const double var = std::max(0.0, (sum_sq / dn - mean * mean) * dn / (dn - 1.0));
    return std::sqrt(var / dn);
  };
  out.volume_stderr = sphere / d * stderr_of(vol_sum, vol_sq);
  for (const auto& [j, face] : faces) {
    out.area[j] = sphere / dn * face.sum;
    out.area_stderr[j] = sphere * stderr_of(face.sum, face.sum_sq);
    if (f) out.surface_integral[j] = sphere / dn * face.integral;
  }
  if (f) out.volume_integral = sphere / (d * dn) * fv_sum;
  return out;
}

std::vector<CellIntegrals> run_cells(const NodeSet& nodes, const Mesh* mesh,
                                     const std::vector<int>& cells, const Integrand& f,
                                     const McOptions& options) {
  std::vector<CellIntegrals> out(cells.size());
  const Integrand* fp = f ? &f : nullptr;
  detail::parallel_for(cells.size(), options.threads, [&](std::size_t k) {
    const int i = cells[k];
    if (i < 0 || i >= nodes.size()) throw InvalidArgument("cell index out of range");
    auto rng = make_stream(options.seed, "mc", static_cast<std::uint64_t>(i));
    std::unique_ptr<NeighborSource> source;
    if (mesh && options.known_neighbors)
      source = std::make_unique<SubsetSource>(nodes, mesh->neighbors(i));
    else
      source = std::make_unique<KdTreeSource>(nodes);
    out[k] = run_mc(*source, i, fp, options.rays, options.subsamples, rng);
  });
  return out;
}

}  // namespace

CellIntegrals mc_integrate_cell(const NeighborSource& source, int i, const Integrand& f, int n,
                                int m, RngStream& rng) {
  if (!f) throw InvalidArgument("empty integrand");
  return run_mc(source, i, &f, n, m, rng);
}

CellIntegrals mc_areas_only(const NeighborSource& source, int i, int n, RngStream& rng) {
  return run_mc(source, i, nullptr, n, 0, rng);
}

std::vector<CellIntegrals> mc_integrate_cells(const Mesh& mesh, const std::vector<int>& cells,
                                              const Integrand& f, const McOptions& options) {
  return run_cells(mesh.nodes(), &mesh, cells, f, options);
}

std::vector<CellIntegrals> mc_integrate_cells(const NodeSet& nodes, const std::vector<int>& cells,
                                              const Integrand& f, const McOptions& options) {
  return run_cells(nodes, nullptr, cells, f, options);
}

}  // namespace vgraph

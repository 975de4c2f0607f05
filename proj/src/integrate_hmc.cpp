#include "vgraph/integrate_hmc.hpp"

#include "vgraph/parallel.hpp"

namespace vgraph {

double hmc_volume(const Mesh& mesh, int i, const std::map<int, double>& areas) {
  const int d = mesh.dim();
  const Point xi = mesh.nodes().point(i);
  double sum = 0.0;
  for (int j : mesh.neighbors(i)) {
    auto it = areas.find(j);
    if (it == areas.end())
      throw MissingNeighbor("no area for neighbor " + std::to_string(j) + " of cell " +
                            std::to_string(i));
    sum += 0.5 * (mesh.nodes().point(j) - xi).norm() * it->second;
  }
  return sum / d;
}

double hmc_interface_integral(const Mesh& mesh, int i, int j, double area, const Integrand& f) {
  if (mesh.face_unbounded(i, j))
    throw UnboundedFace("interface (" + std::to_string(i) + "," + std::to_string(j) +
                        ") is unbounded");
  const int d = mesh.dim();
  Point centroid = Point::Zero(d);
  double vertex_sum = 0.0;
  int count = 0;
  for (int v : mesh.cell_vertices(i)) {
    const Vertex& vx = mesh.vertices()[v];
    if (!vx.sigma.contains(j)) continue;
    centroid += vx.r;
    vertex_sum += f(vx.r);
    ++count;
  }
  if (count < d)
    throw MissingNeighbor("interface (" + std::to_string(i) + "," + std::to_string(j) + ") has " +
                          std::to_string(count) + " vertices");
  centroid /= count;
  return d / (d + 1.0) * (vertex_sum / count) * area + 1.0 / (d + 1.0) * f(centroid) * area;
}

double hmc_cell_integral(const Mesh& mesh, int i, const Integrand& f,
                         const std::map<int, double>& areas) {
  if (!mesh.is_bounded(i)) throw UnboundedCell("cell " + std::to_string(i) + " is unbounded");
  const int d = mesh.dim();
  const Point xi = mesh.nodes().point(i);
  const double fi = f(xi);
  double sum = 0.0;
  for (int j : mesh.neighbors(i)) {
    auto it = areas.find(j);
    if (it == areas.end())
      throw MissingNeighbor("no area for neighbor " + std::to_string(j) + " of cell " +
                            std::to_string(i));
    const double h = 0.5 * (mesh.nodes().point(j) - xi).norm();
    const double face = hmc_interface_integral(mesh, i, j, it->second, f);
    sum += h / d * (d / (d + 1.0) * face + 1.0 / (d + 1.0) * fi * it->second);
  }
  return sum;
}

CellIntegrals hmc_integrate_cell(const Mesh& mesh, int i, const Integrand& f,
                                 const std::map<int, double>& areas) {
  if (!mesh.is_bounded(i)) throw UnboundedCell("cell " + std::to_string(i) + " is unbounded");
  CellIntegrals out;
  out.cell = i;
  out.volume = hmc_volume(mesh, i, areas);
  for (int j : mesh.neighbors(i)) {
    const double a = areas.at(j);
    out.area[j] = a;
    out.surface_integral[j] = hmc_interface_integral(mesh, i, j, a, f);
  }
  out.volume_integral = hmc_cell_integral(mesh, i, f, areas);
  return out;
}

std::vector<CellIntegrals> hmc_integrate_cells(const Mesh& mesh, const std::vector<int>& cells,
                                               const Integrand& f, const McOptions& options) {
  auto areas = mc_integrate_cells(mesh, cells, Integrand{}, options);
  std::vector<CellIntegrals> out(cells.size());
  detail::parallel_for(cells.size(), options.threads, [&](std::size_t k) {
    const int i = cells[k];
    std::map<int, double> a = areas[k].area;
    for (int j : mesh.neighbors(i)) a.emplace(j, 0.0);
    out[k] = hmc_integrate_cell(mesh, i, f, a);
    out[k].n_rays = areas[k].n_rays;
    out[k].area_stderr = areas[k].area_stderr;
  });
  return out;
}

}  // namespace vgraph

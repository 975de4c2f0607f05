#include "vgraph/integrate_poly.hpp"

#include "vgraph/minors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace vgraph {

namespace {

struct Accum {
  double volume = 0.0;    // sum of |det| over simplices (d! times the volume)
  double integral = 0.0;  // matching sum of |det| * mean of the interpolant
};

class SimplexRecursion {
 public:
  SimplexRecursion(const Mesh& mesh, int cell, const Integrand& f)
      : mesh_(mesh), f_(f), dim_(mesh.dim()), center_(mesh.nodes().point(cell)), table_(dim_) {}

  /// Decomposes the face shared by the generators `shared` into simplices
  /// with apex x_i. verts are the vertex ids of that face.
  Accum face(const std::vector<int>& verts, const IndexSet& shared) {
    const int level = shared.size();
    if (level == dim_) {
      if (verts.size() != 2)
        throw UnboundedCell("edge " + to_string(shared) + " has " + std::to_string(verts.size()) +
                            " vertices");
      table_.update(position(verts[0]) - center_, 1);
      const double det = std::abs(table_.update(position(verts[1]) - center_, 0));
      return {det, 0.5 * (value(verts[0]) + value(verts[1])) * det};
    }

    Point centroid = Point::Zero(dim_);
    for (int v : verts) centroid += position(v);
    centroid /= static_cast<double>(verts.size());
    table_.update(centroid - center_, dim_ - level + 1);

    IndexSet next;
    std::vector<int> generators;
    for (int v : verts)
      for (int g : mesh_.vertices()[v].sigma)
        if (!shared.contains(g)) generators.push_back(g);
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());

    Accum sum;
    std::vector<int> sub;
    for (int g : generators) {
      sub.clear();
      for (int v : verts)
        if (mesh_.vertices()[v].sigma.contains(g)) sub.push_back(v);
      const Accum part = face(sub, shared.with(g));
      sum.volume += part.volume;
      sum.integral += part.integral;
    }
    // Cone rule over a (d - level + 1)-dimensional face with apex at the centroid.
    const double k = dim_ - level + 1;
    return {sum.volume, k / (k + 1.0) * sum.integral + 1.0 / (k + 1.0) * f_(centroid) * sum.volume};
  }

 private:
  const Point& position(int v) const { return mesh_.vertices()[v].r; }
  double value(int v) {
    auto it = values_.find(v);
    if (it != values_.end()) return it->second;
    const double fv = f_(position(v));
    values_.emplace(v, fv);
    return fv;
  }

  const Mesh& mesh_;
  const Integrand& f_;
  int dim_;
  Point center_;
  MinorTable<double> table_;
  std::unordered_map<int, double> values_;
};

double factorial(int d) {
  double out = 1.0;
  for (int k = 2; k <= d; ++k) out *= k;
  return out;
}

}  // namespace

CellIntegrals integrate_cell_poly(const Mesh& mesh, int i, const Integrand& f, AreaCache* cache) {
  if (!f) throw InvalidArgument("empty integrand");
  if (i < 0 || i >= mesh.num_cells()) throw InvalidArgument("cell index out of range");
  if (!mesh.is_bounded(i)) throw UnboundedCell("cell " + std::to_string(i) + " is unbounded");
  const int d = mesh.dim();
  if (d > kMaxMinorDim)
    throw InvalidArgument("polytope integration supports d <= " + std::to_string(kMaxMinorDim));

  const Point xi = mesh.nodes().point(i);
  const double dfact = factorial(d);
  SimplexRecursion recursion(mesh, i, f);

  CellIntegrals out;
  out.cell = i;
  out.exact = true;
  double volume = 0.0, integral = 0.0;
  std::vector<int> verts;
  for (int j : mesh.neighbors(i)) {
    const double h = 0.5 * (mesh.nodes().point(j) - xi).norm();
    const FaceIntegral* cached = nullptr;
    if (cache && j < i) {
      cached = cache->find(i, j);
      if (!cached && mesh.is_bounded(j))
        throw MissingCache("face (" + std::to_string(j) + "," + std::to_string(i) +
                           ") not produced by cell " + std::to_string(j));
    }
    FaceIntegral face;
    if (cached) {
      face = *cached;
    } else {
      verts.clear();
      for (int v : mesh.cell_vertices(i))
        if (mesh.vertices()[v].sigma.contains(j)) verts.push_back(v);
      const Accum acc = recursion.face(verts, IndexSet{i, j});
      face.area = acc.volume / dfact * d / h;
      face.integral = acc.integral / dfact * d / h;
      if (cache && j > i) cache->store(i, j, face);
    }
    volume += h / d * face.area;
    integral += h / d * face.integral;
    out.area[j] = face.area;
    out.surface_integral[j] = face.integral;
  }
  out.volume = volume;
  out.volume_integral = d / (d + 1.0) * integral + 1.0 / (d + 1.0) * f(xi) * volume;
  return out;
}

std::vector<CellIntegrals> integrate_cells_poly(const Mesh& mesh, std::vector<int> cells,
                                                const Integrand& f, bool use_cache) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  // Cache entries for lower bounded neighbors only exist if those cells are
  // integrated too; fall back to direct evaluation for partial selections.
  AreaCache cache;
  bool complete = use_cache;
  if (complete) {
    std::vector<char> selected(mesh.num_cells(), 0);
    for (int c : cells) selected.at(c) = 1;
    for (int c = 0; c < mesh.num_cells() && complete; ++c)
      if (mesh.is_bounded(c) && !selected[c]) complete = false;
  }
  std::vector<CellIntegrals> out;
  out.reserve(cells.size());
  for (int c : cells) out.push_back(integrate_cell_poly(mesh, c, f, complete ? &cache : nullptr));
  return out;
}

double cell_diameter(const Mesh& mesh, int i) {
  const auto& verts = mesh.cell_vertices(i);
  double best = 0.0;
  for (std::size_t a = 0; a < verts.size(); ++a)
    for (std::size_t b = a + 1; b < verts.size(); ++b)
      best = std::max(best, (mesh.vertices()[verts[a]].r - mesh.vertices()[verts[b]].r).norm());
  return best;
}

ErrorBounds poly_error_bounds(const Mesh& mesh, int i, double sup_second_derivative,
                              double inf_abs_value) {
  if (!mesh.is_bounded(i)) throw UnboundedCell("cell " + std::to_string(i) + " is unbounded");
  const double diam = cell_diameter(mesh, i);
  const double volume = integrate_cell_poly(mesh, i, [](const Point&) { return 0.0; }).volume;
  ErrorBounds b;
  b.absolute = volume * sup_second_derivative * diam * diam;
  b.relative = sup_second_derivative == 0.0
                   ? 0.0
                   : (inf_abs_value > 0.0 ? sup_second_derivative * diam * diam / inf_abs_value
                                          : std::numeric_limits<double>::infinity());
  return b;
}

}  // namespace vgraph

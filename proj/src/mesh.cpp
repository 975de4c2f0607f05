#include "vgraph/mesh.hpp"

#include <algorithm>
#include <sstream>

namespace vgraph {

std::optional<int> Mesh::find(const IndexSet& sigma) const {
  auto it = index_.find(sigma);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Mesh::add_vertex(Vertex v) {
  const int id = static_cast<int>(vertices_.size());
  auto [it, inserted] = index_.emplace(v.sigma, id);
  if (!inserted) throw InvalidArgument("vertex " + to_string(v.sigma) + " already stored");
  vertices_.push_back(std::move(v));
  finalized_ = false;
  return id;
}

void Mesh::count_edges(const IndexSet& sigma) {
  for (int k = 0; k < sigma.size(); ++k) ++edge_counts_[sigma.without(sigma[k])];
}

int Mesh::edge_count(const IndexSet& eta) const {
  auto it = edge_counts_.find(eta);
  return it == edge_counts_.end() ? 0 : it->second;
}

void Mesh::finalize() {
  const int n = num_cells();
  cell_vertices_.assign(n, {});
  neighbors_.assign(n, {});
  bounded_.assign(n, 1);
  for (int v = 0; v < static_cast<int>(vertices_.size()); ++v)
    for (int g : vertices_[v].sigma) cell_vertices_[g].push_back(v);
  for (int i = 0; i < n; ++i) {
    auto& nb = neighbors_[i];
    for (int v : cell_vertices_[i])
      for (int g : vertices_[v].sigma)
        if (g != i) nb.push_back(g);
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  for (const auto& ray : boundary_)
    for (int g : ray.eta) bounded_[g] = 0;
  // A cell without any vertex cannot be bounded.
  for (int i = 0; i < n; ++i)
    if (cell_vertices_[i].empty()) bounded_[i] = 0;
  finalized_ = true;
}

void Mesh::require_finalized() const {
  if (!finalized_) throw InvalidArgument("mesh queried before finalize()");
}

const std::vector<int>& Mesh::cell_vertices(int i) const {
  require_finalized();
  return cell_vertices_.at(i);
}

const std::vector<int>& Mesh::neighbors(int i) const {
  require_finalized();
  return neighbors_.at(i);
}

bool Mesh::is_bounded(int i) const {
  require_finalized();
  return bounded_.at(i) != 0;
}

bool Mesh::face_unbounded(int i, int j) const {
  for (const auto& ray : boundary_)
    if (ray.eta.contains(i) && ray.eta.contains(j)) return true;
  return false;
}

std::vector<IndexSet> edge_set(const IndexSet& sigma) {
  std::vector<IndexSet> out;
  out.reserve(sigma.size());
  for (int k = 0; k < sigma.size(); ++k) out.push_back(sigma.without(sigma[k]));
  return out;
}

VertexCheck verify_vertex(const NodeSet& nodes, const Vertex& v, double tol) {
  VertexCheck check;
  std::ostringstream msg;
  if (v.sigma.size() != nodes.dim() + 1) {
    check.ok = false;
    msg << "sigma " << to_string(v.sigma) << " has " << v.sigma.size() << " generators";
    check.message = msg.str();
    return check;
  }
  if (v.r.size() != nodes.dim()) {
    check.ok = false;
    check.message = "coordinate dimension mismatch";
    return check;
  }
  const double radius = (nodes.point(v.sigma[0]) - v.r).norm();
  double lo = radius, hi = radius;
  for (int g : v.sigma) {
    double dist = (nodes.point(g) - v.r).norm();
    lo = std::min(lo, dist);
    hi = std::max(hi, dist);
  }
  check.equidistance_error = radius > 0.0 ? (hi - lo) / radius : hi - lo;
  if (check.equidistance_error > tol) {
    check.ok = false;
    msg << "generators of " << to_string(v.sigma) << " not equidistant (relative spread "
        << check.equidistance_error << ")";
  }
  const double limit = lo * (1.0 - tol);
  for (int i = 0; i < nodes.size(); ++i) {
    if (v.sigma.contains(i)) continue;
    if ((nodes.point(i) - v.r).norm() < limit) {
      check.ok = false;
      check.intruder = i;
      msg << (msg.tellp() > 0 ? "; " : "") << "node " << i << " inside circumsphere of "
          << to_string(v.sigma);
      break;
    }
  }
  check.message = msg.str();
  return check;
}

}  // namespace vgraph

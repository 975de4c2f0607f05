#include "vgraph/graph.hpp"

#include <map>
#include <numeric>
#include <sstream>

namespace vgraph {

std::string to_string(RaycastMethod m) {
  switch (m) {
    case RaycastMethod::incircle: return "incircle";
    case RaycastMethod::incircle_heuristic: return "incircle_heuristic";
    case RaycastMethod::bisection: return "bisection";
  }
  return "unknown";
}

std::optional<RayHit> raycast(const NeighborSource& source, const RayQuery& q,
                              const GraphOptions& options, RaycastStats& stats) {
  switch (options.method) {
    case RaycastMethod::incircle: return raycast_incircle(source, q, stats, {.heuristic = false});
    case RaycastMethod::incircle_heuristic:
      return raycast_incircle(source, q, stats, {.heuristic = true});
    case RaycastMethod::bisection: return raycast_bisection(source, q, options.eps, stats);
  }
  return std::nullopt;
}

Vertex descent(const NeighborSource& source, int start, RngStream& rng, const GraphOptions& options,
               GraphStats& stats) {
  const NodeSet& nodes = source.nodes();
  const int d = nodes.dim();
  if (start < 0 || start >= nodes.size()) throw InvalidArgument("descent start out of range");
  std::normal_distribution<double> normal;

  IndexSet sigma{start};
  Point r = nodes.point(start);
  int failures = 0;
  while (sigma.size() < d + 1) {
    Point u(d);
    double norm = 0.0;
    while (norm < 1e-8) {
      for (int k = 0; k < d; ++k) u[k] = normal(rng);
      u = project_out_span(nodes, sigma, std::move(u));
      norm = u.norm();
    }
    u /= norm;
    ++stats.descent_raycasts;
    auto hit = raycast(source, {sigma, r, u}, options, stats.raycast);
    if (!hit) {
      if (++failures >= options.max_retries)
        throw RetryExhausted("descent from node " + std::to_string(start) + " escaped " +
                             std::to_string(failures) + " times");
      continue;
    }
    failures = 0;
    sigma = hit->sigma;
    r = std::move(hit->r);
  }
  return Vertex{sigma, std::move(r)};
}

Mesh voronoi_graph(const NodeSet& nodes, std::uint64_t seed, const GraphOptions& options,
                   GraphStats* stats_out) {
  GraphStats stats;
  Mesh mesh(nodes);
  const KdTreeSource source(mesh.nodes());
  auto rng = make_stream(seed, "descent");

  Vertex first = descent(source, 0, rng, options, stats);
  mesh.count_edges(first.sigma);
  std::vector<int> stack{mesh.add_vertex(std::move(first))};

  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const IndexSet sigma = mesh.vertices()[id].sigma;
    const Point r = mesh.vertices()[id].r;
    for (const IndexSet& eta : edge_set(sigma)) {
      if (mesh.edge_count(eta) >= 2) continue;
      Point u = search_direction(mesh.nodes(), sigma, eta);
      ++stats.raycasts;
      auto hit = raycast(source, {eta, r, u}, options, stats.raycast);
      if (!hit) {
        mesh.add_boundary({sigma, eta, std::move(u)});
        continue;
      }
      if (mesh.contains(hit->sigma)) {
        ++stats.repeated_vertices;
        continue;
      }
      mesh.count_edges(hit->sigma);
      stack.push_back(mesh.add_vertex({hit->sigma, std::move(hit->r)}));
    }
  }
  mesh.finalize();
  if (stats_out) *stats_out = stats;
  return mesh;
}

std::vector<Vertex> brute_force_vertices(const NodeSet& nodes) {
  const int d = nodes.dim();
  const int n = nodes.size();
  const Eigen::MatrixXd& X = nodes.points();
  std::vector<Vertex> out;
  std::vector<int> comb(d + 1);
  std::iota(comb.begin(), comb.end(), 0);

  Eigen::MatrixXd A(d, d);
  Eigen::VectorXd b(d);
  for (;;) {
    const auto p0 = X.col(comb[0]);
    for (int k = 1; k <= d; ++k) {
      A.row(k - 1) = 2.0 * (X.col(comb[k]) - p0).transpose();
      b[k - 1] = X.col(comb[k]).squaredNorm() - p0.squaredNorm();
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    lu.setThreshold(1e-12);
    if (lu.isInvertible()) {
      const Eigen::VectorXd c = lu.solve(b);
      const double r2 = (c - p0).squaredNorm();
      bool empty = true;
      for (int i = 0, k = 0; i < n && empty; ++i) {
        if (k <= d && comb[k] == i) {
          ++k;
          continue;
        }
        if ((X.col(i) - c).squaredNorm() < r2 * (1.0 - 1e-12)) empty = false;
      }
      if (empty) out.push_back({IndexSet(std::span<const int>(comb)), c});
    }
    // Next combination in lexicographic order.
    int k = d;
    while (k >= 0 && comb[k] == n - (d + 1) + k) --k;
    if (k < 0) break;
    ++comb[k];
    for (int j = k + 1; j <= d; ++j) comb[j] = comb[j - 1] + 1;
  }
  return out;
}

MeshReport verify_mesh(const Mesh& mesh, const VerifyOptions& options) {
  MeshReport report;
  const NodeSet& nodes = mesh.nodes();
  const int d = nodes.dim();
  auto fail = [&](std::string msg) {
    report.ok = false;
    if (report.messages.size() < 50) report.messages.push_back(std::move(msg));
  };

  std::unordered_map<IndexSet, std::vector<int>, IndexSetHash> incident;
  for (int v = 0; v < static_cast<int>(mesh.vertices().size()); ++v) {
    const Vertex& vx = mesh.vertices()[v];
    ++report.vertices_checked;
    auto check = verify_vertex(nodes, vx);
    if (!check.ok) {
      ++report.vertex_failures;
      fail(check.message);
    }
    for (const auto& eta : edge_set(vx.sigma)) incident[eta].push_back(v);
  }

  std::unordered_map<IndexSet, int, IndexSetHash> rays;
  for (const auto& ray : mesh.boundary()) ++rays[ray.eta];

  for (const auto& [eta, count] : mesh.edge_counts()) {
    auto it = incident.find(eta);
    if (it == incident.end()) {
      ++report.edge_failures;
      fail("edge " + to_string(eta) + " belongs to no stored vertex");
      continue;
    }
    const auto& vs = it->second;
    if (count == 2) {
      if (vs.size() != 2) {
        ++report.edge_failures;
        fail("interior edge " + to_string(eta) + " has " + std::to_string(vs.size()) + " vertices");
        continue;
      }
      const auto& s1 = mesh.vertices()[vs[0]].sigma;
      const auto& s2 = mesh.vertices()[vs[1]].sigma;
      IndexSet common;
      for (int g : s1)
        if (s2.contains(g)) common.insert(g);
      if (!(common == eta)) {
        ++report.edge_failures;
        fail("edge " + to_string(eta) + " is not the intersection of its vertices");
      }
      for (int v : vs) {
        const Point& r = mesh.vertices()[v].r;
        const double r0 = (nodes.point(eta[0]) - r).norm();
        for (int g : eta)
          if (std::abs((nodes.point(g) - r).norm() - r0) > kTolVertex * r0) {
            ++report.edge_failures;
            fail("edge generators " + to_string(eta) + " not on circumsphere");
            break;
          }
      }
    } else if (count == 1) {
      if (vs.size() != 1 || rays.find(eta) == rays.end()) {
        ++report.edge_failures;
        fail("edge " + to_string(eta) + " counted once but has no boundary ray");
      }
    } else {
      ++report.edge_failures;
      fail("edge " + to_string(eta) + " has count " + std::to_string(count));
    }
  }

  if (options.oracle && d <= 3 && nodes.size() <= options.oracle_max_nodes) {
    report.oracle_run = true;
    std::map<IndexSet, Point> expected;
    for (auto& v : brute_force_vertices(nodes)) expected.emplace(v.sigma, std::move(v.r));
    for (const auto& v : mesh.vertices()) {
      auto it = expected.find(v.sigma);
      if (it == expected.end()) {
        ++report.oracle_extra;
        fail("vertex " + to_string(v.sigma) + " not produced by enumeration");
        continue;
      }
      const double scale = std::max(1.0, it->second.norm());
      if ((it->second - v.r).norm() > options.position_tol * scale) {
        ++report.oracle_position_failures;
        fail("vertex " + to_string(v.sigma) + " position differs from enumeration");
      }
    }
    for (const auto& [sigma, r] : expected)
      if (!mesh.contains(sigma)) {
        ++report.oracle_missing;
        fail("vertex " + to_string(sigma) + " missing");
      }
  }
  return report;
}

}  // namespace vgraph

#pragma once

#include "vgraph/mesh.hpp"
#include "vgraph/raycast.hpp"
#include "vgraph/rng.hpp"

#include <string>
#include <vector>

namespace vgraph {

enum class RaycastMethod { incircle, incircle_heuristic, bisection };

std::string to_string(RaycastMethod m);

struct GraphOptions {
  RaycastMethod method = RaycastMethod::incircle_heuristic;
  /// Bracket width for RaycastMethod::bisection.
  double eps = 1e-8;
  /// Consecutive escaped rays tolerated by the descent before giving up.
  int max_retries = 100;
};

struct GraphStats {
  RaycastStats raycast;
  std::uint64_t raycasts = 0;
  std::uint64_t descent_raycasts = 0;
  /// Raycasts that returned an already stored vertex (only the approximate
  /// bisection method can produce these).
  std::uint64_t repeated_vertices = 0;
};

/// Dispatches to the incircle or bisection raycast.
std::optional<RayHit> raycast(const NeighborSource& source, const RayQuery& q,
                              const GraphOptions& options, RaycastStats& stats);

/// Finds a first vertex by shooting random rays from node start onto faces of
/// decreasing dimension.
Vertex descent(const NeighborSource& source, int start, RngStream& rng, const GraphOptions& options,
               GraphStats& stats);

/// Exhaustive depth-first traversal of the Voronoi graph.
Mesh voronoi_graph(const NodeSet& nodes, std::uint64_t seed, const GraphOptions& options = {},
                   GraphStats* stats = nullptr);

/// Reference vertex set by enumeration of all (d+1)-subsets. O(N^(d+2)).
std::vector<Vertex> brute_force_vertices(const NodeSet& nodes);

struct MeshReport {
  bool ok = true;
  std::size_t vertices_checked = 0;
  std::size_t vertex_failures = 0;
  std::size_t edge_failures = 0;
  bool oracle_run = false;
  std::size_t oracle_missing = 0;
  std::size_t oracle_extra = 0;
  std::size_t oracle_position_failures = 0;
  std::vector<std::string> messages;
};

struct VerifyOptions {
  /// Compare against brute_force_vertices when d <= 3 and N <= oracle_max_nodes.
  bool oracle = true;
  int oracle_max_nodes = 200;
  double position_tol = 1e-8;
};

MeshReport verify_mesh(const Mesh& mesh, const VerifyOptions& options = {});

}  // namespace vgraph

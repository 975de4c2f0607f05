#pragma once

#include "vgraph/node_set.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace vgraph {

/// A Voronoi vertex: its d + 1 generators and its coordinates.
struct Vertex {
  IndexSet sigma;
  Point r;
};

/// An unbounded edge: the vertex it leaves, the edge key and its direction.
struct BoundaryRay {
  IndexSet sigma;
  IndexSet eta;
  Point u;
};

using EdgeCounts = std::unordered_map<IndexSet, std::uint8_t, IndexSetHash>;

/// Vertices, edge visit counts and unbounded edges of a Voronoi diagram.
///
/// Call finalize() after the last insertion to build the per-cell lookups
/// used by the integrators.
class Mesh {
 public:
  Mesh() = default;
  explicit Mesh(NodeSet nodes) : nodes_(std::move(nodes)) {}

  const NodeSet& nodes() const { return nodes_; }
  int dim() const { return nodes_.dim(); }
  int num_cells() const { return nodes_.size(); }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<BoundaryRay>& boundary() const { return boundary_; }
  const EdgeCounts& edge_counts() const { return edge_counts_; }

  std::optional<int> find(const IndexSet& sigma) const;
  bool contains(const IndexSet& sigma) const { return find(sigma).has_value(); }

  /// Throws InvalidArgument on a duplicate sigma.
  int add_vertex(Vertex v);
  /// Increments the counter of every edge key of sigma.
  void count_edges(const IndexSet& sigma);
  int edge_count(const IndexSet& eta) const;
  void add_boundary(BoundaryRay ray) {
    boundary_.push_back(std::move(ray));
    finalized_ = false;
  }

  /// Replaces a vertex position; used by negative-control tests.
  void set_position(int vertex, Point r) { vertices_.at(vertex).r = std::move(r); }

  void finalize();
  bool finalized() const { return finalized_; }

  /// Vertex ids whose sigma contains cell i.
  const std::vector<int>& cell_vertices(int i) const;
  /// Cells sharing at least one vertex with i, ascending.
  const std::vector<int>& neighbors(int i) const;
  /// False when an unbounded edge touches the cell.
  bool is_bounded(int i) const;
  /// True when some unbounded edge contains both i and j.
  bool face_unbounded(int i, int j) const;

 private:
  void require_finalized() const;

  NodeSet nodes_;
  std::vector<Vertex> vertices_;
  std::unordered_map<IndexSet, int, IndexSetHash> index_;
  EdgeCounts edge_counts_;
  std::vector<BoundaryRay> boundary_;

  bool finalized_ = false;
  std::vector<std::vector<int>> cell_vertices_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<char> bounded_;
};

/// All d+1 keys obtained by dropping exactly one generator of sigma.
std::vector<IndexSet> edge_set(const IndexSet& sigma);

struct VertexCheck {
  bool ok = true;
  /// Largest relative spread of the generator distances.
  double equidistance_error = 0.0;
  /// A node strictly inside the circumsphere, if any.
  int intruder = -1;
  std::string message;
};

/// Checks sigma size, equidistance and the empty-sphere criterion by a full
/// scan over the nodes.
VertexCheck verify_vertex(const NodeSet& nodes, const Vertex& v, double tol = kTolVertex);

}  // namespace vgraph

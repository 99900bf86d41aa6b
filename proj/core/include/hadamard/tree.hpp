#pragma once

#include <vector>

namespace hadamard {

struct TreeEdge {
  int u = 0;
  int v = 0;
  double length = 0.0;

  bool operator==(const TreeEdge&) const = default;
};

/// A finite metric tree: `vertices` vertices joined by weighted edges.
struct TreeTopology {
  int vertices = 0;
  std::vector<TreeEdge> edges;

  bool operator==(const TreeTopology&) const = default;
};

/// A point of a metric tree: arc-length `offset` from the `u` endpoint of
/// edge `edge`. Vertices have one canonical form, the lowest-indexed incident
/// edge with offset 0 (vertex is its `u`) or its full length (vertex is `v`).
struct TreeLocation {
  int edge = 0;
  double offset = 0.0;

  bool operator==(const TreeLocation&) const = default;
};

/// Precomputed parent/depth tables for a validated tree, rooted at vertex 0.
class TreeIndex {
 public:
  /// Throws DomainError unless `topology` is a connected acyclic graph with
  /// positive edge lengths.
  explicit TreeIndex(TreeTopology topology);

  const TreeTopology& topology() const noexcept { return topology_; }
  int vertex_count() const noexcept { return topology_.vertices; }
  int edge_count() const noexcept { return static_cast<int>(topology_.edges.size()); }
  const TreeEdge& edge(int e) const { return topology_.edges[static_cast<std::size_t>(e)]; }
  double total_length() const noexcept { return total_length_; }

  double vertex_distance(int a, int b) const;
  int lowest_common_ancestor(int a, int b) const;

  /// Edges along the vertex path a -> b as (edge, vertex the edge is entered from).
  struct Hop {
    int edge;
    int from;
  };
  std::vector<Hop> vertex_path(int a, int b) const;

  TreeLocation at_vertex(int v) const;
  /// Clamps the offset to the edge and rewrites vertex positions canonically.
  TreeLocation canonical(TreeLocation p) const;
  /// Vertex index if `p` sits exactly on a vertex, else -1.
  int vertex_of(const TreeLocation& p) const;
  /// Distance from `p` to endpoint `vertex` of its own edge.
  double distance_to_endpoint(const TreeLocation& p, int vertex) const;
  /// Point on edge `e` at arc length `t` from its endpoint `from`.
  TreeLocation along_edge(int e, int from, double t) const;

 private:
  TreeTopology topology_;
  std::vector<int> parent_;
  std::vector<int> parent_edge_;
  std::vector<int> depth_;
  std::vector<double> root_distance_;
  std::vector<int> lowest_edge_;
  double total_length_ = 0.0;
};

}  // namespace hadamard

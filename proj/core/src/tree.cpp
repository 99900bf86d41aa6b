#include "hadamard/tree.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hadamard/error.hpp"

namespace hadamard {

TreeIndex::TreeIndex(TreeTopology topology) : topology_(std::move(topology)) {
  const int n = topology_.vertices;
  if (n < 1) throw DomainError("tree: vertex count must be positive");
  if (static_cast<int>(topology_.edges.size()) != n - 1)
    throw DomainError("tree: expected " + std::to_string(n - 1) + " edges for " +
                      std::to_string(n) + " vertices, got " +
                      std::to_string(topology_.edges.size()));

  std::vector<std::vector<int>> incident(static_cast<std::size_t>(n));
  for (int e = 0; e < edge_count(); ++e) {
    const auto& ed = edge(e);
    if (ed.u < 0 || ed.u >= n || ed.v < 0 || ed.v >= n)
      throw DomainError("tree: edge " + std::to_string(e) + " references a missing vertex");
    if (ed.u == ed.v) throw DomainError("tree: edge " + std::to_string(e) + " is a self-loop");
    if (!(ed.length > 0.0) || !std::isfinite(ed.length))
      throw DomainError("tree: edge " + std::to_string(e) + " must have positive finite length");
    incident[static_cast<std::size_t>(ed.u)].push_back(e);
    incident[static_cast<std::size_t>(ed.v)].push_back(e);
    total_length_ += ed.length;
  }

  parent_.assign(static_cast<std::size_t>(n), -1);
  parent_edge_.assign(static_cast<std::size_t>(n), -1);
  depth_.assign(static_cast<std::size_t>(n), -1);
  root_distance_.assign(static_cast<std::size_t>(n), 0.0);
  lowest_edge_.assign(static_cast<std::size_t>(n), -1);

  std::vector<int> stack{0};
  depth_[0] = 0;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int e : incident[static_cast<std::size_t>(v)]) {
      if (e == parent_edge_[static_cast<std::size_t>(v)]) continue;
      const auto& ed = edge(e);
      const int w = ed.u == v ? ed.v : ed.u;
      const auto wi = static_cast<std::size_t>(w);
      if (depth_[wi] >= 0) throw DomainError("tree: edges contain a cycle");
      parent_[wi] = v;
      parent_edge_[wi] = e;
      depth_[wi] = depth_[static_cast<std::size_t>(v)] + 1;
      root_distance_[wi] = root_distance_[static_cast<std::size_t>(v)] + ed.length;
      stack.push_back(w);
      ++reached;
    }
  }
  if (reached != n) throw DomainError("tree: graph is disconnected");

  for (int v = 0; v < n; ++v) {
    const auto& inc = incident[static_cast<std::size_t>(v)];
    if (!inc.empty())
      lowest_edge_[static_cast<std::size_t>(v)] = *std::min_element(inc.begin(), inc.end());
  }
}

int TreeIndex::lowest_common_ancestor(int a, int b) const {
  while (depth_[static_cast<std::size_t>(a)] > depth_[static_cast<std::size_t>(b)])
    a = parent_[static_cast<std::size_t>(a)];
  while (depth_[static_cast<std::size_t>(b)] > depth_[static_cast<std::size_t>(a)])
    b = parent_[static_cast<std::size_t>(b)];
  while (a != b) {
    a = parent_[static_cast<std::size_t>(a)];
    b = parent_[static_cast<std::size_t>(b)];
  }
  return a;
}

double TreeIndex::vertex_distance(int a, int b) const {
  if (a == b) return 0.0;
  const int c = lowest_common_ancestor(a, b);
  // Summing edge lengths along the path keeps the result independent of the
  // magnitude of the root distances.
  double d = 0.0;
  for (int v = a; v != c; v = parent_[static_cast<std::size_t>(v)])
    d += edge(parent_edge_[static_cast<std::size_t>(v)]).length;
  for (int v = b; v != c; v = parent_[static_cast<std::size_t>(v)])
    d += edge(parent_edge_[static_cast<std::size_t>(v)]).length;
  return d;
}

std::vector<TreeIndex::Hop> TreeIndex::vertex_path(int a, int b) const {
  const int c = lowest_common_ancestor(a, b);
  std::vector<Hop> up;
  for (int v = a; v != c; v = parent_[static_cast<std::size_t>(v)])
    up.push_back({parent_edge_[static_cast<std::size_t>(v)], v});
  std::vector<Hop> down;
  for (int v = b; v != c; v = parent_[static_cast<std::size_t>(v)])
    down.push_back({parent_edge_[static_cast<std::size_t>(v)], parent_[static_cast<std::size_t>(v)]});
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

TreeLocation TreeIndex::at_vertex(int v) const {
  const int e = lowest_edge_[static_cast<std::size_t>(v)];
  if (e < 0) return {0, 0.0};  // single-vertex tree has no edges
  const auto& ed = edge(e);
  return {e, ed.u == v ? 0.0 : ed.length};
}

int TreeIndex::vertex_of(const TreeLocation& p) const {
  const auto& ed = edge(p.edge);
  if (p.offset <= 0.0) return ed.u;
  if (p.offset >= ed.length) return ed.v;
  return -1;
}

TreeLocation TreeIndex::canonical(TreeLocation p) const {
  const auto& ed = edge(p.edge);
  p.offset = std::clamp(p.offset, 0.0, ed.length);
  const int v = vertex_of(p);
  return v >= 0 ? at_vertex(v) : p;
}

double TreeIndex::distance_to_endpoint(const TreeLocation& p, int vertex) const {
  const auto& ed = edge(p.edge);
  return vertex == ed.u ? p.offset : ed.length - p.offset;
}

TreeLocation TreeIndex::along_edge(int e, int from, double t) const {
  const auto& ed = edge(e);
  return canonical({e, from == ed.u ? t : ed.length - t});
}

}  // namespace hadamard

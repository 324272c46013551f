#pragma once

#include <algorithm>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "edgedom/graph.hpp"
#include "edgedom/structure.hpp"

namespace edgedom {

// One or two center vertices of a tree, found by repeatedly peeling leaves.
inline std::vector<VertexId> tree_centers(const Graph& t) {
  const std::size_t n = t.num_vertices();
  if (n <= 2) {
    std::vector<VertexId> all;
    for (VertexId v = 0; v < n; ++v) all.push_back(v);
    return all;
  }
  std::vector<std::size_t> deg(n);
  std::vector<VertexId> layer;
  for (VertexId v = 0; v < n; ++v) {
    deg[v] = t.degree(v);
    if (deg[v] <= 1) layer.push_back(v);
  }
  std::size_t remaining = n;
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<VertexId> next;
    for (VertexId v : layer) {
      for (EdgeId e : t.incident(v)) {
        const VertexId w = t.other_end(e, v);
        if (--deg[w] == 1) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

// AHU-style code of `t` rooted at `root`. Each child code is prefixed by the
// label of the edge leading to it.
template <class VertexLabel, class EdgeLabel>
std::string rooted_code(const Graph& t, VertexId root, VertexLabel vertex_label,
                        EdgeLabel edge_label) {
  const std::size_t n = t.num_vertices();
  std::vector<VertexId> order;
  std::vector<EdgeId> up(n, kNoEdge);
  std::vector<bool> seen(n, false);
  order.reserve(n);
  order.push_back(root);
  seen[root] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const VertexId v = order[head];
    for (EdgeId e : t.incident(v)) {
      const VertexId w = t.other_end(e, v);
      if (!seen[w]) {
        seen[w] = true;
        up[w] = e;
        order.push_back(w);
      }
    }
  }
  std::vector<std::vector<std::string>> parts(n);
  std::vector<std::string> code(n);
  for (std::size_t i = order.size(); i-- > 0;) {
    const VertexId v = order[i];
    auto& kids = parts[v];
    std::sort(kids.begin(), kids.end());
    std::string c = "(";
    c += vertex_label(v);
    for (auto& k : kids) c += k;
    c += ")";
    code[v] = std::move(c);
    kids.clear();
    if (up[v] != kNoEdge) {
      parts[t.other_end(up[v], v)].push_back(edge_label(up[v]) + code[v]);
    }
  }
  return code[root];
}

// Isomorphism-invariant string for a (possibly labelled) tree.
template <class VertexLabel, class EdgeLabel>
std::string canonical_form(const Graph& t, VertexLabel vertex_label, EdgeLabel edge_label) {
  std::string best;
  bool first = true;
  for (VertexId c : tree_centers(t)) {
    std::string code = rooted_code(t, c, vertex_label, edge_label);
    if (first || code < best) best = std::move(code);
    first = false;
  }
  return best;
}

inline std::string canonical_form(const Graph& t) {
  return canonical_form(
      t, [](VertexId) { return std::string(); }, [](EdgeId) { return std::string(); });
}

// All free trees on 1..max_n vertices up to isomorphism, grouped by vertex
// count (index n holds the trees with n vertices). Vertices are 0..n-1.
inline std::vector<std::vector<Graph>> enumerate_free_trees(std::size_t max_n) {
  std::vector<std::vector<Graph>> by_size(max_n + 1);
  if (max_n == 0) return by_size;
  by_size[1].push_back(GraphBuilder(1).build());
  for (std::size_t n = 2; n <= max_n; ++n) {
    std::unordered_set<std::string> seen;
    for (const Graph& smaller : by_size[n - 1]) {
      for (VertexId attach = 0; attach < smaller.num_vertices(); ++attach) {
        GraphBuilder b(n);
        for (const Edge& e : smaller.edges()) b.add_edge(e.u, e.v);
        b.add_edge(attach, static_cast<VertexId>(n - 1));
        Graph grown = std::move(b).build();
        if (seen.insert(canonical_form(grown)).second) by_size[n].push_back(std::move(grown));
      }
    }
  }
  return by_size;
}

}  // namespace edgedom

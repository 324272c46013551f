#pragma once

#include <utility>
#include <vector>

#include "edgedom/graph.hpp"
#include "edgedom/tree_dp.hpp"

namespace testing_support {

using namespace edgedom;

// The subtree made of `top` and everything below it, as a standalone graph.
// Returns the graph and the new id of `top`.
inline std::pair<Graph, EdgeId> subtree_below(const RootedTree& rt, EdgeId top) {
  const Graph& g = rt.graph();
  std::vector<EdgeId> edges{top};
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (EdgeId c : rt.children(edges[i])) edges.push_back(c);
  }
  GraphBuilder b;
  for (EdgeId e : edges) b.add_edge(g.name(g.edge(e).u), g.name(g.edge(e).v));
  return {std::move(b).build(), EdgeId{0}};
}

inline std::vector<VertexId> leaves(const Graph& g) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) == 1) out.push_back(v);
  }
  return out;
}

}  // namespace testing_support

#pragma once

#include <algorithm>
#include <queue>
#include <vector>

#include "edgedom/ext_nat.hpp"
#include "edgedom/graph.hpp"

namespace edgedom {

namespace detail {

inline std::vector<std::uint32_t> bfs_distances(const Graph& g, VertexId source) {
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dist(g.num_vertices(), kUnseen);
  std::vector<VertexId> queue;
  queue.reserve(g.num_vertices());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId v = queue[head];
    for (EdgeId e : g.incident(v)) {
      const VertexId w = g.other_end(e, v);
      if (dist[w] == kUnseen) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace detail

inline bool is_connected(const Graph& g) {
  if (g.num_vertices() == 0) return true;
  const auto dist = detail::bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](std::uint32_t d) {
    return d == std::numeric_limits<std::uint32_t>::max();
  });
}

inline bool is_tree(const Graph& g) {
  return g.num_vertices() >= 1 && g.num_edges() + 1 == g.num_vertices() && is_connected(g);
}

inline std::size_t max_degree(const Graph& g) {
  std::size_t best = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) best = std::max(best, g.degree(v));
  return best;
}

inline std::size_t diameter(const Graph& g) {
  std::size_t best = 0;
  for (VertexId s = 0; s < g.num_vertices(); ++s) {
    for (std::uint32_t d : detail::bfs_distances(g, s)) {
      if (d == std::numeric_limits<std::uint32_t>::max()) {
        throw Error(ErrorKind::kInvalidInput, "diameter of a disconnected graph");
      }
      best = std::max<std::size_t>(best, d);
    }
  }
  return best;
}

// Shortest cycle length; BFS from every vertex, closing on non-tree edges.
inline ExtNat girth(const Graph& g) {
  ExtNat best = kInf;
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dist(g.num_vertices());
  std::vector<EdgeId> via(g.num_vertices());
  std::vector<VertexId> queue;
  for (VertexId s = 0; s < g.num_vertices(); ++s) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    queue.clear();
    dist[s] = 0;
    via[s] = kNoEdge;
    queue.push_back(s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const VertexId v = queue[head];
      if (best.is_finite() && 2 * dist[v] + 1 >= best.value()) break;
      for (EdgeId e : g.incident(v)) {
        if (e == via[v]) continue;
        const VertexId w = g.other_end(e, v);
        if (dist[w] == kUnseen) {
          dist[w] = dist[v] + 1;
          via[w] = e;
          queue.push_back(w);
        } else {
          best = std::min(best, ExtNat(dist[v] + dist[w] + 1));
        }
      }
    }
  }
  return best;
}

inline bool is_bipartite(const Graph& g) {
  std::vector<int> color(g.num_vertices(), -1);
  std::vector<VertexId> queue;
  for (VertexId s = 0; s < g.num_vertices(); ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const VertexId v = queue[head];
      for (EdgeId e : g.incident(v)) {
        const VertexId w = g.other_end(e, v);
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

// Connected components as standalone graphs, keeping vertex names.
inline std::vector<Graph> components(const Graph& g) {
  std::vector<int> comp(g.num_vertices(), -1);
  int count = 0;
  std::vector<VertexId> queue;
  for (VertexId s = 0; s < g.num_vertices(); ++s) {
    if (comp[s] != -1) continue;
    comp[s] = count;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (EdgeId e : g.incident(queue[head])) {
        const VertexId w = g.other_end(e, queue[head]);
        if (comp[w] == -1) {
          comp[w] = count;
          queue.push_back(w);
        }
      }
    }
    ++count;
  }
  std::vector<GraphBuilder> builders(static_cast<std::size_t>(count));
  for (VertexId v = 0; v < g.num_vertices(); ++v) builders[comp[v]].add_vertex(g.name(v));
  for (const Edge& e : g.edges()) builders[comp[e.u]].add_edge(g.name(e.u), g.name(e.v));
  std::vector<Graph> out;
  for (auto& b : builders) out.push_back(std::move(b).build());
  return out;
}

struct StructuralReport {
  bool bipartite = true;
  std::size_t max_degree = 0;
  ExtNat girth = kInf;
  ExtNat diameter = kInf;  // infinite when disconnected
};

inline StructuralReport structural_report(const Graph& g) {
  StructuralReport r;
  r.bipartite = is_bipartite(g);
  r.max_degree = max_degree(g);
  r.girth = girth(g);
  r.diameter = is_connected(g) ? ExtNat(diameter(g)) : kInf;
  return r;
}

}  // namespace edgedom

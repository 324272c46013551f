#pragma once

#include <vector>

#include "edgedom/graph.hpp"

namespace edgedom {

namespace detail {

inline std::vector<std::uint32_t> incident_member_counts(const Graph& g, const EdgeSet& f) {
  std::vector<std::uint32_t> count(g.num_vertices(), 0);
  for (EdgeId e : f) {
    if (e >= g.num_edges()) {
      throw Error(ErrorKind::kInvalidInput, "set member " + std::to_string(e) + " is not an edge");
    }
    ++count[g.edge(e).u];
    ++count[g.edge(e).v];
  }
  return count;
}

}  // namespace detail

// Every edge outside f shares an endpoint with a member of f.
inline bool is_edge_dominating(const Graph& g, const EdgeSet& f) {
  const auto count = detail::incident_member_counts(g, f);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (f.contains(e)) continue;
    if (count[g.edge(e).u] == 0 && count[g.edge(e).v] == 0) return false;
  }
  return true;
}

// Every edge, members included, shares an endpoint with a distinct member.
inline bool is_total_edge_dominating(const Graph& g, const EdgeSet& f) {
  const auto count = detail::incident_member_counts(g, f);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const std::uint32_t self = f.contains(e) ? 2 : 0;
    if (count[g.edge(e).u] + count[g.edge(e).v] <= self) return false;
  }
  return true;
}

}  // namespace edgedom

#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "edgedom/domination.hpp"
#include "edgedom/error.hpp"
#include "edgedom/graph.hpp"
#include "edgedom/oracle.hpp"
#include "edgedom/shapes.hpp"
#include "edgedom/structure.hpp"
#include "edgedom/tree_dp.hpp"
#include "edgedom/tree_enum.hpp"

namespace edgedom {

enum class VertexLabel : std::uint8_t { kC, kL };
enum class EdgeLabel : std::uint8_t { kS, kL1, kL2 };
enum class VertexClass : std::uint8_t { kA1, kA2, kB, kC };

inline std::string to_string(VertexLabel l) { return l == VertexLabel::kC ? "C" : "L"; }
inline std::string to_string(EdgeLabel l) {
  switch (l) {
    case EdgeLabel::kS: return "S";
    case EdgeLabel::kL1: return "L1";
    case EdgeLabel::kL2: return "L2";
  }
  return "?";
}
inline std::string to_string(VertexClass c) {
  switch (c) {
    case VertexClass::kA1: return "A1";
    case VertexClass::kA2: return "A2";
    case VertexClass::kB: return "B";
    case VertexClass::kC: return "C";
  }
  return "?";
}

struct VertexLabelledTree {
  Graph graph;
  std::vector<VertexLabel> labels;  // by vertex id
};

struct EdgeLabelledTree {
  Graph graph;
  std::vector<EdgeLabel> labels;  // by edge id
};

// Which observation clause failed, numbered from 1 in checker order.
struct ObservationFailure {
  int clause = 0;
  std::string detail;
};

// Interpretations of two operation guards whose wording admits more than one
// reading. With kAnyLeaf the first family produces trees of ratio below 2
// from 11 vertices on; the two O3 readings reach the same states through 16
// vertices.
enum class O1LeafReading : std::uint8_t {
  kLeafOtherThanV,  // u needs a leaf neighbor distinct from v
  kAnyLeaf,         // v itself counts when v is a leaf
};
enum class O3LeafReading : std::uint8_t {
  kAnyEndpoint,  // the L1-edge vw meets some other leaf edge at v or at w
  kFarEndpoint,  // the other leaf edge must meet vw at w
};

struct FamilyOptions {
  O1LeafReading o1 = O1LeafReading::kLeafOtherThanV;
  O3LeafReading o3 = O3LeafReading::kAnyEndpoint;
};

namespace detail {

inline Graph grow(const Graph& g, std::size_t extra_vertices,
                  const std::vector<std::pair<VertexId, VertexId>>& extra_edges) {
  GraphBuilder b(g.num_vertices() + extra_vertices);
  for (const Edge& e : g.edges()) b.add_edge(e.u, e.v);
  for (auto [u, v] : extra_edges) b.add_edge(u, v);
  return std::move(b).build();
}

inline bool is_leaf(const Graph& g, VertexId v) { return g.degree(v) == 1; }

inline bool has_leaf_neighbor(const Graph& g, VertexId v, VertexId except = kNoVertex) {
  for (EdgeId e : g.incident(v)) {
    const VertexId w = g.other_end(e, v);
    if (w != except && is_leaf(g, w)) return true;
  }
  return false;
}

inline void check_vertex(const Graph& g, VertexId v) {
  if (v >= g.num_vertices()) {
    throw Error(ErrorKind::kInvalidInput, "vertex " + std::to_string(v) + " does not exist");
  }
}

inline void inapplicable(const std::string& op, const std::string& why) {
  throw Error(ErrorKind::kOperationInapplicable, op + ": " + why);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Vertex-labelled family (ratio 2).

inline VertexLabelledTree init_family_T() {
  return {from_edges(4, {{0, 1}, {1, 2}, {2, 3}}),
          {VertexLabel::kL, VertexLabel::kC, VertexLabel::kC, VertexLabel::kL}};
}

inline std::optional<ObservationFailure> check_observation_T(const VertexLabelledTree& t) {
  const Graph& g = t.graph;
  if (t.labels.size() != g.num_vertices()) return ObservationFailure{0, "label count mismatch"};
  if (!is_tree(g)) return ObservationFailure{0, "not a tree"};
  auto lab = [&](VertexId v) { return t.labels[v]; };
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (detail::is_leaf(g, v) && lab(v) != VertexLabel::kL) {
      return ObservationFailure{1, "leaf " + g.name(v) + " is not labelled L"};
    }
    if (detail::has_leaf_neighbor(g, v) && !detail::is_leaf(g, v) && lab(v) != VertexLabel::kC) {
      return ObservationFailure{1, "support vertex " + g.name(v) + " is not labelled C"};
    }
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (lab(v) != VertexLabel::kC) continue;
    std::size_t c_neighbors = 0;
    for (EdgeId e : g.incident(v)) c_neighbors += lab(g.other_end(e, v)) == VertexLabel::kC;
    if (c_neighbors != 1) {
      return ObservationFailure{2, "C-vertex " + g.name(v) + " has " +
                                       std::to_string(c_neighbors) + " C-neighbors"};
    }
  }
  for (const Edge& e : g.edges()) {
    if (lab(e.u) == VertexLabel::kL && lab(e.v) == VertexLabel::kL) {
      return ObservationFailure{3, "adjacent L-vertices " + g.name(e.u) + " " + g.name(e.v)};
    }
  }
  for (const Edge& e : g.edges()) {
    if (lab(e.u) != VertexLabel::kC || lab(e.v) != VertexLabel::kC) continue;
    for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      bool inner_l = false;
      for (EdgeId f : g.incident(a)) {
        const VertexId x = g.other_end(f, a);
        if (lab(x) == VertexLabel::kL && !detail::is_leaf(g, x)) inner_l = true;
      }
      if (inner_l && !detail::has_leaf_neighbor(g, b)) {
        return ObservationFailure{4, "C-C edge " + g.name(a) + " " + g.name(b) +
                                         ": " + g.name(b) + " has no leaf neighbor"};
      }
    }
  }
  return std::nullopt;
}

// Reason the first operation is not applicable at v, if any.
inline std::optional<std::string> why_not_T_O1(const VertexLabelledTree& t, VertexId v,
                                               const FamilyOptions& options = {}) {
  const Graph& g = t.graph;
  detail::check_vertex(g, v);
  if (t.labels[v] != VertexLabel::kL) return "vertex is not labelled L";
  const std::vector<std::uint32_t> dist = detail::bfs_distances(g, v);
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    if (dist[x] == 2 && t.labels[x] == VertexLabel::kC && !detail::has_leaf_neighbor(g, x)) {
      return "condition 1: C-vertex " + g.name(x) + " at distance 2 has no leaf neighbor";
    }
  }
  for (EdgeId e : g.incident(v)) {
    const VertexId u = g.other_end(e, v);
    if (t.labels[u] != VertexLabel::kC) continue;
    for (EdgeId f : g.incident(u)) {
      const VertexId w = g.other_end(f, u);
      if (w == v || t.labels[w] != VertexLabel::kC) continue;
      const VertexId except = options.o1 == O1LeafReading::kLeafOtherThanV ? v : kNoVertex;
      if (detail::has_leaf_neighbor(g, u, except)) continue;
      bool rest_leaves = true;
      for (EdgeId h : g.incident(w)) {
        const VertexId x = g.other_end(h, w);
        if (x != u && !detail::is_leaf(g, x)) rest_leaves = false;
      }
      if (!rest_leaves) {
        return "condition 2: C-C edge " + g.name(u) + " " + g.name(w) +
               " has no spare leaf at " + g.name(u) + " and a non-leaf beyond " + g.name(w);
      }
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> why_not_T_O2(const VertexLabelledTree& t, VertexId v) {
  detail::check_vertex(t.graph, v);
  if (t.labels[v] != VertexLabel::kC) return "vertex is not labelled C";
  return std::nullopt;
}

// Glues a labelled P4 onto v by one of its ends.
inline VertexLabelledTree apply_T_O1(const VertexLabelledTree& t, VertexId v,
                                     const FamilyOptions& options = {}) {
  if (auto why = why_not_T_O1(t, v, options)) detail::inapplicable("T/O1", *why);
  const auto n = static_cast<VertexId>(t.graph.num_vertices());
  VertexLabelledTree out{detail::grow(t.graph, 3, {{v, n}, {n, n + 1}, {n + 1, n + 2}}),
                         t.labels};
  out.labels.insert(out.labels.end(), {VertexLabel::kC, VertexLabel::kC, VertexLabel::kL});
  return out;
}

// Pendant L-vertex at a C-vertex.
inline VertexLabelledTree apply_T_O2(const VertexLabelledTree& t, VertexId v) {
  if (auto why = why_not_T_O2(t, v)) detail::inapplicable("T/O2", *why);
  const auto n = static_cast<VertexId>(t.graph.num_vertices());
  VertexLabelledTree out{detail::grow(t.graph, 1, {{v, n}}), t.labels};
  out.labels.push_back(VertexLabel::kL);
  return out;
}

inline EdgeSet cc_edge_set(const VertexLabelledTree& t) {
  if (auto bad = check_observation_T(t)) {
    throw Error(ErrorKind::kInvalidLabelledTree, "clause " + std::to_string(bad->clause) +
                                                     ": " + bad->detail);
  }
  std::vector<EdgeId> ids;
  for (EdgeId e = 0; e < t.graph.num_edges(); ++e) {
    const Edge& ed = t.graph.edge(e);
    if (t.labels[ed.u] == VertexLabel::kC && t.labels[ed.v] == VertexLabel::kC) ids.push_back(e);
  }
  return EdgeSet(std::move(ids));
}

// ---------------------------------------------------------------------------
// Edge-labelled family (ratio 1).

namespace detail {

inline std::size_t s_degree(const EdgeLabelledTree& t, VertexId v) {
  std::size_t s = 0;
  for (EdgeId e : t.graph.incident(v)) s += t.labels[e] == EdgeLabel::kS;
  return s;
}

// Edges sharing an endpoint with e, e excluded.
template <class F>
void for_each_adjacent(const Graph& g, EdgeId e, F&& f) {
  for (VertexId x : {g.edge(e).u, g.edge(e).v}) {
    for (EdgeId h : g.incident(x)) {
      if (h != e) f(h);
    }
  }
}

}  // namespace detail

inline VertexClass vertex_class(const EdgeLabelledTree& t, VertexId v) {
  detail::check_vertex(t.graph, v);
  const std::size_t s = detail::s_degree(t, v);
  if (s == 1) return VertexClass::kA1;
  if (s >= 2) return VertexClass::kA2;
  bool all_l2 = t.graph.degree(v) > 0;
  for (EdgeId e : t.graph.incident(v)) all_l2 = all_l2 && t.labels[e] == EdgeLabel::kL2;
  return all_l2 ? VertexClass::kB : VertexClass::kC;
}

inline std::vector<VertexClass> vertex_classes(const EdgeLabelledTree& t) {
  std::vector<VertexClass> out(t.graph.num_vertices());
  for (VertexId v = 0; v < out.size(); ++v) out[v] = vertex_class(t, v);
  return out;
}

// Labels a diameter-4 tree: support edges S, leaf edges meeting at least two
// non-leaf edges L2, remaining leaf edges L1.
inline EdgeLabelledTree init_family_Tt(const Graph& shape) {
  if (!is_tree(shape)) throw Error(ErrorKind::kInvalidInput, "shape is not a tree");
  if (diameter(shape) != 4) {
    throw Error(ErrorKind::kInvalidInput,
                "shape has diameter " + std::to_string(diameter(shape)) + ", expected 4");
  }
  EdgeLabelledTree t{shape, std::vector<EdgeLabel>(shape.num_edges())};
  for (EdgeId e = 0; e < shape.num_edges(); ++e) {
    if (!shape.is_leaf_edge(e)) {
      t.labels[e] = EdgeLabel::kS;
      continue;
    }
    std::size_t non_leaf = 0;
    detail::for_each_adjacent(shape, e, [&](EdgeId h) { non_leaf += !shape.is_leaf_edge(h); });
    t.labels[e] = non_leaf >= 2 ? EdgeLabel::kL2 : EdgeLabel::kL1;
  }
  return t;
}

// Checks the four edge-label invariants. With `strict`, also checks that a
// leaf edge meeting exactly one non-leaf edge is L1 and that edge is S
// (reported as clause 5).
inline std::optional<ObservationFailure> check_observation_Tt(const EdgeLabelledTree& t,
                                                              bool strict = false) {
  const Graph& g = t.graph;
  if (t.labels.size() != g.num_edges()) return ObservationFailure{0, "label count mismatch"};
  if (!is_tree(g)) return ObservationFailure{0, "not a tree"};
  auto edge_name = [&](EdgeId e) { return g.name(g.edge(e).u) + "-" + g.name(g.edge(e).v); };

  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (t.labels[e] != EdgeLabel::kL1) continue;
    const std::size_t a = detail::s_degree(t, g.edge(e).u);
    const std::size_t b = detail::s_degree(t, g.edge(e).v);
    const bool ok = (a == 1 && b != 1) || (b == 1 && a != 1);
    if (!ok) return ObservationFailure{1, "L1-edge " + edge_name(e) + " endpoint S-degrees " +
                                              std::to_string(a) + "," + std::to_string(b)};
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (t.labels[e] != EdgeLabel::kL2) continue;
    std::size_t s = 0;
    detail::for_each_adjacent(g, e, [&](EdgeId h) { s += t.labels[h] == EdgeLabel::kS; });
    if (s < 2) return ObservationFailure{2, "L2-edge " + edge_name(e) + " meets " +
                                               std::to_string(s) + " S-edges"};
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (g.is_leaf_edge(e) && t.labels[e] == EdgeLabel::kS) {
      return ObservationFailure{3, "leaf edge " + edge_name(e) + " is labelled S"};
    }
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    bool meets_s = false;
    detail::for_each_adjacent(g, e, [&](EdgeId h) { meets_s = meets_s || t.labels[h] == EdgeLabel::kS; });
    if (!meets_s) return ObservationFailure{4, "edge " + edge_name(e) + " meets no S-edge"};
  }
  // S-components: a forest whose components are stars with at least two edges.
  {
    std::vector<VertexId> comp(g.num_vertices(), kNoVertex);
    for (VertexId s = 0; s < g.num_vertices(); ++s) {
      if (comp[s] != kNoVertex || detail::s_degree(t, s) == 0) continue;
      std::vector<VertexId> stack{s};
      std::vector<VertexId> members;
      comp[s] = s;
      std::size_t edges = 0;
      while (!stack.empty()) {
        const VertexId x = stack.back();
        stack.pop_back();
        members.push_back(x);
        for (EdgeId e : g.incident(x)) {
          if (t.labels[e] != EdgeLabel::kS) continue;
          const VertexId y = g.other_end(e, x);
          if (x < y) ++edges;
          if (comp[y] == kNoVertex) {
            comp[y] = s;
            stack.push_back(y);
          }
        }
      }
      std::size_t centers = 0;
      for (VertexId x : members) centers += detail::s_degree(t, x) >= 2;
      if (edges < 2 || centers != 1) {
        return ObservationFailure{4, "S-component at " + g.name(s) + " is not a star with " +
                                         "at least two edges"};
      }
    }
  }
  if (strict) {
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (!g.is_leaf_edge(e)) continue;
      std::vector<EdgeId> inner;
      detail::for_each_adjacent(g, e, [&](EdgeId h) {
        if (!g.is_leaf_edge(h)) inner.push_back(h);
      });
      if (inner.size() != 1) continue;
      if (t.labels[e] != EdgeLabel::kL1 || t.labels[inner[0]] != EdgeLabel::kS) {
        return ObservationFailure{5, "leaf edge " + edge_name(e) + " next to one non-leaf edge " +
                                         edge_name(inner[0]) + " is " + to_string(t.labels[e]) +
                                         " beside " + to_string(t.labels[inner[0]])};
      }
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> why_not_Tt_O1(const EdgeLabelledTree& t, VertexId v) {
  const VertexClass c = vertex_class(t, v);
  if (c != VertexClass::kA1 && c != VertexClass::kA2) return "vertex is in " + to_string(c);
  return std::nullopt;
}

inline std::optional<std::string> why_not_Tt_O2(const EdgeLabelledTree& t, VertexId v) {
  const VertexClass c = vertex_class(t, v);
  if (c != VertexClass::kA2) return "vertex is in " + to_string(c);
  return std::nullopt;
}

inline std::optional<std::string> why_not_Tt_O3(const EdgeLabelledTree& t, VertexId v,
                                                const FamilyOptions& options = {}) {
  const Graph& g = t.graph;
  const VertexClass c = vertex_class(t, v);
  if (c == VertexClass::kA1) return "vertex is in A1";
  if (c != VertexClass::kC) return std::nullopt;
  for (EdgeId e : g.incident(v)) {
    if (t.labels[e] != EdgeLabel::kL1) continue;
    const VertexId w = g.other_end(e, v);
    bool near_leaf = false;
    for (EdgeId h : g.incident(w)) near_leaf = near_leaf || (h != e && g.is_leaf_edge(h));
    if (options.o3 == O3LeafReading::kAnyEndpoint) {
      for (EdgeId h : g.incident(v)) near_leaf = near_leaf || (h != e && g.is_leaf_edge(h));
    }
    if (near_leaf) continue;
    bool pattern = false;
    for (EdgeId wx : g.incident(w)) {
      if (wx == e || t.labels[wx] != EdgeLabel::kL1) continue;
      const VertexId x = g.other_end(wx, w);
      bool rest_l2 = true;
      bool has_xy = false;
      for (EdgeId xy : g.incident(x)) {
        if (xy == wx) continue;
        if (t.labels[xy] != EdgeLabel::kL2) rest_l2 = false;
        has_xy = true;
      }
      if (rest_l2 && has_xy) pattern = true;
    }
    if (!pattern) {
      return "L1-edge " + g.name(v) + "-" + g.name(w) +
             " meets no leaf edge and lies on no L1,L1,L2 path";
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> why_not_Tt_O4(const EdgeLabelledTree& t, VertexId v) {
  const VertexClass c = vertex_class(t, v);
  if (c != VertexClass::kB) return "vertex is in " + to_string(c);
  return std::nullopt;
}

inline std::optional<std::string> why_not_Tt_O5(const EdgeLabelledTree& t, VertexId v) {
  detail::check_vertex(t.graph, v);
  return std::nullopt;
}

namespace detail {

inline EdgeLabelledTree extend(const EdgeLabelledTree& t, std::size_t extra_vertices,
                               const std::vector<std::pair<VertexId, VertexId>>& edges,
                               const std::vector<EdgeLabel>& labels) {
  EdgeLabelledTree out{grow(t.graph, extra_vertices, edges), t.labels};
  out.labels.insert(out.labels.end(), labels.begin(), labels.end());
  return out;
}

}  // namespace detail

// Pendant edge at v: L1 when v is in A1, L2 when v is in A2.
inline EdgeLabelledTree apply_Tt_O1(const EdgeLabelledTree& t, VertexId v) {
  if (auto why = why_not_Tt_O1(t, v)) detail::inapplicable("Tt/O1", *why);
  const auto n = static_cast<VertexId>(t.graph.num_vertices());
  const EdgeLabel l = vertex_class(t, v) == VertexClass::kA1 ? EdgeLabel::kL1 : EdgeLabel::kL2;
  return detail::extend(t, 1, {{v, n}}, {l});
}

// v-u1 (S), u1-u2 (L1).
inline EdgeLabelledTree apply_Tt_O2(const EdgeLabelledTree& t, VertexId v) {
  if (auto why = why_not_Tt_O2(t, v)) detail::inapplicable("Tt/O2", *why);
  const auto n = static_cast<VertexId>(t.graph.num_vertices());
  return detail::extend(t, 2, {{v, n}, {n, n + 1}}, {EdgeLabel::kS, EdgeLabel::kL1});
}

// Path u1..u5 hung from v at u2.
inline EdgeLabelledTree apply_Tt_O3(const EdgeLabelledTree& t, VertexId v,
                                    const FamilyOptions& options = {}) {
  if (auto why = why_not_Tt_O3(t, v, options)) detail::inapplicable("Tt/O3", *why);
  const auto u1 = static_cast<VertexId>(t.graph.num_vertices());
  const VertexId u2 = u1 + 1, u3 = u1 + 2, u4 = u1 + 3, u5 = u1 + 4;
  return detail::extend(t, 5, {{v, u2}, {u1, u2}, {u2, u3}, {u3, u4}, {u4, u5}},
                        {EdgeLabel::kL1, EdgeLabel::kL1, EdgeLabel::kS, EdgeLabel::kS,
                         EdgeLabel::kL1});
}

// Path u1..u4 hung from v at u1.
inline EdgeLabelledTree apply_Tt_O4(const EdgeLabelledTree& t, VertexId v) {
  if (auto why = why_not_Tt_O4(t, v)) detail::inapplicable("Tt/O4", *why);
  const auto u1 = static_cast<VertexId>(t.graph.num_vertices());
  const VertexId u2 = u1 + 1, u3 = u1 + 2, u4 = u1 + 3;
  return detail::extend(t, 4, {{v, u1}, {u1, u2}, {u2, u3}, {u3, u4}},
                        {EdgeLabel::kL1, EdgeLabel::kS, EdgeLabel::kS, EdgeLabel::kL1});
}

// Path u1..u5 hung from v at its middle vertex.
inline EdgeLabelledTree apply_Tt_O5(const EdgeLabelledTree& t, VertexId v) {
  if (auto why = why_not_Tt_O5(t, v)) detail::inapplicable("Tt/O5", *why);
  const auto u1 = static_cast<VertexId>(t.graph.num_vertices());
  const VertexId u2 = u1 + 1, u3 = u1 + 2, u4 = u1 + 3, u5 = u1 + 4;
  return detail::extend(t, 5, {{v, u3}, {u1, u2}, {u2, u3}, {u3, u4}, {u4, u5}},
                        {EdgeLabel::kL2, EdgeLabel::kL1, EdgeLabel::kS, EdgeLabel::kS,
                         EdgeLabel::kL1});
}

inline EdgeSet s_edge_set(const EdgeLabelledTree& t) {
  if (auto bad = check_observation_Tt(t)) {
    throw Error(ErrorKind::kInvalidLabelledTree, "clause " + std::to_string(bad->clause) +
                                                     ": " + bad->detail);
  }
  std::vector<EdgeId> ids;
  for (EdgeId e = 0; e < t.graph.num_edges(); ++e) {
    if (t.labels[e] == EdgeLabel::kS) ids.push_back(e);
  }
  return EdgeSet(std::move(ids));
}

// ---------------------------------------------------------------------------
// Ratio checks.

enum class Ratio : std::uint8_t { kEqual, kDouble, kNeither };

inline std::string to_string(Ratio r) {
  switch (r) {
    case Ratio::kEqual: return "equal";
    case Ratio::kDouble: return "double";
    case Ratio::kNeither: return "neither";
  }
  return "?";
}

struct RatioReport {
  ExtNat gamma;
  ExtNat gamma_t;
  Ratio ratio = Ratio::kNeither;
  bool star = false;
  bool double_star = false;
};

inline bool is_star(const Graph& t) {
  if (t.num_edges() == 0 || !is_tree(t)) return false;
  return max_degree(t) == t.num_edges();
}

// Tree with two adjacent centers and every other vertex a leaf; stars are
// not counted.
inline bool is_double_star(const Graph& t) {
  if (t.num_edges() < 3 || !is_tree(t) || is_star(t)) return false;
  return diameter(t) == 3;
}

inline RatioReport check_ratio(const Graph& t) {
  const RootedTree rt = build_rooted(t);
  RatioReport r;
  r.gamma = gamma_tree(rt).value;
  r.gamma_t = gamma_t_tree(rt).value;
  if (r.gamma_t == r.gamma) {
    r.ratio = Ratio::kEqual;
  } else if (r.gamma.is_finite() && r.gamma_t == ExtNat(2 * r.gamma.value())) {
    r.ratio = Ratio::kDouble;
  }
  r.star = is_star(t);
  r.double_star = is_double_star(t);
  return r;
}

enum class MinSetProperty : std::uint8_t {
  kDisjointClosedNeighborhoods,  // for minimum ED-sets of ratio-2 trees
  kNontrivialStars,              // for minimum TED-sets of ratio-1 trees
};

// Checks that f is a minimum set of the matching kind and then tests the
// structural property. Throws kInvalidCertificate when f is not minimum.
inline bool check_min_set_structure(const Graph& t, const EdgeSet& f, MinSetProperty which) {
  const RootedTree rt = build_rooted(t);
  for (EdgeId e : f) {
    if (e >= t.num_edges()) throw Error(ErrorKind::kInvalidCertificate, "edge id out of range");
  }
  if (which == MinSetProperty::kDisjointClosedNeighborhoods) {
    if (!is_edge_dominating(t, f)) {
      throw Error(ErrorKind::kInvalidCertificate, "set is not edge dominating");
    }
    if (ExtNat(f.size()) != gamma_tree(rt).value) {
      throw Error(ErrorKind::kInvalidCertificate, "set is not a minimum ED-set");
    }
    // Closed neighborhoods of e and e' meet iff some edge touches both,
    // i.e. they are within distance two in the line graph.
    std::vector<std::uint32_t> touch(t.num_edges(), 0);
    for (EdgeId e : f) {
      std::vector<EdgeId> closed{e};
      detail::for_each_adjacent(t, e, [&](EdgeId h) { closed.push_back(h); });
      for (EdgeId h : closed) {
        if (++touch[h] > 1) return false;
      }
    }
    return true;
  }
  if (!is_total_edge_dominating(t, f)) {
    throw Error(ErrorKind::kInvalidCertificate, "set is not total edge dominating");
  }
  if (ExtNat(f.size()) != gamma_t_tree(rt).value) {
    throw Error(ErrorKind::kInvalidCertificate, "set is not a minimum TED-set");
  }
  std::vector<std::size_t> deg(t.num_vertices(), 0);
  for (EdgeId e : f) {
    ++deg[t.edge(e).u];
    ++deg[t.edge(e).v];
  }
  // In a forest, a component is a star with >= 2 edges iff exactly one of
  // its vertices has degree >= 2 and it has at least two edges. Walk each.
  std::vector<bool> seen(t.num_vertices(), false);
  for (VertexId s = 0; s < t.num_vertices(); ++s) {
    if (seen[s] || deg[s] == 0) continue;
    std::vector<VertexId> stack{s};
    seen[s] = true;
    std::size_t centers = 0, edges = 0;
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      centers += deg[x] >= 2;
      for (EdgeId e : t.incident(x)) {
        if (!f.contains(e)) continue;
        const VertexId y = t.other_end(e, x);
        if (x < y) ++edges;
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
    if (centers != 1 || edges < 2) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Random generation and replay.

enum class FamilyKind : std::uint8_t { kT, kTt };

struct TraceStep {
  int op = 0;  // 1-based operation number within the family
  VertexId site = 0;
  bool operator==(const TraceStep&) const = default;
};

using LabelledTree = std::variant<VertexLabelledTree, EdgeLabelledTree>;

struct Generated {
  LabelledTree tree;
  Graph initial;  // unlabelled starting tree, needed for replay
  std::vector<TraceStep> trace;
};

inline std::string canonical_form(const VertexLabelledTree& t) {
  return canonical_form(
      t.graph, [&](VertexId v) { return to_string(t.labels[v]); },
      [](EdgeId) { return std::string(); });
}

inline std::string canonical_form(const EdgeLabelledTree& t) {
  return canonical_form(
      t.graph, [](VertexId) { return std::string(); },
      [&](EdgeId e) { return to_string(t.labels[e]); });
}

// Random diameter-4 tree: a center with 2..4 support neighbors (each with
// 1..3 leaves) plus 0..2 leaves of its own.
inline Graph random_diameter4_tree(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> supports(2, 4), leaves(1, 3), own(0, 2);
  std::vector<std::pair<VertexId, VertexId>> edges;
  VertexId next = 1;
  const int k = supports(rng);
  for (int i = 0; i < k; ++i) {
    const VertexId s = next++;
    edges.emplace_back(0, s);
    const int l = leaves(rng);
    for (int j = 0; j < l; ++j) edges.emplace_back(s, next++);
  }
  const int o = own(rng);
  for (int j = 0; j < o; ++j) edges.emplace_back(0, next++);
  return from_edges(next, edges);
}

inline VertexLabelledTree apply_T(const VertexLabelledTree& t, TraceStep step,
                                  const FamilyOptions& options = {}) {
  switch (step.op) {
    case 1: return apply_T_O1(t, step.site, options);
    case 2: return apply_T_O2(t, step.site);
  }
  throw Error(ErrorKind::kInvalidInput, "unknown operation " + std::to_string(step.op));
}

inline EdgeLabelledTree apply_Tt(const EdgeLabelledTree& t, TraceStep step,
                                 const FamilyOptions& options = {}) {
  switch (step.op) {
    case 1: return apply_Tt_O1(t, step.site);
    case 2: return apply_Tt_O2(t, step.site);
    case 3: return apply_Tt_O3(t, step.site, options);
    case 4: return apply_Tt_O4(t, step.site);
    case 5: return apply_Tt_O5(t, step.site);
  }
  throw Error(ErrorKind::kInvalidInput, "unknown operation " + std::to_string(step.op));
}

inline std::vector<TraceStep> applicable_T(const VertexLabelledTree& t,
                                           const FamilyOptions& options = {}) {
  std::vector<TraceStep> out;
  for (VertexId v = 0; v < t.graph.num_vertices(); ++v) {
    if (!why_not_T_O1(t, v, options)) out.push_back({1, v});
    if (!why_not_T_O2(t, v)) out.push_back({2, v});
  }
  return out;
}

inline std::vector<TraceStep> applicable_Tt(const EdgeLabelledTree& t,
                                            const FamilyOptions& options = {}) {
  std::vector<TraceStep> out;
  for (VertexId v = 0; v < t.graph.num_vertices(); ++v) {
    if (!why_not_Tt_O1(t, v)) out.push_back({1, v});
    if (!why_not_Tt_O2(t, v)) out.push_back({2, v});
    if (!why_not_Tt_O3(t, v, options)) out.push_back({3, v});
    if (!why_not_Tt_O4(t, v)) out.push_back({4, v});
    if (!why_not_Tt_O5(t, v)) out.push_back({5, v});
  }
  return out;
}

inline Generated generate(FamilyKind kind, std::uint64_t seed, std::size_t budget,
                          const FamilyOptions& options = {}) {
  std::mt19937_64 rng(seed);
  auto pick = [&](const std::vector<TraceStep>& steps) {
    std::uniform_int_distribution<std::size_t> d(0, steps.size() - 1);
    return steps[d(rng)];
  };
  Generated out;
  if (kind == FamilyKind::kT) {
    VertexLabelledTree t = init_family_T();
    out.initial = t.graph;
    for (std::size_t i = 0; i < budget; ++i) {
      const auto steps = applicable_T(t, options);
      if (steps.empty()) break;
      const TraceStep s = pick(steps);
      t = apply_T(t, s, options);
      out.trace.push_back(s);
    }
    out.tree = std::move(t);
  } else {
    EdgeLabelledTree t = init_family_Tt(random_diameter4_tree(rng));
    out.initial = t.graph;
    for (std::size_t i = 0; i < budget; ++i) {
      const auto steps = applicable_Tt(t, options);
      if (steps.empty()) break;
      const TraceStep s = pick(steps);
      t = apply_Tt(t, s, options);
      out.trace.push_back(s);
    }
    out.tree = std::move(t);
  }
  return out;
}

inline LabelledTree replay(FamilyKind kind, const Graph& initial,
                           const std::vector<TraceStep>& trace,
                           const FamilyOptions& options = {}) {
  if (kind == FamilyKind::kT) {
    VertexLabelledTree t = init_family_T();
    if (canonical_form(initial) != canonical_form(t.graph)) {
      throw Error(ErrorKind::kInvalidInput, "initial tree is not a path on 4 vertices");
    }
    for (const TraceStep& s : trace) t = apply_T(t, s, options);
    return t;
  }
  EdgeLabelledTree t = init_family_Tt(initial);
  for (const TraceStep& s : trace) t = apply_Tt(t, s, options);
  return t;
}

// ---------------------------------------------------------------------------
// Reachability over operation applications.

struct Reachable {
  // Unlabelled canonical forms of every tree reached, by vertex count.
  std::vector<std::unordered_set<std::string>> shapes;
  std::size_t labelled_states = 0;
};

// Breadth-first search over labelled trees up to `max_n` vertices, starting
// from the labelled P4. Each new state is passed to `visit` if given.
inline Reachable reachable_T(std::size_t max_n, const FamilyOptions& options = {},
                             const std::function<void(const VertexLabelledTree&)>& visit = {}) {
  Reachable r;
  r.shapes.resize(max_n + 1);
  std::unordered_set<std::string> seen;
  std::deque<VertexLabelledTree> queue;
  auto push = [&](VertexLabelledTree t) {
    if (t.graph.num_vertices() > max_n) return;
    if (!seen.insert(canonical_form(t)).second) return;
    r.shapes[t.graph.num_vertices()].insert(canonical_form(t.graph));
    if (visit) visit(t);
    queue.push_back(std::move(t));
  };
  push(init_family_T());
  while (!queue.empty()) {
    VertexLabelledTree t = std::move(queue.front());
    queue.pop_front();
    for (const TraceStep& s : applicable_T(t, options)) push(apply_T(t, s, options));
  }
  r.labelled_states = seen.size();
  return r;
}

// Same for the edge-labelled family, seeded with every diameter-4 tree up to
// `max_n` vertices.
inline Reachable reachable_Tt(std::size_t max_n, const FamilyOptions& options = {},
                              const std::function<void(const EdgeLabelledTree&)>& visit = {}) {
  Reachable r;
  r.shapes.resize(max_n + 1);
  std::unordered_set<std::string> seen;
  std::deque<EdgeLabelledTree> queue;
  auto push = [&](EdgeLabelledTree t) {
    if (t.graph.num_vertices() > max_n) return;
    if (!seen.insert(canonical_form(t)).second) return;
    r.shapes[t.graph.num_vertices()].insert(canonical_form(t.graph));
    if (visit) visit(t);
    queue.push_back(std::move(t));
  };
  const auto trees = enumerate_free_trees(max_n);
  for (const auto& layer : trees) {
    for (const Graph& g : layer) {
      if (g.num_vertices() >= 5 && diameter(g) == 4) push(init_family_Tt(g));
    }
  }
  while (!queue.empty()) {
    EdgeLabelledTree t = std::move(queue.front());
    queue.pop_front();
    for (const TraceStep& s : applicable_Tt(t, options)) push(apply_Tt(t, s, options));
  }
  r.labelled_states = seen.size();
  return r;
}

}  // namespace edgedom

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "edgedom/error.hpp"

namespace edgedom {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

struct Edge {
  VertexId u;
  VertexId v;
};

// Immutable simple undirected graph. Vertex and edge ids are dense and
// assigned in insertion order. Incidence lists are stored in CSR form and
// sorted by edge id.
class Graph {
 public:
  Graph() = default;

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return edges_.size(); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const EdgeId> incident(VertexId v) const {
    return {incidence_.data() + offsets_[v], incidence_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  VertexId other_end(EdgeId e, VertexId v) const {
    return edges_[e].u == v ? edges_[e].v : edges_[e].u;
  }

  bool has_names() const { return !names_.empty(); }
  std::string name(VertexId v) const {
    return names_.empty() ? std::to_string(v) : names_[v];
  }

  std::optional<VertexId> find_vertex(std::string_view name) const {
    if (names_.empty()) {
      if (name.empty() || name.size() > 9) return std::nullopt;
      VertexId id = 0;
      for (char c : name) {
        if (c < '0' || c > '9') return std::nullopt;
        id = id * 10 + static_cast<VertexId>(c - '0');
      }
      if (name.size() > 1 && name[0] == '0') return std::nullopt;
      if (id >= num_vertices()) return std::nullopt;
      return id;
    }
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const {
    if (a >= num_vertices() || b >= num_vertices()) return std::nullopt;
    if (degree(a) > degree(b)) std::swap(a, b);
    for (EdgeId e : incident(a)) {
      if (other_end(e, a) == b) return e;
    }
    return std::nullopt;
  }

  bool is_leaf_edge(EdgeId e) const {
    return degree(edges_[e].u) == 1 || degree(edges_[e].v) == 1;
  }

 private:
  friend class GraphBuilder;

  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<EdgeId> incidence_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> by_name_;
};

class GraphBuilder {
 public:
  GraphBuilder() = default;

  // Pre-creates `n` anonymous vertices named by their index.
  explicit GraphBuilder(std::size_t n) : num_vertices_(n) {}

  VertexId add_vertex(std::string name) {
    if (anonymous_used()) {
      throw Error(ErrorKind::kInvalidInput, "cannot mix named and anonymous vertices");
    }
    if (by_name_.count(name) != 0) {
      throw Error(ErrorKind::kInvalidInput, "duplicate vertex '" + name + "'");
    }
    VertexId id = static_cast<VertexId>(names_.size());
    by_name_.emplace(name, id);
    names_.push_back(std::move(name));
    return id;
  }

  // Get-or-create by name.
  VertexId vertex(std::string_view name) {
    auto it = by_name_.find(std::string(name));
    if (it != by_name_.end()) return it->second;
    return add_vertex(std::string(name));
  }

  bool has_vertex(std::string_view name) const {
    return by_name_.count(std::string(name)) != 0;
  }

  std::size_t num_vertices() const { return names_.empty() ? num_vertices_ : names_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  EdgeId add_edge(VertexId u, VertexId v) {
    const std::size_t n = num_vertices();
    if (u >= n || v >= n) {
      throw Error(ErrorKind::kInvalidInput, "edge endpoint is not a declared vertex");
    }
    if (u == v) {
      throw Error(ErrorKind::kInvalidInput, "self-loop at vertex " + label(u));
    }
    const std::uint64_t key = pair_key(u, v);
    if (!seen_.insert(key).second) {
      throw Error(ErrorKind::kInvalidInput,
                  "duplicate edge " + label(u) + " " + label(v));
    }
    edges_.push_back({u, v});
    return static_cast<EdgeId>(edges_.size() - 1);
  }

  EdgeId add_edge(std::string_view u, std::string_view v) {
    VertexId a = vertex(u);
    VertexId b = vertex(v);
    return add_edge(a, b);
  }

  Graph build() && {
    Graph g;
    const std::size_t n = num_vertices();
    g.edges_ = std::move(edges_);
    g.offsets_.assign(n + 1, 0);
    for (const Edge& e : g.edges_) {
      ++g.offsets_[e.u + 1];
      ++g.offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.incidence_.resize(2 * g.edges_.size());
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (EdgeId e = 0; e < g.edges_.size(); ++e) {
      g.incidence_[fill[g.edges_[e].u]++] = e;
      g.incidence_[fill[g.edges_[e].v]++] = e;
    }
    g.names_ = std::move(names_);
    g.by_name_ = std::move(by_name_);
    return g;
  }

 private:
  bool anonymous_used() const { return names_.empty() && num_vertices_ > 0; }

  std::string label(VertexId v) const {
    return names_.empty() ? std::to_string(v) : names_[v];
  }

  static std::uint64_t pair_key(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }

  std::size_t num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> by_name_;
  std::unordered_set<std::uint64_t> seen_;
};

// Sorted, duplicate-free set of edge ids of one graph.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::vector<EdgeId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }
  EdgeSet(std::initializer_list<EdgeId> ids) : EdgeSet(std::vector<EdgeId>(ids)) {}

  // Trusts that `ids` is strictly ascending.
  static EdgeSet from_sorted(std::vector<EdgeId> ids) {
    EdgeSet s;
    s.ids_ = std::move(ids);
    return s;
  }

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool contains(EdgeId e) const { return std::binary_search(ids_.begin(), ids_.end(), e); }

  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  const std::vector<EdgeId>& ids() const { return ids_; }

  bool operator==(const EdgeSet&) const = default;

 private:
  std::vector<EdgeId> ids_;
};

// Numeric-aware name order: all-digit names compare by value, and sort
// before non-numeric names.
inline bool natural_less(const std::string& a, const std::string& b) {
  auto numeric = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  const bool na = numeric(a);
  const bool nb = numeric(b);
  if (na && nb) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
  if (na != nb) return na;
  return a < b;
}

// Endpoint-name pairs, each pair ordered and the list sorted.
inline std::vector<std::pair<std::string, std::string>> endpoint_pairs(
    const Graph& g, const EdgeSet& f) {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(f.size());
  for (EdgeId e : f) {
    std::string a = g.name(g.edge(e).u);
    std::string b = g.name(g.edge(e).v);
    if (natural_less(b, a)) std::swap(a, b);
    out.emplace_back(std::move(a), std::move(b));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return natural_less(x.first, y.first);
    return natural_less(x.second, y.second);
  });
  return out;
}

}  // namespace edgedom

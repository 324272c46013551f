#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "edgedom/graph.hpp"

namespace edgedom {

// Graph on vertices 0..n-1 from an index edge list.
inline Graph from_edges(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
  GraphBuilder b(n);
  for (auto [u, v] : edges) b.add_edge(u, v);
  return std::move(b).build();
}

// Path with n vertices v0..v(n-1); edge i joins v_i and v_{i+1}.
inline Graph make_path(std::size_t n) {
  GraphBuilder b(n);
  for (VertexId i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1);
  return std::move(b).build();
}

inline Graph make_cycle(std::size_t n) {
  GraphBuilder b(n);
  for (VertexId i = 0; i < n; ++i) b.add_edge(i, static_cast<VertexId>((i + 1) % n));
  return std::move(b).build();
}

// S_{1,k}: center 0 with leaves 1..k.
inline Graph make_star(std::size_t k) {
  GraphBuilder b(k + 1);
  for (VertexId i = 1; i <= k; ++i) b.add_edge(0, i);
  return std::move(b).build();
}

// Centers 0 and 1 joined, with a and b pendant leaves respectively.
inline Graph make_double_star(std::size_t a, std::size_t bl) {
  GraphBuilder b(2 + a + bl);
  b.add_edge(0, 1);
  VertexId next = 2;
  for (std::size_t i = 0; i < a; ++i) b.add_edge(0, next++);
  for (std::size_t i = 0; i < bl; ++i) b.add_edge(1, next++);
  return std::move(b).build();
}

// Center 0 with `legs` paths of `length` edges each.
inline Graph make_spider(std::size_t legs, std::size_t length) {
  GraphBuilder b(1 + legs * length);
  VertexId next = 1;
  for (std::size_t l = 0; l < legs; ++l) {
    VertexId prev = 0;
    for (std::size_t i = 0; i < length; ++i) {
      b.add_edge(prev, next);
      prev = next++;
    }
  }
  return std::move(b).build();
}

// Vertex i >= 1 attaches to a uniformly random earlier vertex.
inline Graph random_recursive_tree(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GraphBuilder b(n);
  for (VertexId i = 1; i < n; ++i) {
    std::uniform_int_distribution<VertexId> pick(0, i - 1);
    b.add_edge(pick(rng), i);
  }
  return std::move(b).build();
}

}  // namespace edgedom

#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "edgedom/error.hpp"
#include "edgedom/families.hpp"
#include "edgedom/graph.hpp"

namespace edgedom {

namespace detail {

inline bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

inline std::vector<std::string> tokens_of(const std::string& line) {
  const std::string body = line.substr(0, line.find('#'));
  std::istringstream is(body);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(std::move(tok));
  return out;
}

[[noreturn]] inline void parse_fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": " + what);
}

inline void check_identifier(std::size_t line_no, const std::string& tok) {
  if (!valid_identifier(tok)) parse_fail(line_no, "invalid vertex name '" + tok + "'");
}

inline void add_edge_at(GraphBuilder& b, std::size_t line_no, const std::string& u,
                        const std::string& v) {
  check_identifier(line_no, u);
  check_identifier(line_no, v);
  try {
    b.add_edge(u, v);
  } catch (const Error& e) {
    throw Error(e.kind(), "line " + std::to_string(line_no) + ": " + e.message());
  }
}

}  // namespace detail

// Reads `u v` lines. Vertices are created in order of first appearance.
inline Graph parse_edge_list(std::istream& in) {
  GraphBuilder b;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = detail::tokens_of(line);
    if (toks.empty()) continue;
    if (toks.size() != 2) {
      detail::parse_fail(line_no, "expected 'u v', got " + std::to_string(toks.size()) +
                                      " tokens");
    }
    detail::add_edge_at(b, line_no, toks[0], toks[1]);
  }
  return std::move(b).build();
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream is(text);
  return parse_edge_list(is);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  for (const Edge& e : g.edges()) out << g.name(e.u) << ' ' << g.name(e.v) << '\n';
}

// A tree read from the labelled format: plain `u v` edge lines plus
// `v <vertex> <C|L>` or `e <u> <v> <S|L1|L2>` label lines. An `e` line also
// declares its edge. At most one kind of label may appear, and when labels
// are present every vertex (or edge) must carry one.
struct LabelledInput {
  Graph graph;
  std::optional<std::vector<VertexLabel>> vertex_labels;
  std::optional<std::vector<EdgeLabel>> edge_labels;
};

inline LabelledInput parse_labelled(std::istream& in) {
  GraphBuilder b;
  std::unordered_map<std::string, EdgeId> edge_ids;  // "u v" with u <= v by id
  std::vector<std::size_t> edge_label_line;          // 0 when unlabelled
  std::vector<EdgeLabel> edge_labels;
  std::vector<std::pair<std::size_t, std::pair<std::string, VertexLabel>>> vertex_lines;
  auto key = [&](const std::string& u, const std::string& v) {
    VertexId a = b.vertex(u), c = b.vertex(v);
    if (a > c) std::swap(a, c);
    return std::to_string(a) + " " + std::to_string(c);
  };
  auto declare = [&](std::size_t line_no, const std::string& u, const std::string& v) {
    detail::check_identifier(line_no, u);
    detail::check_identifier(line_no, v);
    const std::string k = key(u, v);
    detail::add_edge_at(b, line_no, u, v);
    const auto id = static_cast<EdgeId>(edge_label_line.size());
    edge_ids.emplace(k, id);
    edge_label_line.push_back(0);
    edge_labels.push_back(EdgeLabel::kS);
    return id;
  };

  std::size_t first_edge_label = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = detail::tokens_of(line);
    if (toks.empty()) continue;
    if (toks.size() == 2) {
      declare(line_no, toks[0], toks[1]);
    } else if (toks.size() == 3 && toks[0] == "v") {
      detail::check_identifier(line_no, toks[1]);
      VertexLabel l = VertexLabel::kC;
      if (toks[2] == "L") {
        l = VertexLabel::kL;
      } else if (toks[2] != "C") {
        detail::parse_fail(line_no, "vertex label must be C or L, got '" + toks[2] + "'");
      }
      vertex_lines.push_back({line_no, {toks[1], l}});
    } else if (toks.size() == 4 && toks[0] == "e") {
      EdgeLabel l = EdgeLabel::kS;
      if (toks[3] == "L1") {
        l = EdgeLabel::kL1;
      } else if (toks[3] == "L2") {
        l = EdgeLabel::kL2;
      } else if (toks[3] != "S") {
        detail::parse_fail(line_no, "edge label must be S, L1 or L2, got '" + toks[3] + "'");
      }
      detail::check_identifier(line_no, toks[1]);
      detail::check_identifier(line_no, toks[2]);
      EdgeId id;
      if (toks[1] != toks[2] && b.has_vertex(toks[1]) && b.has_vertex(toks[2]) &&
          edge_ids.count(key(toks[1], toks[2])) != 0) {
        id = edge_ids.at(key(toks[1], toks[2]));
      } else {
        id = declare(line_no, toks[1], toks[2]);
      }
      if (edge_label_line[id] != 0) {
        detail::parse_fail(line_no, "edge " + toks[1] + " " + toks[2] + " labelled twice");
      }
      edge_label_line[id] = line_no;
      edge_labels[id] = l;
      if (first_edge_label == 0) first_edge_label = line_no;
    } else {
      detail::parse_fail(line_no, "unrecognised line");
    }
  }
  if (!vertex_lines.empty() && first_edge_label != 0) {
    detail::parse_fail(std::max(first_edge_label, vertex_lines.front().first),
                       "vertex and edge labels cannot be mixed");
  }

  LabelledInput out;
  out.graph = std::move(b).build();
  const Graph& g = out.graph;
  if (first_edge_label != 0) {
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (edge_label_line[e] == 0) {
        throw Error(ErrorKind::kParse, "edge " + g.name(g.edge(e).u) + " " +
                                           g.name(g.edge(e).v) + " has no label");
      }
    }
    out.edge_labels = std::move(edge_labels);
  }
  if (!vertex_lines.empty()) {
    std::vector<std::size_t> seen(g.num_vertices(), 0);
    std::vector<VertexLabel> labels(g.num_vertices(), VertexLabel::kC);
    for (const auto& [at, entry] : vertex_lines) {
      const auto v = g.find_vertex(entry.first);
      if (!v) detail::parse_fail(at, "label for unknown vertex '" + entry.first + "'");
      if (seen[*v] != 0) detail::parse_fail(at, "vertex '" + entry.first + "' labelled twice");
      seen[*v] = at;
      labels[*v] = entry.second;
    }
    for (VertexId v = 0; v < seen.size(); ++v) {
      if (seen[v] == 0) {
        throw Error(ErrorKind::kParse, "vertex '" + g.name(v) + "' has no label");
      }
    }
    out.vertex_labels = std::move(labels);
  }
  return out;
}

inline LabelledInput parse_labelled(const std::string& text) {
  std::istringstream is(text);
  return parse_labelled(is);
}

inline void write_labelled(std::ostream& out, const VertexLabelledTree& t) {
  write_edge_list(out, t.graph);
  for (VertexId v = 0; v < t.graph.num_vertices(); ++v) {
    out << "v " << t.graph.name(v) << ' ' << to_string(t.labels[v]) << '\n';
  }
}

inline void write_labelled(std::ostream& out, const EdgeLabelledTree& t) {
  for (EdgeId e = 0; e < t.graph.num_edges(); ++e) {
    const Edge& ed = t.graph.edge(e);
    out << "e " << t.graph.name(ed.u) << ' ' << t.graph.name(ed.v) << ' '
        << to_string(t.labels[e]) << '\n';
  }
}

}  // namespace edgedom

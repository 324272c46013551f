#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "edgedom/domination.hpp"
#include "edgedom/graph.hpp"
#include "edgedom/oracle.hpp"
#include "edgedom/structure.hpp"

namespace edgedom {

struct Literal {
  std::uint32_t var = 0;  // 1-based
  bool positive = true;

  bool operator==(const Literal&) const = default;
};

struct Sat3Instance {
  std::size_t num_vars = 0;
  std::vector<std::vector<Literal>> clauses;
  // Source line of each clause when parsed from DIMACS; empty otherwise.
  std::vector<std::size_t> clause_lines;
};

// Value of variable i is values[i - 1].
using Assignment = std::vector<bool>;

enum class Sat3ViolationKind {
  kVariableOutOfRange,
  kClauseSize,
  kRepeatedLiteral,
  kPositiveCount,
  kNegativeCount,
};

struct Sat3Violation {
  Sat3ViolationKind kind;
  std::size_t clause = 0;  // 0-based clause index, or variable id for counts
  std::size_t line = 0;    // source line, 0 when unknown
  std::string message;
};

struct Sat3Validation {
  bool valid = true;
  std::vector<std::array<std::size_t, 2>> counts;  // per variable: {positive, negative}
  std::vector<Sat3Violation> violations;
};

inline Sat3Validation validate_sat3(const Sat3Instance& inst) {
  Sat3Validation r;
  r.counts.assign(inst.num_vars, {0, 0});
  auto line_of = [&](std::size_t c) {
    return c < inst.clause_lines.size() ? inst.clause_lines[c] : std::size_t{0};
  };
  auto where = [&](std::size_t c) {
    std::string s = "clause " + std::to_string(c + 1);
    if (line_of(c) != 0) s += " (line " + std::to_string(line_of(c)) + ")";
    return s;
  };
  for (std::size_t c = 0; c < inst.clauses.size(); ++c) {
    const auto& clause = inst.clauses[c];
    if (clause.empty() || clause.size() > 3) {
      r.violations.push_back({Sat3ViolationKind::kClauseSize, c, line_of(c),
                              where(c) + " has " + std::to_string(clause.size()) +
                                  " literals; expected 1 to 3"});
    }
    for (std::size_t i = 0; i < clause.size(); ++i) {
      const Literal& lit = clause[i];
      if (lit.var == 0 || lit.var > inst.num_vars) {
        r.violations.push_back({Sat3ViolationKind::kVariableOutOfRange, c, line_of(c),
                                where(c) + " uses variable " + std::to_string(lit.var) +
                                    " outside 1.." + std::to_string(inst.num_vars)});
        continue;
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (clause[j] == lit) {
          r.violations.push_back({Sat3ViolationKind::kRepeatedLiteral, c, line_of(c),
                                  where(c) + " repeats literal " +
                                      std::string(lit.positive ? "" : "-") +
                                      std::to_string(lit.var)});
        }
      }
      ++r.counts[lit.var - 1][lit.positive ? 0 : 1];
    }
  }
  for (std::size_t v = 0; v < inst.num_vars; ++v) {
    if (r.counts[v][0] != 2) {
      r.violations.push_back({Sat3ViolationKind::kPositiveCount, v + 1, 0,
                              "variable " + std::to_string(v + 1) + " occurs " +
                                  std::to_string(r.counts[v][0]) +
                                  " times positively; expected 2"});
    }
    if (r.counts[v][1] != 1) {
      r.violations.push_back({Sat3ViolationKind::kNegativeCount, v + 1, 0,
                              "variable " + std::to_string(v + 1) + " occurs " +
                                  std::to_string(r.counts[v][1]) +
                                  " times negatively; expected 1"});
    }
  }
  r.valid = r.violations.empty();
  return r;
}

// DIMACS CNF: `c` comment lines, one `p cnf <vars> <clauses>` header, then
// signed literals with each clause closed by 0 (clauses may span lines).
inline Sat3Instance parse_dimacs(std::istream& in) {
  Sat3Instance inst;
  std::optional<std::size_t> declared_clauses;
  std::vector<Literal> current;
  std::size_t current_line = 0;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first)) continue;
    if (first == "c" || first[0] == 'c') continue;
    if (first == "%") break;
    if (first == "p") {
      if (declared_clauses) fail("second problem line");
      std::string fmt;
      long long nv = -1, nc = -1;
      std::string extra;
      if (!(tokens >> fmt >> nv >> nc) || fmt != "cnf" || nv < 0 || nc < 0 || (tokens >> extra)) {
        fail("expected 'p cnf <variables> <clauses>'");
      }
      inst.num_vars = static_cast<std::size_t>(nv);
      declared_clauses = static_cast<std::size_t>(nc);
      continue;
    }
    if (!declared_clauses) fail("clause before the problem line");
    std::istringstream rest(line);
    std::string tok;
    while (rest >> tok) {
      long long value = 0;
      std::size_t used = 0;
      try {
        value = std::stoll(tok, &used);
      } catch (const std::exception&) {
        fail("expected an integer literal, got '" + tok + "'");
      }
      if (used != tok.size()) fail("expected an integer literal, got '" + tok + "'");
      if (value == 0) {
        inst.clauses.push_back(std::move(current));
        inst.clause_lines.push_back(current_line);
        current.clear();
        current_line = 0;
        continue;
      }
      if (current.empty()) current_line = line_no;
      const long long var = value < 0 ? -value : value;
      current.push_back({static_cast<std::uint32_t>(var), value > 0});
    }
  }
  if (!declared_clauses) throw Error(ErrorKind::kParse, "missing 'p cnf' problem line");
  if (!current.empty()) {
    throw Error(ErrorKind::kParse,
                "line " + std::to_string(current_line) + ": clause not terminated by 0");
  }
  if (inst.clauses.size() != *declared_clauses) {
    throw Error(ErrorKind::kParse, "header declares " + std::to_string(*declared_clauses) +
                                       " clauses, found " + std::to_string(inst.clauses.size()));
  }
  return inst;
}

inline std::string to_dimacs(const Sat3Instance& inst) {
  std::ostringstream os;
  os << "p cnf " << inst.num_vars << ' ' << inst.clauses.size() << '\n';
  for (const auto& clause : inst.clauses) {
    for (const Literal& l : clause) os << (l.positive ? "" : "-") << l.var << ' ';
    os << "0\n";
  }
  return os.str();
}

inline bool satisfies(const Sat3Instance& inst, const Assignment& a) {
  if (a.size() != inst.num_vars) return false;
  for (const auto& clause : inst.clauses) {
    bool sat = false;
    for (const Literal& l : clause) sat = sat || a[l.var - 1] == l.positive;
    if (!sat) return false;
  }
  return true;
}

inline std::optional<Assignment> brute_force_sat(const Sat3Instance& inst) {
  if (inst.num_vars > 24) throw Error(ErrorKind::kOracleTooLarge, "too many variables");
  Assignment a(inst.num_vars);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << inst.num_vars); ++bits) {
    for (std::size_t i = 0; i < inst.num_vars; ++i) a[i] = (bits >> i) & 1U;
    if (satisfies(inst, a)) return a;
  }
  return std::nullopt;
}

// Three literals of one sign.
inline bool is_homogeneous(const std::vector<Literal>& clause) {
  if (clause.size() != 3) return false;
  return clause[0].positive == clause[1].positive && clause[1].positive == clause[2].positive;
}

// Clause gadget for homogeneous 3-clauses: a tree whose three attachment
// leaves sit pairwise at distance 4. A minimum total dominating set uses 9 of
// its edges when no attachment edge is selected and 8 once any is.
namespace h_gadget {

inline constexpr std::size_t kVertices = 18;
inline constexpr std::array<std::pair<VertexId, VertexId>, 17> kEdges{{
    {0, 1}, {0, 2}, {0, 3}, {1, 6}, {2, 8}, {2, 9}, {3, 4}, {3, 7}, {4, 5},
    {4, 14}, {5, 11}, {6, 15}, {8, 12}, {9, 10}, {12, 13}, {13, 17}, {14, 16},
}};
inline constexpr std::array<VertexId, 3> kAttach{7, 11, 16};  // x, y, z

using Pattern = std::vector<std::pair<VertexId, VertexId>>;

// Used when no attachment edge is selected.
inline const Pattern& idle_pattern() {
  static const Pattern p{{0, 1}, {0, 2}, {0, 3}, {1, 6}, {2, 9}, {4, 5}, {4, 14}, {8, 12}, {12, 13}};
  return p;
}

// Used when the attachment edge at kAttach[slot] is selected.
inline const Pattern& active_pattern(std::size_t slot) {
  static const std::array<Pattern, 3> p{{
      {{0, 1}, {0, 2}, {1, 6}, {2, 9}, {4, 5}, {4, 14}, {8, 12}, {12, 13}},
      {{0, 1}, {0, 2}, {1, 6}, {2, 9}, {3, 4}, {4, 14}, {8, 12}, {12, 13}},
      {{0, 1}, {0, 2}, {1, 6}, {2, 9}, {3, 4}, {4, 5}, {8, 12}, {12, 13}},
  }};
  return p[slot];
}

inline Graph graph() {
  GraphBuilder b;
  for (VertexId v = 0; v < kVertices; ++v) b.add_vertex("h" + std::to_string(v));
  for (auto [u, v] : kEdges) b.add_edge(u, v);
  return std::move(b).build();
}

// Fewest gadget edges in a set that totally dominates every gadget edge,
// given that the attachment edges at the `active` slots are selected.
inline ExtNat cost(const std::vector<std::size_t>& active) {
  const Graph g = graph();
  detail::Mask pre;
  for (std::size_t slot : active) {
    for (EdgeId e : g.incident(kAttach.at(slot))) pre.set(e);
  }
  return detail::constrained_minimum(g, Domination::kTotal, pre, {}).value;
}

}  // namespace h_gadget

struct VariableGadget {
  // Paths a-a0-a1-a2, b-b0-b1-b2, c-c0-c1-c2 plus a-c and c-b.
  VertexId a, a0, a1, a2, b, b0, b1, b2, c, c0, c1, c2;
  // Clause-side endpoints of the two positive and one negative occurrences.
  VertexId pos1 = kNoVertex, pos2 = kNoVertex, neg = kNoVertex;
};

struct ClauseGadget {
  bool homogeneous = false;
  VertexId d = kNoVertex, dp = kNoVertex;  // ordinary clause edge d-d'
  std::array<VertexId, h_gadget::kVertices> h{};  // gadget vertices when homogeneous
};

struct ReductionOutput {
  Sat3Instance source;
  Graph graph;
  std::uint64_t k = 0;
  std::vector<std::string> vertex_tags;  // by vertex id
  std::vector<std::size_t> homogeneous_clauses;
  std::vector<VariableGadget> variables;
  std::vector<ClauseGadget> clauses;
};

inline ReductionOutput build_reduction(const Sat3Instance& inst) {
  const Sat3Validation check = validate_sat3(inst);
  if (!check.valid) {
    std::string msg = "instance violates the occurrence pattern:";
    for (const auto& v : check.violations) msg += "\n  " + v.message;
    throw Error(ErrorKind::kInvalidInput, msg);
  }

  ReductionOutput out;
  out.source = inst;
  GraphBuilder gb;
  auto vertex = [&](const std::string& name, const std::string& tag) {
    const VertexId id = gb.add_vertex(name);
    out.vertex_tags.push_back(tag);
    return id;
  };

  for (std::size_t i = 1; i <= inst.num_vars; ++i) {
    const std::string s = std::to_string(i);
    VariableGadget v{};
    v.a = vertex("a" + s, "a_{" + s + "}");
    v.a0 = vertex("a" + s + "_0", "a_{" + s + ",0}");
    v.a1 = vertex("a" + s + "_1", "a_{" + s + ",1}");
    v.a2 = vertex("a" + s + "_2", "a_{" + s + ",2}");
    v.b = vertex("b" + s, "b_{" + s + "}");
    v.b0 = vertex("b" + s + "_0", "b_{" + s + ",0}");
    v.b1 = vertex("b" + s + "_1", "b_{" + s + ",1}");
    v.b2 = vertex("b" + s + "_2", "b_{" + s + ",2}");
    v.c = vertex("c" + s, "c_{" + s + "}");
    v.c0 = vertex("c" + s + "_0", "c_{" + s + ",0}");
    v.c1 = vertex("c" + s + "_1", "c_{" + s + ",1}");
    v.c2 = vertex("c" + s + "_2", "c_{" + s + ",2}");
    out.variables.push_back(v);
  }

  static constexpr std::array<const char*, 3> kSlotName{"x", "y", "z"};
  for (std::size_t l = 0; l < inst.clauses.size(); ++l) {
    const std::string s = std::to_string(l + 1);
    ClauseGadget cg;
    cg.homogeneous = is_homogeneous(inst.clauses[l]);
    if (cg.homogeneous) {
      out.homogeneous_clauses.push_back(l);
      for (VertexId hv = 0; hv < h_gadget::kVertices; ++hv) {
        std::string tag = "H_{" + s + "}:" + std::to_string(hv);
        for (std::size_t slot = 0; slot < 3; ++slot) {
          if (h_gadget::kAttach[slot] == hv) tag = "H_{" + s + "}:" + kSlotName[slot];
        }
        cg.h[hv] = vertex("h" + s + "_" + std::to_string(hv), tag);
      }
    } else {
      cg.d = vertex("d" + s, "d_{" + s + "}");
      cg.dp = vertex("dp" + s, "d'_{" + s + "}");
    }
    out.clauses.push_back(cg);
  }

  for (const VariableGadget& v : out.variables) {
    for (auto [x, y] : {std::pair{v.a, v.a0}, {v.a0, v.a1}, {v.a1, v.a2}, {v.b, v.b0},
                        {v.b0, v.b1}, {v.b1, v.b2}, {v.c, v.c0}, {v.c0, v.c1}, {v.c1, v.c2},
                        {v.a, v.c}, {v.c, v.b}}) {
      gb.add_edge(x, y);
    }
  }
  for (const ClauseGadget& cg : out.clauses) {
    if (cg.homogeneous) {
      for (auto [x, y] : h_gadget::kEdges) gb.add_edge(cg.h[x], cg.h[y]);
    } else {
      gb.add_edge(cg.d, cg.dp);
    }
  }
  for (std::size_t l = 0; l < inst.clauses.size(); ++l) {
    const ClauseGadget& cg = out.clauses[l];
    const auto& clause = inst.clauses[l];
    for (std::size_t pos = 0; pos < clause.size(); ++pos) {
      const Literal lit = clause[pos];
      VariableGadget& v = out.variables[lit.var - 1];
      VertexId side = kNoVertex;
      if (cg.homogeneous) {
        side = cg.h[h_gadget::kAttach[pos]];
      } else {
        side = lit.positive ? cg.d : cg.dp;
      }
      if (!lit.positive) {
        v.neg = side;
        gb.add_edge(v.c0, side);
      } else if (v.pos1 == kNoVertex) {
        v.pos1 = side;
        gb.add_edge(v.a0, side);
      } else {
        v.pos2 = side;
        gb.add_edge(v.b0, side);
      }
    }
  }

  out.graph = std::move(gb).build();
  out.k = 6 * inst.num_vars + 8 * out.homogeneous_clauses.size();
  return out;
}

namespace detail {

inline EdgeId edge_between(const Graph& g, VertexId u, VertexId v) {
  const auto e = g.find_edge(u, v);
  if (!e) throw Error(ErrorKind::kInvalidInput, "reduction graph is missing an expected edge");
  return *e;
}

}  // namespace detail

// Total dominating set of size k built from a satisfying assignment.
inline EdgeSet encode_assignment(const ReductionOutput& out, const Assignment& a) {
  if (!satisfies(out.source, a)) {
    throw Error(ErrorKind::kEncodingInfeasible, "assignment does not satisfy every clause");
  }
  const Graph& g = out.graph;
  auto edge = [&](VertexId u, VertexId v) { return detail::edge_between(g, u, v); };
  std::vector<EdgeId> f;
  for (std::size_t i = 0; i < out.variables.size(); ++i) {
    const VariableGadget& v = out.variables[i];
    f.push_back(edge(v.a0, v.a1));
    f.push_back(edge(v.b0, v.b1));
    f.push_back(edge(v.c0, v.c1));
    if (a[i]) {
      f.push_back(edge(v.a0, v.pos1));
      f.push_back(edge(v.b0, v.pos2));
      f.push_back(edge(v.c, v.c0));
    } else {
      f.push_back(edge(v.a, v.a0));
      f.push_back(edge(v.b, v.b0));
      f.push_back(edge(v.c0, v.neg));
    }
  }
  const EdgeSet partial(f);
  for (const ClauseGadget& cg : out.clauses) {
    if (!cg.homogeneous) continue;
    std::optional<std::size_t> active;
    for (std::size_t slot = 0; slot < 3 && !active; ++slot) {
      for (EdgeId e : g.incident(cg.h[h_gadget::kAttach[slot]])) {
        if (partial.contains(e)) active = slot;
      }
    }
    const auto& pattern = active ? h_gadget::active_pattern(*active) : h_gadget::idle_pattern();
    for (auto [x, y] : pattern) f.push_back(edge(cg.h[x], cg.h[y]));
  }
  EdgeSet result(std::move(f));
  if (!is_total_edge_dominating(g, result) || result.size() != out.k) {
    throw Error(ErrorKind::kEncodingInfeasible, "encoded set failed verification");
  }
  return result;
}

// Swaps that move f toward the canonical per-variable shape without changing
// its size or losing total domination.
inline EdgeSet normalize_ted_set(const ReductionOutput& out, const EdgeSet& f) {
  const Graph& g = out.graph;
  auto edge = [&](VertexId u, VertexId v) { return detail::edge_between(g, u, v); };
  std::vector<EdgeId> cur(f.begin(), f.end());
  auto try_swap = [&](EdgeId drop, EdgeId add) {
    EdgeSet s(cur);
    if (!s.contains(drop) || s.contains(add)) return false;
    std::vector<EdgeId> next;
    for (EdgeId e : cur) {
      if (e != drop) next.push_back(e);
    }
    next.push_back(add);
    EdgeSet candidate(next);
    if (!is_total_edge_dominating(g, candidate)) return false;
    cur = candidate.ids();
    return true;
  };
  for (const VariableGadget& v : out.variables) {
    const bool chosen = EdgeSet(cur).contains(edge(v.c, v.c0));
    if (chosen) {
      for (auto [x0, x, x1, x2, side] : {std::tuple{v.a0, v.a, v.a1, v.a2, v.pos1},
                                         std::tuple{v.b0, v.b, v.b1, v.b2, v.pos2}}) {
        const EdgeId want = edge(x0, side);
        if (EdgeSet(cur).contains(want)) continue;
        if (!try_swap(edge(x, x0), want)) try_swap(edge(x1, x2), want);
      }
    } else {
      const EdgeId want = edge(v.c0, v.neg);
      if (!EdgeSet(cur).contains(want)) try_swap(edge(v.c1, v.c2), want);
    }
  }
  return EdgeSet(cur);
}

// Assignment read off a total dominating set of size at most k.
inline Assignment decode_ted_set(const ReductionOutput& out, const EdgeSet& f) {
  const Graph& g = out.graph;
  if (!is_total_edge_dominating(g, f)) {
    throw Error(ErrorKind::kInvalidCertificate, "set is not a total edge dominating set");
  }
  if (f.size() > out.k) {
    throw Error(ErrorKind::kInvalidCertificate, "set has " + std::to_string(f.size()) +
                                                    " edges; bound is " + std::to_string(out.k));
  }
  const EdgeSet normal = normalize_ted_set(out, f);
  Assignment a(out.variables.size());
  for (std::size_t i = 0; i < out.variables.size(); ++i) {
    const VariableGadget& v = out.variables[i];
    a[i] = normal.contains(detail::edge_between(g, v.c, v.c0));
  }
  if (!satisfies(out.source, a)) {
    throw Error(ErrorKind::kInvalidCertificate, "decoded assignment does not satisfy the instance");
  }
  return a;
}

struct EquivalenceReport {
  bool satisfiable = false;
  ExtNat gamma_t = kInf;
  std::uint64_t k = 0;
  bool agree = false;
};

inline EquivalenceReport reduction_equivalence_check(const Sat3Instance& inst,
                                                     const OracleOptions& options = {
                                                         .edge_cap = kOracleHardLimit}) {
  const ReductionOutput out = build_reduction(inst);
  EquivalenceReport r;
  r.satisfiable = brute_force_sat(inst).has_value();
  // Components are solved separately; the optimum is additive.
  r.gamma_t = 0;
  for (const Graph& part : components(out.graph)) {
    r.gamma_t += brute_min_ted(part, options).value;
  }
  r.k = out.k;
  r.agree = r.satisfiable == (r.gamma_t <= ExtNat(out.k));
  return r;
}

}  // namespace edgedom

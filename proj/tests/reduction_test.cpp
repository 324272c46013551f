#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "edgedom/domination.hpp"
#include "edgedom/io.hpp"
#include "edgedom/oracle.hpp"
#include "edgedom/reduction.hpp"
#include "edgedom/structure.hpp"

using namespace edgedom;

namespace {

Literal pos(std::uint32_t v) { return {v, true}; }
Literal neg(std::uint32_t v) { return {v, false}; }

// (x1) (x1 or not x1)
Sat3Instance one_var() { return {1, {{pos(1)}, {pos(1), neg(1)}}, {}}; }

// (x1 or not x2) (x1 or x2) (not x1 or x2); only x1 = x2 = 1 satisfies it.
Sat3Instance two_var() {
  return {2, {{pos(1), neg(2)}, {pos(1), pos(2)}, {neg(1), pos(2)}}, {}};
}

// (x1) (x1 or x2) (x2) (not x1 or not x2)
Sat3Instance two_var_unsat() {
  return {2, {{pos(1)}, {pos(1), pos(2)}, {pos(2)}, {neg(1), neg(2)}}, {}};
}

// (x1 or x2 or x3) (x1 or not x2) (x2 or not x3) (x3 or not x1)
Sat3Instance with_homogeneous() {
  return {3, {{pos(1), pos(2), pos(3)}, {pos(1), neg(2)}, {pos(2), neg(3)}, {pos(3), neg(1)}}, {}};
}

// (x1 or x2 or x3) (x1 or x2) (x3) (not x1 or not x2 or not x3)
Sat3Instance two_homogeneous() {
  return {3, {{pos(1), pos(2), pos(3)}, {pos(1), pos(2)}, {pos(3)}, {neg(1), neg(2), neg(3)}}, {}};
}

std::vector<Assignment> all_assignments(std::size_t n) {
  std::vector<Assignment> out;
  for (std::uint32_t bits = 0; bits < (1U << n); ++bits) {
    Assignment a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = ((bits >> i) & 1U) != 0;
    out.push_back(a);
  }
  return out;
}

EdgeId edge_of(const Graph& g, VertexId u, VertexId v) {
  const auto e = g.find_edge(u, v);
  EXPECT_TRUE(e.has_value());
  return e.value_or(kNoEdge);
}

}  // namespace

TEST(Sat3Validation, AcceptsBalancedInstance) {
  const Sat3Validation r = validate_sat3(two_var());
  EXPECT_TRUE(r.valid);
  ASSERT_EQ(r.counts.size(), 2u);
  EXPECT_EQ(r.counts[0], (std::array<std::size_t, 2>{2, 1}));
  EXPECT_EQ(r.counts[1], (std::array<std::size_t, 2>{2, 1}));
}

TEST(Sat3Validation, RejectsMissingOccurrences) {
  const Sat3Validation r = validate_sat3({1, {{pos(1)}}, {}});
  EXPECT_FALSE(r.valid);
  std::set<Sat3ViolationKind> kinds;
  for (const auto& v : r.violations) kinds.insert(v.kind);
  EXPECT_TRUE(kinds.count(Sat3ViolationKind::kPositiveCount));
  EXPECT_TRUE(kinds.count(Sat3ViolationKind::kNegativeCount));
}

TEST(Sat3Validation, RejectsRepeatedLiteral) {
  const Sat3Validation r = validate_sat3({1, {{pos(1), pos(1)}, {neg(1)}}, {}});
  EXPECT_FALSE(r.valid);
  bool repeated = false;
  for (const auto& v : r.violations) repeated |= v.kind == Sat3ViolationKind::kRepeatedLiteral;
  EXPECT_TRUE(repeated);
}

TEST(Sat3Validation, RejectsOversizedAndOutOfRange) {
  Sat3Instance inst{2, {{pos(1), pos(2), neg(1), neg(2)}, {pos(3)}}, {}};
  const Sat3Validation r = validate_sat3(inst);
  std::set<Sat3ViolationKind> kinds;
  for (const auto& v : r.violations) kinds.insert(v.kind);
  EXPECT_TRUE(kinds.count(Sat3ViolationKind::kClauseSize));
  EXPECT_TRUE(kinds.count(Sat3ViolationKind::kVariableOutOfRange));
}

TEST(Dimacs, ParsesAndRoundTrips) {
  std::istringstream in("c sample\np cnf 2 3\n1 -2 0\n1 2 0\n-1\n2 0\n");
  const Sat3Instance inst = parse_dimacs(in);
  EXPECT_EQ(inst.num_vars, 2u);
  ASSERT_EQ(inst.clauses.size(), 3u);
  EXPECT_EQ(inst.clauses[2], (std::vector<Literal>{neg(1), pos(2)}));
  EXPECT_EQ(inst.clause_lines, (std::vector<std::size_t>{3, 4, 5}));
  std::istringstream again(to_dimacs(inst));
  EXPECT_EQ(parse_dimacs(again).clauses, inst.clauses);
}

TEST(Dimacs, ReportsLineNumbers) {
  auto message = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_dimacs(in);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kParse);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("p cnf 1 1\n1 x 0\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("1 0\n").find("line 1"), std::string::npos);
  EXPECT_NE(message("p cnf 1 2\n1 0\n").find("declares 2"), std::string::npos);
  EXPECT_NE(message("p cnf 1 1\n1 -1\n").find("not terminated"), std::string::npos);
  EXPECT_NE(message("c only a comment\n").find("missing"), std::string::npos);
}

TEST(Dimacs, ViolationsCarryLines) {
  std::istringstream in("p cnf 1 2\n1 1 0\n-1 0\n");
  const Sat3Validation r = validate_sat3(parse_dimacs(in));
  ASSERT_FALSE(r.valid);
  bool line2 = false;
  for (const auto& v : r.violations) line2 |= v.line == 2;
  EXPECT_TRUE(line2);
}

TEST(Reduction, OneVariableShape) {
  const ReductionOutput out = build_reduction(one_var());
  EXPECT_EQ(out.graph.num_vertices(), 16u);
  EXPECT_EQ(out.graph.num_edges(), 16u);
  EXPECT_EQ(out.k, 6u);
  EXPECT_TRUE(out.homogeneous_clauses.empty());
  const StructuralReport r = structural_report(out.graph);
  EXPECT_TRUE(r.bipartite);
  EXPECT_EQ(r.max_degree, 3u);
  // A clause holding both x1 and not-x1 closes a 6-cycle through c1.
  EXPECT_EQ(r.girth, ExtNat(6));
}

TEST(Reduction, VariableGadgetIsThreePathsAndTwoLinks) {
  const ReductionOutput out = build_reduction(two_var());
  const Graph& g = out.graph;
  for (const VariableGadget& v : out.variables) {
    for (auto [x, y] : {std::pair{v.a, v.a0}, {v.a0, v.a1}, {v.a1, v.a2}, {v.b, v.b0},
                        {v.b0, v.b1}, {v.b1, v.b2}, {v.c, v.c0}, {v.c0, v.c1}, {v.c1, v.c2},
                        {v.a, v.c}, {v.c, v.b}}) {
      EXPECT_TRUE(g.find_edge(x, y).has_value()) << g.name(x) << " " << g.name(y);
    }
    EXPECT_EQ(g.degree(v.a0), 3u);
    EXPECT_EQ(g.degree(v.b0), 3u);
    EXPECT_EQ(g.degree(v.c0), 3u);
    EXPECT_EQ(g.degree(v.a2), 1u);
    EXPECT_EQ(g.degree(v.b2), 1u);
    EXPECT_EQ(g.degree(v.c2), 1u);
  }
}

TEST(Reduction, OccurrencesAttachInClauseOrder) {
  const ReductionOutput out = build_reduction(two_var());
  const Graph& g = out.graph;
  // x1 occurs positively in clauses 1 and 2, negatively in clause 3.
  const VariableGadget& x1 = out.variables[0];
  EXPECT_EQ(x1.pos1, out.clauses[0].d);
  EXPECT_EQ(x1.pos2, out.clauses[1].d);
  EXPECT_EQ(x1.neg, out.clauses[2].dp);
  EXPECT_TRUE(g.find_edge(x1.a0, out.clauses[0].d));
  EXPECT_TRUE(g.find_edge(x1.b0, out.clauses[1].d));
  EXPECT_TRUE(g.find_edge(x1.c0, out.clauses[2].dp));
  EXPECT_EQ(out.vertex_tags[x1.a0], "a_{1,0}");
  EXPECT_EQ(out.vertex_tags[out.clauses[2].dp], "d'_{3}");
}

TEST(Reduction, StructureOnNonTautologicalInstances) {
  for (const Sat3Instance& inst : {two_var(), two_var_unsat(), with_homogeneous(), two_homogeneous()}) {
    const ReductionOutput out = build_reduction(inst);
    const StructuralReport r = structural_report(out.graph);
    EXPECT_TRUE(r.bipartite);
    EXPECT_EQ(r.max_degree, 3u);
    EXPECT_GE(r.girth, ExtNat(10));
  }
}

TEST(Reduction, HomogeneousClausesGetTheGadget) {
  const ReductionOutput one = build_reduction(with_homogeneous());
  EXPECT_EQ(one.homogeneous_clauses, (std::vector<std::size_t>{0}));
  EXPECT_EQ(one.k, 6u * 3 + 8u);
  EXPECT_TRUE(one.clauses[0].homogeneous);
  EXPECT_EQ(one.vertex_tags[one.clauses[0].h[h_gadget::kAttach[0]]], "H_{1}:x");
  EXPECT_EQ(one.vertex_tags[one.clauses[0].h[h_gadget::kAttach[2]]], "H_{1}:z");
  // Literal positions map to x, y, z in order.
  EXPECT_EQ(one.variables[1].pos1, one.clauses[0].h[h_gadget::kAttach[1]]);

  const ReductionOutput two = build_reduction(two_homogeneous());
  EXPECT_EQ(two.homogeneous_clauses, (std::vector<std::size_t>{0, 3}));
  EXPECT_EQ(two.k, 6u * 3 + 16u);
}

TEST(Reduction, RejectsInvalidInstance) {
  try {
    build_reduction({1, {{pos(1)}}, {}});
    FAIL() << "expected invalid-input";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidInput);
  }
}

TEST(Encode, OneVariable) {
  const ReductionOutput out = build_reduction(one_var());
  const EdgeSet f = encode_assignment(out, {true});
  EXPECT_EQ(f.size(), 6u);
  EXPECT_TRUE(is_total_edge_dominating(out.graph, f));
  EXPECT_THROW(encode_assignment(out, {false}), Error);
}

TEST(Encode, EverySatisfyingAssignmentMeetsTheBound) {
  for (const Sat3Instance& inst : {one_var(), two_var(), with_homogeneous(), two_homogeneous()}) {
    const ReductionOutput out = build_reduction(inst);
    std::size_t satisfying = 0;
    for (const Assignment& a : all_assignments(inst.num_vars)) {
      if (!satisfies(inst, a)) {
        try {
          encode_assignment(out, a);
          ADD_FAILURE() << "encoded a non-satisfying assignment";
        } catch (const Error& e) {
          EXPECT_EQ(e.kind(), ErrorKind::kEncodingInfeasible);
        }
        continue;
      }
      ++satisfying;
      const EdgeSet f = encode_assignment(out, a);
      EXPECT_EQ(f.size(), out.k);
      EXPECT_TRUE(is_total_edge_dominating(out.graph, f));
      const Graph& g = out.graph;
      for (std::size_t i = 0; i < inst.num_vars; ++i) {
        const VariableGadget& v = out.variables[i];
        std::vector<EdgeId> expected;
        if (a[i]) {
          expected = {edge_of(g, v.a0, v.pos1), edge_of(g, v.a0, v.a1), edge_of(g, v.b0, v.pos2),
                      edge_of(g, v.b0, v.b1), edge_of(g, v.c, v.c0), edge_of(g, v.c0, v.c1)};
        } else {
          expected = {edge_of(g, v.a, v.a0), edge_of(g, v.a0, v.a1), edge_of(g, v.b, v.b0),
                      edge_of(g, v.b0, v.b1), edge_of(g, v.c0, v.neg), edge_of(g, v.c0, v.c1)};
        }
        for (EdgeId e : expected) EXPECT_TRUE(f.contains(e));
      }
      EXPECT_EQ(decode_ted_set(out, f), a);
    }
    EXPECT_GT(satisfying, 0u);
  }
}

TEST(Decode, MinimumSetsDecodeToSatisfyingAssignments) {
  for (const Sat3Instance& inst : {one_var(), two_var()}) {
    const ReductionOutput out = build_reduction(inst);
    std::size_t seen = 0;
    const ExtNat best = enumerate_minimum_sets(
        out.graph, Domination::kTotal,
        [&](const EdgeSet& f) {
          ++seen;
          EXPECT_TRUE(satisfies(inst, decode_ted_set(out, f)));
          return true;
        },
        {.edge_cap = kOracleHardLimit});
    EXPECT_EQ(best, ExtNat(out.k));
    EXPECT_GT(seen, 0u);
  }
}

TEST(Decode, RejectsBadCertificates) {
  const ReductionOutput out = build_reduction(two_var());
  const EdgeSet good = encode_assignment(out, {true, true});
  std::vector<EdgeId> fewer(good.begin(), good.end());
  fewer.pop_back();
  std::vector<EdgeId> all;
  for (EdgeId e = 0; e < out.graph.num_edges(); ++e) all.push_back(e);
  for (const EdgeSet& bad : {EdgeSet(fewer), EdgeSet(all)}) {
    try {
      decode_ted_set(out, bad);
      ADD_FAILURE() << "accepted a bad certificate";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kInvalidCertificate);
    }
  }
}

TEST(Reduction, LeafPathEdgesAreForced) {
  for (const Sat3Instance& inst : {one_var(), two_var(), two_var_unsat()}) {
    const ReductionOutput out = build_reduction(inst);
    const Graph& g = out.graph;
    std::vector<EdgeId> forced;
    for (const VariableGadget& v : out.variables) {
      forced.push_back(edge_of(g, v.a0, v.a1));
      forced.push_back(edge_of(g, v.b0, v.b1));
      forced.push_back(edge_of(g, v.c0, v.c1));
    }
    std::size_t seen = 0;
    enumerate_minimum_sets(
        g, Domination::kTotal,
        [&](const EdgeSet& f) {
          ++seen;
          for (EdgeId e : forced) EXPECT_TRUE(f.contains(e));
          return true;
        },
        {.edge_cap = kOracleHardLimit});
    EXPECT_GT(seen, 0u);
  }
}

TEST(Equivalence, SmallInstances) {
  const EquivalenceReport a = reduction_equivalence_check(one_var());
  EXPECT_TRUE(a.satisfiable);
  EXPECT_EQ(a.gamma_t, ExtNat(6));
  EXPECT_EQ(a.k, 6u);
  EXPECT_TRUE(a.agree);

  const EquivalenceReport b = reduction_equivalence_check(two_var());
  EXPECT_TRUE(b.satisfiable);
  EXPECT_EQ(b.gamma_t, ExtNat(12));
  EXPECT_TRUE(b.agree);

  const EquivalenceReport c = reduction_equivalence_check(two_var_unsat());
  EXPECT_FALSE(c.satisfiable);
  EXPECT_GT(c.gamma_t, ExtNat(c.k));
  EXPECT_TRUE(c.agree);

  const EquivalenceReport d = reduction_equivalence_check(with_homogeneous());
  EXPECT_TRUE(d.satisfiable);
  EXPECT_EQ(d.gamma_t, ExtNat(26));
  EXPECT_TRUE(d.agree);
}

TEST(HGadget, MatchesGoldenFile) {
  std::ifstream in(std::string(EDGEDOM_GOLDEN_DIR) + "/h_gadget.edges");
  ASSERT_TRUE(in.good());
  const Graph golden = parse_edge_list(in);
  std::ostringstream a, b;
  write_edge_list(a, golden);
  write_edge_list(b, h_gadget::graph());
  EXPECT_EQ(a.str(), b.str());
}

TEST(HGadget, ShapeAndAttachments) {
  const Graph h = h_gadget::graph();
  EXPECT_EQ(h.num_vertices(), 18u);
  EXPECT_EQ(h.num_edges(), 17u);
  EXPECT_TRUE(is_tree(h));
  EXPECT_TRUE(girth(h).is_infinite());
  for (VertexId x : h_gadget::kAttach) {
    EXPECT_EQ(h.degree(x), 1u);
    const auto d = detail::bfs_distances(h, x);
    for (VertexId y : h_gadget::kAttach) {
      if (y != x) {
        EXPECT_EQ(d[y], 4u);
      }
    }
  }
}

TEST(HGadget, CostsNineIdleAndEightWhenAttached) {
  EXPECT_EQ(h_gadget::cost({}), ExtNat(9));
  for (const std::vector<std::size_t>& active :
       std::vector<std::vector<std::size_t>>{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}}) {
    EXPECT_EQ(h_gadget::cost(active), ExtNat(8));
  }
}

TEST(HGadget, PatternsDominate) {
  const Graph h = h_gadget::graph();
  auto set_of = [&](const h_gadget::Pattern& p) {
    std::vector<EdgeId> ids;
    for (auto [u, v] : p) ids.push_back(edge_of(h, u, v));
    return EdgeSet(ids);
  };
  EXPECT_TRUE(is_total_edge_dominating(h, set_of(h_gadget::idle_pattern())));
  EXPECT_EQ(h_gadget::idle_pattern().size(), 9u);
  for (std::size_t slot = 0; slot < 3; ++slot) {
    // Add a pendant edge at the attachment and select it.
    GraphBuilder b;
    for (VertexId v = 0; v < h.num_vertices(); ++v) b.add_vertex(h.name(v));
    for (const Edge& e : h.edges()) b.add_edge(e.u, e.v);
    const VertexId out = b.add_vertex("out");
    const EdgeId link = b.add_edge(h_gadget::kAttach[slot], out);
    const Graph g = std::move(b).build();
    std::vector<EdgeId> ids{link};
    for (auto [u, v] : h_gadget::active_pattern(slot)) ids.push_back(edge_of(g, u, v));
    const EdgeSet f(ids);
    EXPECT_EQ(h_gadget::active_pattern(slot).size(), 8u);
    const auto counts = detail::incident_member_counts(g, f);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (e == link) continue;
      const Edge& ed = g.edge(e);
      const std::uint32_t touching = counts[ed.u] + counts[ed.v] - 2 * (f.contains(e) ? 1 : 0);
      EXPECT_GT(touching, 0u) << "slot " << slot << " edge " << g.name(ed.u) << " " << g.name(ed.v);
    }
  }
}

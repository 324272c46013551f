#include <gtest/gtest.h>

#include "edgedom/oracle.hpp"
#include "edgedom/shapes.hpp"
#include "edgedom/tree_dp.hpp"
#include "edgedom/tree_enum.hpp"
#include "support/powerset_oracle.hpp"
#include "support/tree_helpers.hpp"

namespace edgedom {
namespace {

using testing_support::leaves;
using testing_support::subtree_below;

FourValues oracle_four(const Graph& t, EdgeId top) {
  const oracle::Four f = oracle::four_families(t, top);
  return {f.g1, f.g0, f.g1bar, f.g0bar};
}

TEST(BuildRooted, P4) {
  const RootedTree rt = build_rooted(make_path(4), VertexId{3});
  EXPECT_EQ(rt.edge_order(), (std::vector<EdgeId>{0, 1, 2}));
  EXPECT_EQ(rt.parent(0), EdgeId{1});
  EXPECT_EQ(rt.parent(1), EdgeId{2});
  EXPECT_EQ(rt.parent(2), kNoEdge);
}

TEST(BuildRooted, K2) {
  const RootedTree rt = build_rooted(make_path(2));
  EXPECT_EQ(rt.edge_order(), std::vector<EdgeId>{0});
  EXPECT_EQ(rt.parent(0), kNoEdge);
  EXPECT_TRUE(rt.children(0).empty());
}

TEST(BuildRooted, SpiderAtLegTip) {
  // Legs 0-1-2, 0-3-4, 0-5-6; root at the tip 2.
  const RootedTree rt = build_rooted(make_spider(3, 2), VertexId{2});
  ASSERT_EQ(rt.edge_order().size(), 6u);
  EXPECT_EQ(rt.edge_order()[0], EdgeId{3});
  EXPECT_EQ(rt.edge_order()[1], EdgeId{5});
  EXPECT_EQ(rt.root_edge(), EdgeId{1});
  for (std::size_t i = 0; i < rt.edge_order().size(); ++i) {
    const EdgeId e = rt.edge_order()[i];
    for (EdgeId c : rt.children(e)) {
      const auto pos = std::find(rt.edge_order().begin(), rt.edge_order().end(), c);
      EXPECT_LT(pos - rt.edge_order().begin(), static_cast<std::ptrdiff_t>(i));
      EXPECT_EQ(rt.parent(c), e);
    }
  }
}

TEST(BuildRooted, Errors) {
  try {
    build_rooted(make_cycle(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotATree);
  }
  try {
    build_rooted(make_path(4), VertexId{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidRoot);
  }
  EXPECT_THROW(build_rooted(from_edges(4, {{0, 1}, {2, 3}})), Error);
}

TEST(BuildRooted, AutoPicksLowestLeaf) {
  const Graph g = from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_EQ(build_rooted(g).root(), VertexId{1});
}

TEST(LeafBase, ValuesAndK2Semantics) {
  EXPECT_EQ(leaf_base_values(), (FourValues{kInf, kInf, 1, 0}));
  EXPECT_EQ(oracle_four(make_path(2), 0), leaf_base_values());
}

TEST(Combine, P3MiddleEdge) {
  const std::vector<FourValues> kids{leaf_base_values()};
  const FourValues got = combine(leaf_base_values(), kids);
  // Path v0-v1-v2 with the top edge v1v2; reference from the subset scan.
  EXPECT_EQ(got, oracle_four(make_path(3), 1));
  EXPECT_EQ(got, (FourValues{2, kInf, 1, kInf}));
}

TEST(Combine, P4TopEdge) {
  const std::vector<FourValues> p3{combine(leaf_base_values(), std::vector<FourValues>{leaf_base_values()})};
  const FourValues got = combine(leaf_base_values(), p3);
  EXPECT_EQ(got, oracle_four(make_path(4), 2));
  EXPECT_EQ(got, (FourValues{2, 2, kInf, kInf}));
  EXPECT_EQ(std::min(got.g1, got.g0), ExtNat(2));
}

TEST(Combine, SpiderCenterIsolatedValue) {
  const std::vector<FourValues> kids{leaf_base_values(), leaf_base_values()};
  EXPECT_EQ(combine(leaf_base_values(), kids).g1bar, ExtNat(1));
}

TEST(GammaTTree, Examples) {
  EXPECT_EQ(gamma_t_tree(build_rooted(make_path(5))).value, ExtNat(2));
  EXPECT_EQ(gamma_t_tree(build_rooted(make_path(6))).value, ExtNat(3));
  EXPECT_EQ(gamma_t_tree(build_rooted(make_double_star(2, 2))).value, ExtNat(2));
  const SolveResult k2 = gamma_t_tree(build_rooted(make_path(2)));
  EXPECT_EQ(k2.value, kInf);
  EXPECT_FALSE(k2.witness.has_value());
}

TEST(GammaTree, Examples) {
  EXPECT_EQ(gamma_tree(build_rooted(make_path(6))).value, ExtNat(2));
  EXPECT_EQ(gamma_tree(build_rooted(make_star(5))).value, ExtNat(1));
  EXPECT_EQ(gamma_tree(build_rooted(make_path(7))).value, ExtNat(2));
  EXPECT_EQ(gamma_tree(build_rooted(make_path(2))).value, ExtNat(1));
}

TEST(GammaTTree, DeepPathDoesNotRecurse) {
  const Graph g = make_path(300001);
  const SolveResult r = gamma_t_tree(build_rooted(g));
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->size(), r.value.value());
  EXPECT_TRUE(is_total_edge_dominating(g, *r.witness));
  // Paths with m edges need ceil(m / 2) + [m % 4 == 2]... checked by formula below.
  EXPECT_EQ(r.value, gamma_t_tree(build_rooted(g, VertexId{300000})).value);
}

// Exhaustive comparison on small trees under every leaf rooting.
TEST(TreeDp, MatchesOracleOnSmallTrees) {
  const auto trees = enumerate_free_trees(9);
  for (std::size_t n = 2; n <= 9; ++n) {
    for (const Graph& t : trees[n]) {
      const ExtNat ted = brute_min_ted(t).value;
      const ExtNat ed = brute_min_ed(t).value;
      for (VertexId root : leaves(t)) {
        const RootedTree rt = build_rooted(t, root);
        const SolveResult a = gamma_t_tree(rt);
        const SolveResult b = gamma_tree(rt);
        ASSERT_EQ(a.value, ted);
        ASSERT_EQ(b.value, ed);
        if (a.witness) {
          EXPECT_EQ(a.witness->size(), a.value.value());
          EXPECT_TRUE(is_total_edge_dominating(t, *a.witness));
        }
        ASSERT_TRUE(b.witness.has_value());
        EXPECT_EQ(b.witness->size(), b.value.value());
        EXPECT_TRUE(is_edge_dominating(t, *b.witness));
      }
    }
  }
}

// Every table entry equals the constrained subset minimum on its subtree.
TEST(TreeDp, FourStateSoundness) {
  const auto trees = enumerate_free_trees(8);
  for (std::size_t n = 2; n <= 8; ++n) {
    for (const Graph& t : trees[n]) {
      for (VertexId root : leaves(t)) {
        const RootedTree rt = build_rooted(t, root);
        const auto table = four_state_table(rt);
        for (EdgeId e = 0; e < t.num_edges(); ++e) {
          const auto [sub, top] = subtree_below(rt, e);
          ASSERT_EQ(table[e], oracle_four(sub, top));
        }
      }
    }
  }
}

// Bound relations between the four values, wherever finite.
TEST(TreeDp, PairwiseBounds) {
  const auto trees = enumerate_free_trees(10);
  for (std::size_t n = 2; n <= 10; ++n) {
    for (const Graph& t : trees[n]) {
      for (const FourValues& v : four_state_table(build_rooted(t))) {
        auto le = [](ExtNat a, ExtNat b) { return a.is_infinite() || b.is_infinite() || a <= b; };
        EXPECT_TRUE(le(v.g1, v.g0 + 1));
        EXPECT_TRUE(le(v.g1, v.g1bar + 1));
        EXPECT_TRUE(le(v.g1, v.g0bar + 2));
        EXPECT_TRUE(le(v.g1bar, v.g0bar + 1));
      }
    }
  }
}

// The literal case analysis agrees with combine wherever a guard applies.
TEST(TreeDp, ClosedFormAgreement) {
  const auto trees = enumerate_free_trees(10);
  std::size_t guarded = 0;
  std::size_t unguarded = 0;
  for (std::size_t n = 3; n <= 10; ++n) {
    for (const Graph& t : trees[n]) {
      for (VertexId root : leaves(t)) {
        const RootedTree rt = build_rooted(t, root);
        const auto table = four_state_table(rt);
        for (EdgeId e = 0; e < t.num_edges(); ++e) {
          auto kids_ids = rt.children(e);
          if (kids_ids.empty()) continue;
          std::vector<FourValues> kids;
          for (EdgeId c : kids_ids) kids.push_back(table[c]);
          const ClosedForm cf = closed_form(leaf_base_values(), kids);
          EXPECT_EQ(cf.g1, table[e].g1);
          EXPECT_EQ(cf.g1bar, table[e].g1bar);
          EXPECT_EQ(cf.g0bar, table[e].g0bar);
          if (cf.g0) {
            ++guarded;
            EXPECT_EQ(*cf.g0, table[e].g0) << "case " << cf.g0_case;
          } else {
            ++unguarded;
          }
        }
      }
    }
  }
  EXPECT_GT(guarded, 0u);
  RecordProperty("unguarded", static_cast<int>(unguarded));
}

TEST(TreeDp, RootIndependenceOnRandomTrees) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph t = random_recursive_tree(200, seed);
    ExtNat first = kInf;
    bool have = false;
    for (VertexId root : leaves(t)) {
      const ExtNat v = gamma_t_tree(build_rooted(t, root)).value;
      if (!have) first = v;
      have = true;
      EXPECT_EQ(v, first);
    }
  }
}

}  // namespace
}  // namespace edgedom

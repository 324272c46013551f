#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "edgedom/shapes.hpp"
#include "edgedom/tree_enum.hpp"

namespace edgedom {
namespace {

TEST(FreeTrees, CountsMatchKnownSequence) {
  const auto trees = enumerate_free_trees(11);
  const std::vector<std::size_t> expected{0, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235};
  for (std::size_t n = 1; n <= 11; ++n) {
    EXPECT_EQ(trees[n].size(), expected[n]) << "n=" << n;
    for (const Graph& t : trees[n]) {
      EXPECT_TRUE(is_tree(t));
      EXPECT_EQ(t.num_vertices(), n);
    }
  }
}

Graph relabel(const Graph& g, const std::vector<VertexId>& perm) {
  GraphBuilder b(g.num_vertices());
  for (const Edge& e : g.edges()) b.add_edge(perm[e.u], perm[e.v]);
  return std::move(b).build();
}

TEST(CanonicalForm, InvariantUnderRelabelling) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph t = random_recursive_tree(12, static_cast<std::uint64_t>(trial));
    std::vector<VertexId> perm(t.num_vertices());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(canonical_form(t), canonical_form(relabel(t, perm)));
  }
}

TEST(CanonicalForm, SeparatesNonIsomorphic) {
  EXPECT_NE(canonical_form(make_path(5)), canonical_form(make_star(4)));
  EXPECT_NE(canonical_form(make_spider(3, 2)), canonical_form(make_path(7)));
}

TEST(CanonicalForm, LabelsMatter) {
  const Graph p = make_path(3);
  auto vl_a = [](VertexId v) { return std::string(v == 0 ? "A" : "B"); };
  auto vl_b = [](VertexId v) { return std::string(v == 2 ? "A" : "B"); };
  auto vl_c = [](VertexId v) { return std::string(v == 1 ? "A" : "B"); };
  auto none = [](EdgeId) { return std::string(); };
  EXPECT_EQ(canonical_form(p, vl_a, none), canonical_form(p, vl_b, none));
  EXPECT_NE(canonical_form(p, vl_a, none), canonical_form(p, vl_c, none));
}

TEST(TreeCenters, PathsAndStars) {
  EXPECT_EQ(tree_centers(make_path(5)), std::vector<VertexId>{2});
  EXPECT_EQ(tree_centers(make_path(4)), (std::vector<VertexId>{1, 2}));
  EXPECT_EQ(tree_centers(make_star(5)), std::vector<VertexId>{0});
}

}  // namespace
}  // namespace edgedom

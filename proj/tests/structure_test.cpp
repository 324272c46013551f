#include <gtest/gtest.h>

#include "edgedom/shapes.hpp"
#include "edgedom/structure.hpp"

namespace edgedom {
namespace {

TEST(Diameter, Examples) {
  EXPECT_EQ(diameter(make_path(5)), 4u);
  EXPECT_EQ(diameter(make_star(2)), 2u);
  EXPECT_EQ(diameter(make_star(7)), 2u);
  EXPECT_EQ(diameter(make_double_star(2, 3)), 3u);
  EXPECT_THROW(diameter(from_edges(4, {{0, 1}, {2, 3}})), Error);
}

TEST(Girth, Examples) {
  EXPECT_EQ(girth(make_spider(3, 4)), kInf);
  EXPECT_EQ(girth(make_cycle(10)), ExtNat(10));
  // Chord 0-4 splits C10 into cycles of length 5 and 7.
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId i = 0; i < 10; ++i) edges.push_back({i, (i + 1) % 10});
  edges.push_back({0, 4});
  EXPECT_EQ(girth(from_edges(10, edges)), ExtNat(5));
  EXPECT_EQ(girth(make_cycle(3)), ExtNat(3));
}

TEST(StructuralReport, Examples) {
  const StructuralReport p4 = structural_report(make_path(4));
  EXPECT_TRUE(p4.bipartite);
  EXPECT_EQ(p4.max_degree, 2u);
  EXPECT_EQ(p4.girth, kInf);
  EXPECT_EQ(p4.diameter, ExtNat(3));

  const StructuralReport k3 = structural_report(make_cycle(3));
  EXPECT_FALSE(k3.bipartite);
  EXPECT_EQ(k3.max_degree, 2u);
  EXPECT_EQ(k3.girth, ExtNat(3));
  EXPECT_EQ(k3.diameter, ExtNat(1));

  const StructuralReport split = structural_report(from_edges(4, {{0, 1}, {2, 3}}));
  EXPECT_EQ(split.diameter, kInf);
}

TEST(IsTree, Basics) {
  EXPECT_TRUE(is_tree(make_path(1)));
  EXPECT_TRUE(is_tree(make_spider(3, 2)));
  EXPECT_FALSE(is_tree(make_cycle(4)));
  EXPECT_FALSE(is_tree(from_edges(4, {{0, 1}, {2, 3}})));
}

}  // namespace
}  // namespace edgedom

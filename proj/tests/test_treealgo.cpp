#include <gtest/gtest.h>

#include "mlcr/corpus.hpp"
#include "mlcr/solver.hpp"
#include "mlcr/treealgo.hpp"

using namespace mlcr;

TEST(TreeAlgo, IsTree) {
  EXPECT_TRUE(is_tree({{0, 1}, {1, 2}}, 3));
  EXPECT_FALSE(is_tree({{0, 1}, {1, 2}, {0, 2}}, 3));
  EXPECT_FALSE(is_tree({{0, 1}, {2, 3}}, 4));
  EXPECT_TRUE(is_tree({}, 1));
  EXPECT_FALSE(is_tree({}, 0));
}

TEST(TreeAlgo, FarApartEndpointsGiveCertificate) {
  // cop layer is the path 0-1-2-3, robber tree is a star at 3
  const MultiLayerGraph g(4, {EdgeList{{0, 1}, {1, 2}, {2, 3}}}, RobberSpec::Explicit, EdgeList{{0, 3}, {1, 3}, {2, 3}});
  const auto cert = find_robbers_edge(g, {0});
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(cert->edge, (Edge{0, 3}));
  ASSERT_TRUE(cert->dist.has_value());
  EXPECT_EQ(*cert->dist, 3u);
  EXPECT_EQ(cert->reaching_cops.size(), 1u);
}

TEST(TreeAlgo, SamePathHasNoRobbersEdge) {
  const EdgeList p4{{0, 1}, {1, 2}, {2, 3}};
  const MultiLayerGraph g(4, {p4}, RobberSpec::Explicit, p4);
  EXPECT_FALSE(find_robbers_edge(g, {0}).has_value());
  EXPECT_EQ(decide_tree_robber(g, 1).winner, Winner::Cop);
}

TEST(TreeAlgo, UnreachedEdgeGivesCertificate) {
  const MultiLayerGraph g(4, {EdgeList{{2, 3}}}, RobberSpec::Explicit, EdgeList{{0, 1}, {1, 2}, {2, 3}});
  const auto cert = find_robbers_edge(g, {0});
  ASSERT_TRUE(cert.has_value());
  EXPECT_LE(cert->reaching_cops.size(), 1u);
  EXPECT_EQ(decide_tree_robber(g, 1).winner, Winner::Robber);
}

TEST(TreeAlgo, ZeroCops) {
  const EdgeList p3{{0, 1}, {1, 2}};
  const MultiLayerGraph g(3, {p3}, RobberSpec::Explicit, p3);
  EXPECT_TRUE(find_robbers_edge(g, {}).has_value());
  EXPECT_EQ(decide_tree_robber(g, 0).winner, Winner::Robber);
}

TEST(TreeAlgo, RejectsNonTreeRobber) {
  const EdgeList c3{{0, 1}, {1, 2}, {0, 2}};
  const MultiLayerGraph g(3, {c3}, RobberSpec::Explicit, c3);
  EXPECT_THROW(find_robbers_edge(g, {0}), GraphError);
  EXPECT_THROW(decide_tree_robber(g, 1), GraphError);
}

TEST(TreeAlgo, AgreesWithSolver) {
  Rng rng = make_rng(41);
  std::size_t cop = 0, robber = 0;
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t n = 2 + uniform_below(rng, 6);
    const std::size_t tau = 1 + uniform_below(rng, 2);
    const auto g = corpus::random_tree_instance(n, tau, rng);
    const auto k = static_cast<std::uint32_t>(1 + uniform_below(rng, 2));
    const auto fast = decide_tree_robber(g, k);
    const auto slow = decide_choose_allocation(g, k);
    ASSERT_EQ(fast.winner, slow.winner) << serialize_mlg(g) << "k=" << k;
    (fast.winner == Winner::Cop ? cop : robber)++;
    // per allocation as well
    for (const auto& plan : compositions(k, tau))
      ASSERT_EQ(!find_robbers_edge(g, plan.assignment()).has_value(), decide_allocated(g, plan).winner == Winner::Cop);
  }
  EXPECT_GT(cop, 0u);
  EXPECT_GT(robber, 0u);
}

#include <gtest/gtest.h>

#include <cmath>

#include "mlcr/bounds.hpp"
#include "mlcr/corpus.hpp"
#include "mlcr/generators.hpp"
#include "mlcr/oracles.hpp"
#include "mlcr/solver.hpp"

using namespace mlcr;

TEST(Bounds, DomsetOnSmallExamples) {
  // star layer: one pair dominates
  const MultiLayerGraph star(5, {EdgeList{{0, 1}, {0, 2}, {0, 3}, {0, 4}}}, RobberSpec::Complete);
  EXPECT_EQ(domset_exact(star, 5)->size(), 1u);
  EXPECT_EQ(domset_greedy(star).size(), 1u);
  // empty layer: every vertex needs its own pair
  const MultiLayerGraph empty(4, {EdgeList{}}, RobberSpec::Complete);
  EXPECT_EQ(domset_exact(empty, 4)->size(), 4u);
  EXPECT_FALSE(domset_exact(empty, 3).has_value());
}

TEST(Bounds, DomsetMatchesSubsetOracle) {
  Rng rng = make_rng(43);
  for (int inst = 0; inst < 150; ++inst) {
    const std::size_t n = 2 + uniform_below(rng, 8);
    const std::size_t tau = 1 + uniform_below(rng, 3);
    const auto g = corpus::random_instance(n, tau, rng);
    const auto exact = domset_exact(g, n);
    ASSERT_TRUE(exact.has_value());
    EXPECT_TRUE(is_dominating(g, *exact));
    EXPECT_EQ(exact->size(), oracle::multilayer_domination_number(g));
    const auto greedy = domset_greedy(g);
    EXPECT_TRUE(is_dominating(g, greedy));
    EXPECT_LE(exact->size(), greedy.size());
    if (ml_min_degree(g) >= 1) {
      EXPECT_TRUE(is_dominating(g, domset_randomized(g, rng())));
    }
  }
}

TEST(Bounds, SingleLayerDomsetMatchesClassical) {
  EXPECT_EQ(oracle::domination_number(10, gen_petersen()), 3u);
  const MultiLayerGraph p(10, {gen_petersen()}, RobberSpec::Union);
  EXPECT_EQ(domset_exact(p, 10)->size(), 3u);
}

TEST(Bounds, DomsetBoundFormula) {
  // n tau/(tau+delta) (ln((tau+delta)/tau) + 1) with tau=1, delta=e-1 gives 2n/e
  EXPECT_NEAR(domset_bound(100, 1, 2), 100.0 / 3.0 * (std::log(3.0) + 1.0), 1e-12);
  EXPECT_NEAR(domset_probability(2, 6), std::log(4.0) / 8.0, 1e-15);
}

TEST(Bounds, GreedyUnderBoundOnRandomLayers) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = gen_random_layers(40, 0.5, 2, seed);
    const auto delta = ml_min_degree(g);
    if (static_cast<double>(delta) < 2 * (std::exp(1.0) - 1.0)) continue;
    EXPECT_LE(static_cast<double>(domset_greedy(g).size()), domset_bound(40, 2, delta));
  }
}

TEST(Bounds, MecMatchesDefinition) {
  Rng rng = make_rng(47);
  for (int inst = 0; inst < 150; ++inst) {
    const auto g = corpus::random_instance(3 + uniform_below(rng, 4), 1 + uniform_below(rng, 2), rng);
    for (std::uint32_t k = 1; k <= 2; ++k) {
      const bool mec = mec_check(g, k);
      ASSERT_EQ(mec, oracle::existentially_closed(g, k));
      if (mec) {
        EXPECT_EQ(decide_choose_allocation(g, k).winner, Winner::Robber);
      }
    }
  }
}

TEST(Bounds, MecLowerBound) {
  // grid 4x4: one cop never closes off the robber, two can
  EXPECT_EQ(mec_lower_bound(gen_grid(4), 3), 1u);
  const MultiLayerGraph k4(4, {complete_edges(4)}, RobberSpec::Union);
  EXPECT_EQ(mec_lower_bound(k4, 3), 0u);
}

TEST(Bounds, MecBudgetGuard) {
  EXPECT_THROW(mec_check(gen_grid(30), 4), EnumerationBudgetExceeded);
}

TEST(Bounds, CliqueConditionMatchesDefinition) {
  Rng rng = make_rng(53);
  for (int inst = 0; inst < 80; ++inst) {
    const std::size_t n = 3 + uniform_below(rng, 5);
    std::vector<EdgeList> layers;
    for (std::size_t i = 0, tau = 1 + uniform_below(rng, 2); i < tau; ++i) layers.push_back(corpus::random_edges(n, 0.3, rng));
    const MultiLayerGraph g(n, layers, RobberSpec::Complete);
    for (std::uint32_t k = 1; k <= 2; ++k) EXPECT_EQ(clique_lb_check(g, k), oracle::clique_condition(g, k));
  }
}

TEST(Bounds, CliqueNeedsCompleteRobber) {
  EXPECT_THROW(clique_lb(gen_grid(3), 1), GraphError);
  const auto res = clique_lb(gen_soifer(24, 10), 1);
  EXPECT_TRUE(res.holds);
  EXPECT_EQ(res.method, CliqueLbMethod::Certificate);
}

TEST(Bounds, PstarResidualAndSandwich) {
  for (std::size_t tau = 1; tau <= 10; ++tau)
    for (int i = 0; i <= 20; ++i) {
      const double p = i / 20.0;
      const double ps = pstar(p, tau);
      EXPECT_NEAR(1.0 - std::pow(1.0 - ps / static_cast<double>(tau), static_cast<double>(tau)), p, 1e-12);
      if (p <= 0.5) {
        EXPECT_LE(ps / 2, p + 1e-12);
        EXPECT_LE(p, ps + 1e-12);
      }
    }
  EXPECT_DOUBLE_EQ(pstar(0.3, 1), 0.3);
  EXPECT_THROW(pstar(1.5, 2), std::domain_error);
  EXPECT_THROW(pstar(0.5, 0), std::domain_error);
}

TEST(Bounds, TreewidthExamples) {
  EXPECT_EQ(treewidth_exact_small(5, EdgeList{{0, 1}, {1, 2}, {1, 3}, {3, 4}}).first, 1u);
  EXPECT_EQ(treewidth_exact_small(4, EdgeList{{0, 1}, {1, 2}, {2, 3}, {0, 3}}).first, 2u);
  EXPECT_EQ(treewidth_exact_small(4, complete_edges(4)).first, 3u);
  EXPECT_EQ(treewidth_exact_small(10, gen_petersen()).first, 4u);
  EXPECT_THROW(treewidth_exact_small(13, {}), EnumerationBudgetExceeded);
}

TEST(Bounds, TreewidthMatchesEliminationOrders) {
  Rng rng = make_rng(59);
  for (int inst = 0; inst < 100; ++inst) {
    const std::size_t n = 1 + uniform_below(rng, 8);
    const auto e = corpus::random_edges(n, corpus::random_density(rng), rng);
    const auto [width, td] = treewidth_exact_small(n, e);
    EXPECT_TRUE(td_validate(td, n, e));
    EXPECT_EQ(td.width(), width);
    EXPECT_EQ(width, oracle::treewidth_by_permutation(n, e));
  }
}

TEST(Bounds, DecompositionValidatorRejects) {
  const EdgeList c4{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  TreeDecomposition td;
  td.bags = {{0, 1, 2}, {0, 2, 3}};
  td.tree = {{0, 1}};
  EXPECT_TRUE(td_validate(td, 4, c4));
  auto missing_edge = td;
  missing_edge.bags = {{0, 1, 2}, {2, 3}};
  EXPECT_FALSE(td_validate(missing_edge, 4, c4));
  auto broken_subtree = td;
  broken_subtree.bags = {{0, 1, 2}, {1, 2, 3}, {0, 3}};
  broken_subtree.tree = {{0, 1}, {1, 2}};
  EXPECT_FALSE(td_validate(broken_subtree, 4, c4));
  auto no_tree = td;
  no_tree.tree.clear();
  EXPECT_FALSE(td_validate(no_tree, 4, c4));
}

TEST(Bounds, TreewidthCopBound) {
  const auto g = gen_cycle_matchings(3);  // flattened C6 over disconnected matchings
  auto [w, td] = treewidth_exact_small(6, g.flattened());
  EXPECT_EQ(w, 2u);
  EXPECT_THROW(treewidth_cop_bound(g, td), GraphError);
  const EdgeList c5{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}};
  const MultiLayerGraph single(5, {c5}, RobberSpec::Union);
  auto [w5, td5] = treewidth_exact_small(5, c5);
  EXPECT_EQ(treewidth_cop_bound(single, td5), w5 + 1);
}

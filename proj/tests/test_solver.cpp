#include <gtest/gtest.h>

#include <sstream>

#include "mlcr/corpus.hpp"
#include "mlcr/generators.hpp"
#include "mlcr/oracles.hpp"
#include "mlcr/solver.hpp"

using namespace mlcr;

namespace {

EdgeList cycle(std::size_t n) {
  EdgeList e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  return canonical(e);
}

}  // namespace

TEST(Solver, StateCount) {
  EXPECT_EQ(state_count(16, 2), 16u * 16 * 16 * 3);
  EXPECT_FALSE(state_count(1u << 22, 4).has_value());
}

TEST(Solver, EncodeDecodeRoundTrip) {
  const auto g = gen_grid(3);
  const auto t = build_copwin(g, {0, 1});
  for (CopWinTable::Index s = 0; s < t.num_states(); s += 7) EXPECT_EQ(t.encode(t.decode(s)), s);
  // (robber, cop1, cop2) with cop 1 to move
  const auto s = t.encode({4, 0, 8}, 0);
  EXPECT_EQ(t.mover(s), 1u);
  EXPECT_EQ(t.mover(t.encode({4, 0, 8}, 2)), 0u);
}

TEST(Solver, GridVerdicts) {
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto g = gen_grid(n);
    EXPECT_EQ(decide_allocated(g, {{2, 0}}).winner, Winner::Cop) << n;
    EXPECT_EQ(decide_allocated(g, {{0, 2}}).winner, Winner::Cop) << n;
    if (n >= 4) {
      EXPECT_EQ(decide_allocated(g, {{1, 1}}).winner, Winner::Robber) << n;
    }
  }
  const auto v = decide_choose_allocation(gen_grid(4), 2);
  EXPECT_EQ(v.winner, Winner::Cop);
  EXPECT_EQ(v.plan.counts, (std::vector<std::uint32_t>{2, 0}));
  EXPECT_EQ(v.cop_placement.size(), 2u);
}

TEST(Solver, ZeroCopsLose) {
  const auto g = gen_grid(2);
  EXPECT_EQ(decide_allocated(g, {{0, 0}}).winner, Winner::Robber);
  EXPECT_EQ(decide_choose_allocation(g, 0).winner, Winner::Robber);
}

TEST(Solver, ClassicalCopNumbers) {
  EXPECT_EQ(single_layer_cop_number(10, gen_petersen(), 4), 3u);
  for (std::size_t n = 4; n <= 8; ++n) EXPECT_EQ(single_layer_cop_number(n, cycle(n), 3), 2u) << n;
  EXPECT_EQ(single_layer_cop_number(3, cycle(3), 3), 1u);
  EXPECT_EQ(single_layer_cop_number(6, complete_edges(6), 3), 1u);
  Rng rng = make_rng(5);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 2 + uniform_below(rng, 9);
    EXPECT_EQ(single_layer_cop_number(n, corpus::random_tree(n, rng), 2), 1u);
  }
}

TEST(Solver, BudgetExceeded) {
  SolverOptions o;
  o.state_budget = 100;
  EXPECT_THROW(decide_allocated(gen_grid(4), {{2, 0}}, o), BudgetExceeded);
}

TEST(Solver, MatchesFixedPointOracle) {
  Rng rng = make_rng(17);
  for (int inst = 0; inst < 120; ++inst) {
    const std::size_t n = 2 + uniform_below(rng, 5);
    const std::size_t tau = 1 + uniform_below(rng, 2);
    std::vector<std::uint32_t> assignment(1 + uniform_below(rng, 2));
    for (auto& a : assignment) a = static_cast<std::uint32_t>(uniform_below(rng, tau));
    const auto g = corpus::random_instance(n, tau, rng);
    const auto t = build_copwin(g, assignment);
    const oracle::NaiveGame naive(g, assignment);
    ASSERT_EQ(naive.num_states(), t.num_states());
    for (CopWinTable::Index s = 0; s < t.num_states(); ++s) {
      const auto st = t.decode(s);
      const auto value = naive.value(st.positions, st.turn);
      ASSERT_EQ(t.copwin(s), value != oracle::kInf) << "instance " << inst << " state " << s;
      if (t.copwin(s)) {
        ASSERT_EQ(t.rank(s), value);
      }
    }
  }
}

TEST(Solver, PoliciesAreSound) {
  Rng rng = make_rng(23);
  for (int inst = 0; inst < 60; ++inst) {
    const std::size_t n = 3 + uniform_below(rng, 4);
    const std::size_t tau = 1 + uniform_below(rng, 2);
    std::vector<std::uint32_t> assignment(1 + uniform_below(rng, 2));
    for (auto& a : assignment) a = static_cast<std::uint32_t>(uniform_below(rng, tau));
    const auto g = corpus::random_instance(n, tau, rng);
    const auto t = build_copwin(g, assignment);
    const auto policy = extract_strategy(t);
    for (CopWinTable::Index s = 0; s < t.num_states(); ++s) {
      if (t.is_capture(s)) continue;
      const bool robber_turn = t.turn(s) == t.num_cops();
      if (t.copwin(s)) {
        // Following the cop policy, every line of play strictly lowers the rank.
        if (robber_turn) {
          for (auto x : t.successors(s)) ASSERT_TRUE(t.copwin(x) && t.rank(x) < t.rank(s));
        } else {
          const auto m = policy.cop_move(s);
          ASSERT_TRUE(m && t.copwin(*m) && t.rank(*m) < t.rank(s));
        }
      } else {
        // The robber policy never enters a cop-win state.
        if (robber_turn) {
          const auto m = policy.robber_move(s);
          ASSERT_TRUE(m && !t.copwin(*m));
        } else {
          for (auto x : t.successors(s)) ASSERT_FALSE(t.copwin(x));
        }
      }
    }
  }
}

TEST(Solver, CycleRobberPolicySurvives) {
  const MultiLayerGraph g(4, {cycle(4)}, RobberSpec::Union);
  const auto t = build_copwin(g, {0});
  const auto policy = extract_strategy(t);
  Rng rng = make_rng(1);
  for (int game = 0; game < 50; ++game) {
    // cop starts at 0, robber at the opposite vertex
    auto s = t.encode({2, 0}, 0);
    for (int move = 0; move < 50; ++move) {
      ASSERT_FALSE(t.copwin(s));
      const auto succ = t.successors(s);
      s = succ[uniform_below(rng, succ.size())];
      ASSERT_FALSE(t.is_capture(s));
      s = *policy.robber_move(s);
    }
  }
}

TEST(Solver, ThreadsGiveSameVerdict) {
  Rng rng = make_rng(29);
  SolverOptions par;
  par.threads = 4;
  for (int inst = 0; inst < 40; ++inst) {
    const auto g = corpus::random_instance(3 + uniform_below(rng, 4), 1 + uniform_below(rng, 3), rng);
    const auto k = static_cast<std::uint32_t>(1 + uniform_below(rng, 2));
    const auto a = decide_choose_allocation(g, k);
    const auto b = decide_choose_allocation(g, k, par);
    EXPECT_EQ(a.winner, b.winner);
    EXPECT_EQ(a.plan, b.plan);
    EXPECT_EQ(decide_free_layer_choice(g, k).winner, decide_free_layer_choice(g, k, par).winner);
  }
}

TEST(Solver, ChooseImpliesFreeChoiceWithUnionRobber) {
  Rng rng = make_rng(31);
  for (int inst = 0; inst < 80; ++inst) {
    auto g = corpus::random_instance(3 + uniform_below(rng, 4), 1 + uniform_below(rng, 2), rng).with_robber(RobberSpec::Union);
    const auto k = static_cast<std::uint32_t>(1 + uniform_below(rng, 2));
    if (decide_choose_allocation(g, k).winner == Winner::Cop) {
      EXPECT_EQ(decide_free_layer_choice(g, k).winner, Winner::Cop);
    }
  }
}

TEST(Solver, MonotoneInCops) {
  Rng rng = make_rng(37);
  for (int inst = 0; inst < 60; ++inst) {
    const auto g = corpus::random_instance(3 + uniform_below(rng, 3), 1 + uniform_below(rng, 2), rng);
    if (decide_choose_allocation(g, 1).winner == Winner::Cop) {
      EXPECT_EQ(decide_choose_allocation(g, 2).winner, Winner::Cop);
    }
  }
}

TEST(Solver, RobberVerdictHasRepliesForEveryPlacement) {
  const auto g = gen_grid(4);
  const auto v = decide_allocated(g, {{1, 1}});
  ASSERT_EQ(v.winner, Winner::Robber);
  ASSERT_EQ(v.robber_replies.size(), 16u * 16u);
  const auto t = build_copwin(g, {0, 1});
  std::vector<Vertex> cops(2, 0);
  std::size_t i = 0;
  do {
    const Vertex r = v.robber_replies[i++];
    EXPECT_FALSE(t.copwin(t.encode({r, cops[0], cops[1]}, 0)));
  } while (next_tuple(cops, 16));
}

TEST(Solver, TableDump) {
  const auto t = build_copwin(gen_grid(2), {0});
  std::ostringstream out;
  t.dump(out);
  EXPECT_EQ(out.str().rfind("CWT1", 0), 0u);
}

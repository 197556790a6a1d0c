#include <gtest/gtest.h>

#include <sstream>

#include "mlcr/corpus.hpp"
#include "mlcr/generators.hpp"
#include "mlcr/parallel.hpp"
#include "mlcr/sim.hpp"
#include "mlcr/treealgo.hpp"

using namespace mlcr;

namespace {

std::shared_ptr<const CopWinTable> table_for(const GameContext& ctx) {
  return std::make_shared<const CopWinTable>(build_copwin(*ctx.graph, ctx.assignment));
}

// Teleports cop 0 to the robber.
class JumpingCop : public CopStrategy {
 public:
  std::string name() const override { return "jumping_cop"; }
  std::vector<Vertex> place(const GameContext& ctx) override { return std::vector<Vertex>(ctx.num_cops(), 0); }
  std::vector<Vertex> move(const GameContext&, Vertex robber, const std::vector<Vertex>& cops) override {
    auto out = cops;
    out[0] = robber;
    return out;
  }
};

}  // namespace

TEST(Sim, HorizonZeroIsPlacementOnly) {
  const auto g = gen_grid(4);
  const GameContext ctx(g, {{1, 1}}, "grid4");
  GreedyCop cop;
  RandomRobber robber;
  const auto m = run_match(ctx, cop, robber, 0, 3);
  ASSERT_EQ(m.moves.size(), 1u);
  EXPECT_EQ(m.moves[0].mover, 'P');
  EXPECT_EQ(m.outcome, Outcome::Survived);
  EXPECT_FALSE(referee_check(g, m));
}

TEST(Sim, LegalityFuzz) {
  // 10^5 short matches on random instances, each re-scanned by the referee
  constexpr std::size_t kMatches = 100000;
  const auto errors = parallel_map(16, 8, [&](std::size_t chunk) {
    Rng rng = make_rng(61, chunk);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < kMatches / 16; ++i) {
      const std::size_t n = 2 + uniform_below(rng, 9);
      const std::size_t tau = 1 + uniform_below(rng, 3);
      const auto g = corpus::random_instance(n, tau, rng);
      std::vector<std::uint32_t> counts(tau, 0);
      for (std::size_t c = 0, k = 1 + uniform_below(rng, 3); c < k; ++c) ++counts[uniform_below(rng, tau)];
      const GameContext ctx(g, {counts});
      GreedyCop cop;
      RandomRobber robber;
      const auto m = run_match(ctx, cop, robber, uniform_below(rng, 12), rng());
      bad += referee_check(g, m).has_value();
    }
    return bad;
  });
  std::size_t total = 0;
  for (auto e : errors) total += e;
  EXPECT_EQ(total, 0u);
}

TEST(Sim, RefereeCatchesTampering) {
  const auto g = gen_grid(4);
  const GameContext ctx(g, {{1, 1}});
  GreedyCop cop;
  RandomRobber robber;
  const auto m = run_match(ctx, cop, robber, 20, 5);
  ASSERT_FALSE(referee_check(g, m));

  auto off_layer = m;
  off_layer.moves[1].cops[0] = static_cast<Vertex>((off_layer.moves[0].cops[0] + 5) % 16);
  EXPECT_TRUE(referee_check(g, off_layer));

  auto flipped = m;
  flipped.outcome = m.captured() ? Outcome::Survived : Outcome::Capture;
  flipped.capture_round = flipped.moves.back().round;
  EXPECT_TRUE(referee_check(g, flipped));

  auto truncated = m;
  truncated.moves.resize(3);
  truncated.outcome = Outcome::Survived;
  EXPECT_TRUE(referee_check(g, truncated));
}

TEST(Sim, IllegalMoveNamesAgentAndEdge) {
  const auto g = gen_grid(4);
  const GameContext ctx(g, {{1, 0}});
  JumpingCop cop;
  RandomRobber robber;
  try {
    run_match(ctx, cop, robber, 10, 1);
    FAIL() << "expected IllegalMove";
  } catch (const IllegalMove& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("cop 0"), std::string::npos) << what;
    EXPECT_NE(what.find("layer 1"), std::string::npos) << what;
    EXPECT_NE(what.find("->"), std::string::npos) << what;
  }
}

TEST(Sim, TablebaseCopCapturesWithinRank) {
  const auto g = gen_grid(4);
  const GameContext ctx(g, {{2, 0}});
  const auto table = table_for(ctx);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    TablebaseCop cop(table);
    TablebaseRobber robber(table);
    const auto m = run_match(ctx, cop, robber, 200, seed);
    ASSERT_TRUE(m.captured());
    const auto& p = m.moves.front();
    std::vector<Vertex> pos{p.robber};
    pos.insert(pos.end(), p.cops.begin(), p.cops.end());
    EXPECT_LE(m.capture_round, table->rank(table->encode(pos, 0)));
  }
}

TEST(Sim, TablebaseRobberSurvivesSplitCops) {
  const auto g = gen_grid(4);
  const GameContext ctx(g, {{1, 1}});
  const auto table = table_for(ctx);
  TablebaseCop cop(table);
  TablebaseRobber robber(table);
  const auto m = run_match(ctx, cop, robber, 200, 1);
  EXPECT_EQ(m.outcome, Outcome::Survived);
  EXPECT_FALSE(referee_check(g, m));
}

TEST(Sim, GridStrategies) {
  for (std::size_t n = 4; n <= 6; ++n) {
    const auto g = gen_grid(n);
    for (auto counts : {std::vector<std::uint32_t>{0, 2}, std::vector<std::uint32_t>{2, 0}}) {
      const GameContext ctx(g, {counts});
      const auto table = table_for(ctx);
      GridCopGuard cop;
      TablebaseRobber robber(table);
      const auto m = run_match(ctx, cop, robber, 10 * n * n, n);
      EXPECT_TRUE(m.captured()) << n;
      EXPECT_FALSE(referee_check(g, m));
    }
    const GameContext split(g, {{1, 1}});
    const auto table = table_for(split);
    TablebaseCop cop(table);
    GridRobberCorner robber;
    const auto m = run_match(split, cop, robber, 500, n);
    EXPECT_EQ(m.outcome, Outcome::Survived) << n;
  }
}

TEST(Sim, GridStrategiesCheckFamily) {
  const auto g = gen_cycle_matchings(4);
  const GameContext ctx(g, {{2, 0}});
  GridCopGuard cop;
  RandomRobber robber;
  EXPECT_THROW(run_match(ctx, cop, robber, 5, 1), StrategyError);
  const GameContext split(gen_grid(4), {{2, 0}});
  GreedyCop greedy;
  GridRobberCorner corner;
  EXPECT_THROW(run_match(split, greedy, corner, 5, 1), StrategyError);
}

TEST(Sim, TreeSqueezeCaptures) {
  Rng rng = make_rng(67);
  std::size_t played = 0;
  while (played < 30) {
    const std::size_t n = 3 + uniform_below(rng, 8);
    const auto g = corpus::random_tree_instance(n, 1 + uniform_below(rng, 2), rng);
    const auto v = decide_tree_robber(g, 2);
    if (v.winner != Winner::Cop) continue;
    ++played;
    const GameContext ctx(g, v.plan);
    const auto table = table_for(ctx);
    TreeSqueezeCop cop;
    TablebaseRobber robber(table);
    const auto m = run_match(ctx, cop, robber, n * (3 * n + 2), played);
    EXPECT_TRUE(m.captured()) << serialize_mlg(g);
    EXPECT_FALSE(referee_check(g, m));
  }
}

TEST(Sim, TreeSqueezeRejectsRobbersEdge) {
  const MultiLayerGraph g(4, {EdgeList{{2, 3}}}, RobberSpec::Explicit, EdgeList{{0, 1}, {1, 2}, {2, 3}});
  const GameContext ctx(g, {{1}});
  TreeSqueezeCop cop;
  RandomRobber robber;
  EXPECT_THROW(run_match(ctx, cop, robber, 5, 1), StrategyError);
}

TEST(Sim, SlicesRobberSurvivesGreedy) {
  const auto g = gen_slices(2);
  for (auto counts : {std::vector<std::uint32_t>{1, 0}, std::vector<std::uint32_t>{0, 1}}) {
    const GameContext ctx(g, {counts});
    GreedyCop cop;
    SlicesRobber robber(2);
    const auto m = run_match(ctx, cop, robber, 1000, 7);
    EXPECT_EQ(m.outcome, Outcome::Survived);
    EXPECT_FALSE(referee_check(g, m));
  }
}

TEST(Sim, CopsbaneRobberSurvivesGreedy) {
  const auto c = gen_copsbane(20, 0.2, std::nullopt, 3);
  const GameContext ctx(c.graph, {{2, 2}});
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    GreedyCop cop;
    CopsbaneRobber robber(20);
    const auto m = run_match(ctx, cop, robber, 1000, seed);
    EXPECT_EQ(m.outcome, Outcome::Survived);
    EXPECT_FALSE(referee_check(c.graph, m));
  }
}

TEST(Sim, RecordFormat) {
  const auto g = gen_grid(3);
  const GameContext ctx(g, {{1, 1}}, "grid3");
  GreedyCop cop;
  RandomRobber robber;
  const auto text = to_string(run_match(ctx, cop, robber, 2, 9));
  EXPECT_EQ(text.rfind("MR1 graph=grid3 alloc=1,1 cops=greedy_cop robber=random_robber seed=9 horizon=2", 0), 0u) << text;
  EXPECT_NE(text.find("\n0 P "), std::string::npos);
  EXPECT_NE(text.find("OUTCOME "), std::string::npos);
}

TEST(Sim, SameSeedSameRecord) {
  const auto g = gen_grid(5);
  const GameContext ctx(g, {{1, 1}});
  GreedyCop c1, c2;
  RandomRobber r1, r2;
  EXPECT_EQ(to_string(run_match(ctx, c1, r1, 100, 4)), to_string(run_match(ctx, c2, r2, 100, 4)));
}

TEST(Sim, InteractiveQuitAbandons) {
  const auto g = gen_grid(4);
  std::istringstream in("abc\n99\nquit\n");
  std::ostringstream out;
  const auto m = interactive_play(g, {{2, 0}}, true, in, out);
  EXPECT_EQ(m.outcome, Outcome::Abandoned);
  EXPECT_NE(out.str().find("expected 1 vertex id"), std::string::npos);
}

TEST(Sim, InteractiveRobberIsCaught) {
  // a human robber who always stays put on the 4x4 grid against (2,0)
  const auto g = gen_grid(4);
  std::string script = "15\n";
  for (int i = 0; i < 100; ++i) script += "15\n";
  std::istringstream in(script);
  std::ostringstream out;
  const auto m = interactive_play(g, {{2, 0}}, true, in, out);
  EXPECT_TRUE(m.captured());
}

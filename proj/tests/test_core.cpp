#include <gtest/gtest.h>

#include <sstream>

#include "mlcr/core.hpp"
#include "mlcr/corpus.hpp"
#include "mlcr/generators.hpp"
#include "mlcr/oracles.hpp"

using namespace mlcr;

namespace {

std::size_t parse_error_line(const std::string& text) {
  try {
    parse_mlg(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Core, ParsesExplicitRobber) {
  const auto g = parse_mlg(
      "# two layers on a path\n"
      "MLG1 4 2 EXPLICIT\n"
      "LAYER 1 2\n0 1\n2 3\n"
      "LAYER 2 1\n1 2\n"
      "ROBBER 3\n0 1\n1 2\n2 3\n");
  EXPECT_EQ(g.num_vertices(), 4u);
  EXPECT_EQ(g.num_layers(), 2u);
  EXPECT_EQ(g.robber_spec(), RobberSpec::Explicit);
  EXPECT_EQ(g.robber_edges().size(), 3u);
  EXPECT_TRUE(g.robber_adjacent(1, 2));
  EXPECT_FALSE(g.robber_adjacent(0, 2));
}

TEST(Core, UnionAndCompleteRobberLayers) {
  const auto g = parse_mlg("MLG1 4 2 UNION\nLAYER 1 1\n0 1\nLAYER 2 1\n2 3\n");
  EXPECT_EQ(g.robber_edges(), (EdgeList{{0, 1}, {2, 3}}));
  const auto k = g.with_robber(RobberSpec::Complete);
  EXPECT_EQ(k.robber_edges().size(), 6u);
  EXPECT_TRUE(k.robber_adjacent(0, 3));
}

TEST(Core, ParseErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line(""), 0u);
  EXPECT_EQ(parse_error_line("MLG2 3 1 UNION\n"), 1u);
  EXPECT_EQ(parse_error_line("MLG1 3 1 SOMETIMES\n"), 1u);
  EXPECT_EQ(parse_error_line("MLG1 3 0 UNION\n"), 1u);
  EXPECT_EQ(parse_error_line("MLG1 3 1 UNION\nLAYER 2 0\n"), 2u);
  EXPECT_EQ(parse_error_line("MLG1 3 1 UNION\nLAYER 1 1\n0 3\n"), 3u);
  EXPECT_EQ(parse_error_line("MLG1 3 1 UNION\nLAYER 1 1\n1 1\n"), 3u);
  EXPECT_EQ(parse_error_line("MLG1 3 1 UNION\nLAYER 1 2\n0 1\n\n# dup\n1 0\n"), 6u);
  EXPECT_EQ(parse_error_line("MLG1 3 1 UNION\nLAYER 1 2\n0 1\n"), 3u);
  EXPECT_EQ(parse_error_line("MLG1 3 1 EXPLICIT\nLAYER 1 0\n"), 2u);
  EXPECT_EQ(parse_error_line("MLG1 3 1 UNION\nLAYER 1 0\nextra\n"), 3u);
  EXPECT_EQ(parse_error_line("MLG1 3 1 UNION\nLAYER 1 1\n0 x\n"), 3u);
}

TEST(Core, RoundTripIsCanonical) {
  Rng rng = make_rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto g = corpus::random_instance(1 + uniform_below(rng, 9), 1 + uniform_below(rng, 3), rng);
    const auto text = serialize_mlg(g);
    const auto back = parse_mlg(text);
    EXPECT_EQ(back, g);
    EXPECT_EQ(serialize_mlg(back), text);
  }
}

TEST(Core, EdgeOrderDoesNotMatter) {
  const auto a = parse_mlg("MLG1 3 1 UNION\nLAYER 1 2\n2 1\n1 0\n");
  const auto b = parse_mlg("MLG1 3 1 UNION\nLAYER 1 2\n0 1\n1 2\n");
  EXPECT_EQ(serialize_mlg(a), serialize_mlg(b));
}

TEST(Core, CompositionsStartWithAllOnFirstLayer) {
  const auto c = compositions(2, 2);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0].counts, (std::vector<std::uint32_t>{2, 0}));
  EXPECT_EQ(c[1].counts, (std::vector<std::uint32_t>{1, 1}));
  EXPECT_EQ(c[2].counts, (std::vector<std::uint32_t>{0, 2}));
  EXPECT_EQ(compositions(3, 3).size(), 10u);
  EXPECT_EQ(compositions(0, 2).size(), 1u);
  for (const auto& p : compositions(4, 3)) EXPECT_EQ(p.total(), 4u);
}

TEST(Core, AllocationAssignment) {
  const AllocationPlan p{{2, 0, 1}};
  EXPECT_EQ(p.assignment(), (std::vector<std::uint32_t>{0, 0, 2}));
  EXPECT_EQ(AllocationPlan::from_assignment({2, 0, 0}, 3), p);
  EXPECT_EQ(to_string(p), "2,0,1");
}

TEST(Core, ComponentsAndDistances) {
  const auto g = parse_mlg("MLG1 5 1 UNION\nLAYER 1 3\n0 1\n1 2\n3 4\n");
  const auto c = components(g, 0);
  EXPECT_EQ(c.count, 2u);
  const auto d = bfs_dist(g, 0, 0);
  EXPECT_EQ(d[2], 2u);
  EXPECT_EQ(d[3], kUnreachable);
}

TEST(Core, GirthMatchesSearchOracle) {
  EXPECT_EQ(girth(10, gen_petersen()), 5u);
  EXPECT_FALSE(girth(4, EdgeList{{0, 1}, {1, 2}, {2, 3}}).has_value());
  Rng rng = make_rng(3);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 3 + uniform_below(rng, 8);
    const auto e = corpus::random_edges(n, 0.3, rng);
    EXPECT_EQ(girth(n, e), oracle::girth_by_search(n, e));
  }
}

TEST(Core, FlattenAndDegrees) {
  const auto g = gen_cycle_matchings(4);
  const auto flat = flatten(g);
  EXPECT_EQ(flat.size(), 8u);
  EXPECT_EQ(min_degree(8, flat), 2u);
  EXPECT_EQ(max_degree(8, flat), 2u);
  // degree summed over layers
  EXPECT_EQ(ml_min_degree(g), 2u);
  const MultiLayerGraph twice(3, {complete_edges(3), complete_edges(3)}, RobberSpec::Union);
  EXPECT_EQ(ml_min_degree(twice), 4u);
  EXPECT_EQ(diameter(LayerView(8, flat)), 4u);
}

TEST(Core, RejectsBadConstruction) {
  EXPECT_THROW(MultiLayerGraph(3, {EdgeList{{0, 5}}}, RobberSpec::Union), GraphError);
  EXPECT_THROW(MultiLayerGraph(3, {}, RobberSpec::Union), GraphError);
}

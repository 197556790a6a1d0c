#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "mlcr/core.hpp"
#include "mlcr/generators.hpp"

using namespace mlcr;

TEST(Generators, Petersen) {
  const auto p = gen_petersen();
  EXPECT_EQ(p.size(), 15u);
  EXPECT_EQ(girth(10, p), 5u);
  EXPECT_EQ(min_degree(10, p), 3u);
  EXPECT_EQ(max_degree(10, p), 3u);
}

TEST(Generators, GnpAndRegular) {
  EXPECT_EQ(gen_gnp(10, 1.0, 3), complete_edges(10));
  EXPECT_TRUE(gen_gnp(10, 0.0, 3).empty());
  EXPECT_EQ(gen_gnp(30, 0.4, 9), gen_gnp(30, 0.4, 9));
  EXPECT_THROW(gen_gnp(5, 1.5, 1), GraphError);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto e = gen_random_regular(20, 3, seed);
    EXPECT_EQ(min_degree(20, e), 3u);
    EXPECT_EQ(max_degree(20, e), 3u);
  }
  EXPECT_THROW(gen_random_regular(7, 3, 1), GraphError);
}

TEST(Generators, GridSweep) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto g = gen_grid(n);
    EXPECT_TRUE(validate_grid(g, n).ok()) << n;
    EXPECT_EQ(g.num_vertices(), n * n);
    EXPECT_EQ(LayerView(n * n, g.flattened()).num_components(), 1u);
  }
  EXPECT_THROW(gen_grid(1), GraphError);
  // a non-grid fails its validator
  const MultiLayerGraph wrong(4, {EdgeList{{0, 1}}, EdgeList{{2, 3}}}, RobberSpec::Union);
  EXPECT_FALSE(validate_grid(wrong, 2).ok());
}

TEST(Generators, MinCounterexample) {
  const auto g = gen_min_counterexample_petersen();
  EXPECT_EQ(g.num_vertices(), 19u);
  EXPECT_EQ(g.layer(0).size(), 15u + 9u);
  EXPECT_TRUE(g.layer_view(0).connected());
  EXPECT_TRUE(g.layer_view(1).connected());
  // C4 has girth 4
  EXPECT_THROW(gen_min_counterexample(4, EdgeList{{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 2), GraphError);
}

TEST(Generators, SlicesSweep) {
  for (std::size_t k = 1; k <= 2; ++k) {
    const auto g = gen_slices(k);
    const SlicesLayout L{k};
    EXPECT_TRUE(validate_slices(g, k).ok());
    EXPECT_EQ(g.num_vertices(), L.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      const auto c = L.coord(v);
      if (c.is_hub()) {
        EXPECT_EQ(L.hub(c.x), v);
      }
      else EXPECT_EQ(L.at(c.x, c.y, c.z), v);
    }
  }
}

TEST(Generators, CycleMatchingsSweep) {
  for (std::size_t n = 2; n <= 10; ++n) {
    const auto g = gen_cycle_matchings(n);
    EXPECT_EQ(g.flattened().size(), 2 * n);
    EXPECT_EQ(max_degree(2 * n, g.layer(0)), 1u);
    EXPECT_EQ(max_degree(2 * n, g.layer(1)), 1u);
  }
}

TEST(Generators, SoiferSweep) {
  for (std::size_t n = 4; n <= 30; ++n)
    for (std::size_t tau = 1; tau < n / 2; ++tau) {
      const auto g = gen_soifer(n, tau);
      const auto r = validate_soifer(g, n, tau);
      // hard checks only; the ceil(n/tau) degree check is soft
      EXPECT_TRUE(r.ok()) << n << ' ' << tau;
      if (n % 2 == 0) {
        std::size_t total = 0;
        for (const auto& l : g.layers()) total += l.size();
        EXPECT_EQ(total, n * (n - 1) / 2);
        EXPECT_EQ(g.flattened(), complete_edges(n));
      }
    }
  EXPECT_THROW(gen_soifer(8, 4), GraphError);
}

TEST(Generators, DomsetReduction) {
  const EdgeList p4{{0, 1}, {1, 2}, {2, 3}};
  const auto g = gen_domset_reduction(4, p4);
  EXPECT_EQ(g.num_layers(), 4u);
  EXPECT_EQ(g.layer(0), (EdgeList{{0, 1}}));
  EXPECT_EQ(g.layer(1), (EdgeList{{0, 1}, {1, 2}}));
}

TEST(Generators, RandomLayers) {
  EXPECT_TRUE(gen_random_layers(20, 0.0, 3, 1).flattened().empty());
  EXPECT_EQ(gen_random_layers(12, 1.0, 1, 5).layer(0), complete_edges(12));
  EXPECT_EQ(serialize_mlg(gen_random_layers(25, 0.3, 3, 7)), serialize_mlg(gen_random_layers(25, 0.3, 3, 7)));
  EXPECT_NE(serialize_mlg(gen_random_layers(25, 0.3, 3, 7)), serialize_mlg(gen_random_layers(25, 0.3, 3, 8)));
}

TEST(Generators, RandomLayersDensity) {
  // flattened density within 3 sigma of p over 200 seeds
  const std::size_t n = 20, pairs = n * (n - 1) / 2;
  for (std::size_t tau : {1, 3}) {
    double sum = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) sum += static_cast<double>(gen_random_layers(n, 0.3, tau, seed).flattened().size());
    const double trials = 200.0 * static_cast<double>(pairs);
    const double mean = sum / trials;
    EXPECT_NEAR(mean, 0.3, 3 * std::sqrt(0.3 * 0.7 / trials)) << tau;
  }
}

TEST(Generators, Copsbane) {
  for (std::size_t N : {8, 12, 16, 20}) {
    const auto c = gen_copsbane(N, 0.2, std::nullopt, 100 + N);
    EXPECT_TRUE(c.report.ok()) << N;
    EXPECT_EQ(c.graph.num_vertices(), N + 1 + N * 2 * c.layout.D);
    EXPECT_EQ(c.layout.D, 2 * c.core_diameter);
    EXPECT_GE(c.expansion, 0.2);
    EXPECT_FALSE(c.expansion_heuristic);
    // every colour class component respects the achieved clustering
    for (const auto* colour : {&c.colour1, &c.colour2}) {
      const LayerView v(N, *colour);
      std::vector<std::size_t> size(v.num_components(), 0);
      for (Vertex x = 0; x < N; ++x) ++size[v.component(x)];
      for (auto s : size) EXPECT_LE(s, c.clustering);
    }
  }
  const auto fixed = gen_copsbane(8, 0.2, 3, 1);
  EXPECT_EQ(fixed.layout.D, 3u);
  EXPECT_EQ(serialize_mlg(gen_copsbane(12, 0.2, std::nullopt, 4).graph), serialize_mlg(gen_copsbane(12, 0.2, std::nullopt, 4).graph));
  EXPECT_THROW(gen_copsbane(7, 0.2, std::nullopt, 1), GraphError);
}

TEST(Generators, ReportFormat) {
  std::ostringstream out;
  write_report(validate_grid(gen_grid(3), 3), out);
  EXPECT_NE(out.str().find("FAMILY grid"), std::string::npos);
  EXPECT_NE(out.str().find("STATUS OK"), std::string::npos);
}

#include <gtest/gtest.h>

#include <sstream>

#include "mlcr/experiment.hpp"

using namespace mlcr;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Experiment, CompleteGraphNeedsOnePair) {
  const auto row = experiment_row(30, 1.0, 1, 1);
  EXPECT_EQ(row.greedy, 1u);
  EXPECT_EQ(row.min_degree, 29u);
  EXPECT_TRUE(row.bound_applies);
}

TEST(Experiment, RowsAreConsistent) {
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  const auto rows = cmd_experiment_random(64, 0.3, 2, seeds);
  ASSERT_EQ(rows.size(), 5u);
  for (const auto& r : rows) {
    const auto g = gen_random_layers(64, 0.3, 2, r.seed);
    EXPECT_EQ(r.min_degree, ml_min_degree(g));
    EXPECT_DOUBLE_EQ(r.bound, domset_bound(64, 2, r.min_degree));
    if (r.bound_applies) {
      EXPECT_LE(static_cast<double>(r.greedy), r.bound);
    }
  }
}

TEST(Experiment, CsvLayoutAndDeterminism) {
  const std::vector<std::uint64_t> seeds{7, 8, 9};
  std::ostringstream a, b;
  write_experiment_csv(cmd_experiment_random(40, 0.4, 3, seeds, 1), a);
  write_experiment_csv(cmd_experiment_random(40, 0.4, 3, seeds, 3), b);
  EXPECT_EQ(a.str(), b.str());
  const auto l = lines(a.str());
  ASSERT_EQ(l.size(), 2u + 3u + 1u);
  EXPECT_EQ(l[0], kExperimentVersion);
  EXPECT_EQ(l[1], kExperimentHeader);
  EXPECT_EQ(l[2].rfind("40,0.4,3,7,", 0), 0u);
  EXPECT_EQ(l[5].rfind("40,0.4,3,mean,", 0), 0u);
  // wall_ms stays empty without timing
  EXPECT_EQ(l[2].back(), ',');
  std::ostringstream timed;
  write_experiment_csv(cmd_experiment_random(40, 0.4, 3, seeds), timed, true);
  EXPECT_NE(lines(timed.str())[2].back(), ',');
}

TEST(Experiment, CsvQuoting) {
  EXPECT_EQ(detail::csv_field("plain"), "plain");
  EXPECT_EQ(detail::csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(detail::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Experiment, SampledClosureIsSoundForCompleteGraphs) {
  // on K_n one cop dominates everything, so no sample can be closed at k=1
  const auto g = gen_random_layers(10, 1.0, 1, 1);
  Rng rng = make_rng(1);
  EXPECT_FALSE(mec_sampled(g, 1, 50, rng));
}

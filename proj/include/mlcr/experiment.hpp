#pragma once

// Random-layer experiment: per seed, minimum degree, greedy dominating set,
// the probabilistic bound and a sampled closure level, written as CSV.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mlcr/bounds.hpp"
#include "mlcr/core.hpp"
#include "mlcr/generators.hpp"
#include "mlcr/parallel.hpp"
#include "mlcr/rng.hpp"

namespace mlcr {

inline constexpr const char* kExperimentHeader =
    "n,p,tau,seed,min_degree,greedy_domset,bound,bound_applies,mec_k_sampled,wall_ms";
inline constexpr const char* kExperimentVersion = "# mlcr-experiment v1";

struct ExperimentRow {
  std::size_t n = 0;
  double p = 0.0;
  std::size_t tau = 1;
  std::uint64_t seed = 0;
  std::size_t min_degree = 0;
  std::size_t greedy = 0;
  double bound = 0.0;
  bool bound_applies = false;  // min degree >= tau(e-1)
  std::uint32_t mec_k = 0;
  double wall_ms = 0.0;
};

/// Closure test over `samples` random placements of k cops. A false result is
/// exact (a counterexample was found); true only means none was sampled.
inline bool mec_sampled(const MultiLayerGraph& g, std::uint32_t k, std::size_t samples, Rng& rng) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return false;
  std::vector<LayerView> views;
  for (std::size_t i = 0; i < g.num_layers(); ++i) views.push_back(g.layer_view(i));
  const LayerView robber = g.robber_view();
  std::vector<char> occupied(n), threatened(n);
  for (std::size_t s = 0; s < samples; ++s) {
    std::fill(occupied.begin(), occupied.end(), 0);
    std::fill(threatened.begin(), threatened.end(), 0);
    for (std::uint32_t c = 0; c < k; ++c) {
      const auto v = static_cast<Vertex>(uniform_below(rng, n));
      const auto layer = uniform_below(rng, g.num_layers());
      occupied[v] = 1;
      for (Vertex x : views[layer].neighbors(v)) threatened[x] = 1;
    }
    bool any_free = false;
    for (Vertex v = 0; v < n; ++v) {
      if (occupied[v]) continue;
      any_free = true;
      bool escape = false;
      for (Vertex x : robber.neighbors(v))
        if (!occupied[x] && !threatened[x]) {
          escape = true;
          break;
        }
      if (!escape) return false;
    }
    if (!any_free) return false;
  }
  return true;
}

inline ExperimentRow experiment_row(std::size_t n, double p, std::size_t tau, std::uint64_t seed, std::uint32_t mec_k_max = 16,
                                    std::size_t mec_samples = 200) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentRow row;
  row.n = n;
  row.p = p;
  row.tau = tau;
  row.seed = seed;
  const auto g = gen_random_layers(n, p, tau, seed);
  row.min_degree = ml_min_degree(g);
  row.greedy = domset_greedy(g).size();
  row.bound = domset_bound(n, tau, row.min_degree);
  row.bound_applies = static_cast<double>(row.min_degree) >= static_cast<double>(tau) * (std::exp(1.0) - 1.0);
  Rng rng = make_rng(seed, 0xEC);
  for (std::uint32_t k = 1; k <= mec_k_max; ++k) {
    if (!mec_sampled(g, k, mec_samples, rng)) break;
    row.mec_k = k;
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

inline std::vector<ExperimentRow> cmd_experiment_random(std::size_t n, double p, std::size_t tau,
                                                        const std::vector<std::uint64_t>& seeds, unsigned threads = 1) {
  return parallel_map(seeds.size(), threads, [&](std::size_t i) { return experiment_row(n, p, tau, seeds[i]); });
}

namespace detail {

/// RFC 4180 field: quoted when it holds a comma, quote or line break.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string fmt(double x, int precision = 6) {
  std::ostringstream out;
  out.precision(precision);
  out << x;
  return out.str();
}

}  // namespace detail

/// Rows then a `mean` summary row. wall_ms stays empty unless `timing`, so
/// the default output is byte-identical across runs.
inline void write_experiment_csv(const std::vector<ExperimentRow>& rows, std::ostream& out, bool timing = false) {
  using detail::csv_field;
  using detail::fmt;
  out << kExperimentVersion << '\n' << kExperimentHeader << '\n';
  double sum_delta = 0, sum_greedy = 0, sum_bound = 0, sum_mec = 0, sum_ms = 0, applies = 0;
  for (const auto& r : rows) {
    out << r.n << ',' << fmt(r.p) << ',' << r.tau << ',' << r.seed << ',' << r.min_degree << ',' << r.greedy << ','
        << fmt(r.bound) << ',' << (r.bound_applies ? 1 : 0) << ',' << r.mec_k << ',' << (timing ? fmt(r.wall_ms, 4) : "")
        << '\n';
    sum_delta += static_cast<double>(r.min_degree);
    sum_greedy += static_cast<double>(r.greedy);
    sum_bound += r.bound;
    sum_mec += r.mec_k;
    sum_ms += r.wall_ms;
    applies += r.bound_applies;
  }
  if (rows.empty()) return;
  const double m = static_cast<double>(rows.size());
  const auto& f = rows.front();
  out << f.n << ',' << fmt(f.p) << ',' << f.tau << ',' << csv_field("mean") << ',' << fmt(sum_delta / m) << ','
      << fmt(sum_greedy / m) << ',' << fmt(sum_bound / m) << ',' << fmt(applies / m) << ',' << fmt(sum_mec / m) << ','
      << (timing ? fmt(sum_ms / m, 4) : "") << '\n';
}

}  // namespace mlcr

#pragma once

// Acceptance criteria 1-15. Each criterion returns PASS/FAIL with
// deterministic detail lines; wall time is reported separately so the report
// text depends only on the seed.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mlcr/bounds.hpp"
#include "mlcr/core.hpp"
#include "mlcr/corpus.hpp"
#include "mlcr/generators.hpp"
#include "mlcr/oracles.hpp"
#include "mlcr/rng.hpp"
#include "mlcr/sim.hpp"
#include "mlcr/solver.hpp"
#include "mlcr/treealgo.hpp"

namespace mlcr::acceptance {

// Pinned tolerances.
inline constexpr double kPstarResidual = 1e-12;
inline constexpr double kDensitySigmas = 3.0;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::string> details;
  double seconds = 0.0;
};

struct Options {
  std::uint64_t seed = 20240501;
  /// Criterion ids or names to run; empty runs all.
  std::vector<std::string> only;
  SolverOptions solver;
};

namespace detail {

/// Collects checks; the criterion passes when every hard check passes.
struct Check {
  bool pass = true;
  std::vector<std::string> lines;

  void expect(bool ok, const std::string& what) {
    if (!ok) pass = false;
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { lines.push_back("note " + what); }
  /// Records only failures (for large loops) and returns ok.
  bool quiet(bool ok, const std::string& what) {
    if (!ok) expect(false, what);
    return ok;
  }
};

inline std::string w(Winner x) { return std::string(to_string(x)); }

inline std::string plan_str(std::initializer_list<std::uint32_t> c) { return to_string(AllocationPlan{std::vector<std::uint32_t>(c)}); }

}  // namespace detail

using detail::Check;

// 1 -------------------------------------------------------------------------
inline Check grid_theorem(const Options& o) {
  Check c;
  for (std::size_t n : {4, 5}) {
    const auto g = gen_grid(n);
    for (auto [a, b, want] : {std::tuple{2u, 0u, Winner::Cop}, {0u, 2u, Winner::Cop}, {1u, 1u, Winner::Robber}}) {
      const auto v = decide_allocated(g, AllocationPlan{{a, b}}, o.solver).winner;
      c.expect(v == want, "grid n=" + std::to_string(n) + " alloc=" + detail::plan_str({a, b}) + " -> " + detail::w(v));
    }
  }
  const auto v = decide_allocated(gen_grid(3), AllocationPlan{{1, 1}}, o.solver).winner;
  c.expect(v == Winner::Cop, "grid n=3 alloc=1,1 -> " + detail::w(v));
  return c;
}

// 2 -------------------------------------------------------------------------
inline Check petersen_counterexample(const Options& o) {
  Check c;
  const auto g = gen_min_counterexample_petersen();
  c.expect(g.num_vertices() == 19, "vertices=" + std::to_string(g.num_vertices()));
  const auto mc = multilayer_cop_number(g, 3, o.solver);
  c.expect(mc == 2u, "multilayer cop number=" + (mc ? std::to_string(*mc) : std::string(">3")));
  for (std::size_t i = 0; i < 2; ++i) {
    const MultiLayerGraph single(g.num_vertices(), {g.layer(i)}, RobberSpec::Union);
    const auto two = decide_allocated(single, AllocationPlan{{2}}, o.solver).winner;
    const auto three = decide_allocated(single, AllocationPlan{{3}}, o.solver).winner;
    c.expect(two == Winner::Robber && three == Winner::Cop,
             "layer " + std::to_string(i + 1) + " k=2 " + detail::w(two) + " k=3 " + detail::w(three));
  }
  return c;
}

// 3 -------------------------------------------------------------------------
inline Check cycle_matchings(const Options& o) {
  Check c;
  for (std::size_t n : {3, 4}) {
    const auto mc = multilayer_cop_number(gen_cycle_matchings(n), static_cast<std::uint32_t>(n), o.solver);
    c.expect(mc == n, "2n=" + std::to_string(2 * n) + " multilayer cop number=" + (mc ? std::to_string(*mc) : std::string("none")));
  }
  return c;
}

// 4 -------------------------------------------------------------------------
inline Check slices(const Options& o) {
  Check c;
  const std::size_t k = 2;
  const auto g = gen_slices(k);
  const SlicesLayout L{k};
  c.expect(g.num_vertices() == 150, "vertices=" + std::to_string(g.num_vertices()));
  for (std::size_t i = 0; i < 2; ++i) {
    const auto cop = single_layer_cop_number(g.num_vertices(), g.layer(i), 2, o.solver);
    c.expect(cop.has_value(), "cop(C" + std::to_string(i + 1) + ")=" + (cop ? std::to_string(*cop) : std::string(">2")));
  }
  for (std::size_t x = 1; x <= 2; ++x) {
    const auto cop = single_layer_cop_number(L.block(), slice_edges(L, g.robber_edges(), x), 2, o.solver);
    c.expect(cop.has_value(), "slice " + std::to_string(x) + " cop=" + (cop ? std::to_string(*cop) : std::string(">2")));
  }
  for (const auto& plan : compositions(1, 2)) {
    const GameContext ctx(g, plan, "slices2");
    auto table = std::make_shared<const CopWinTable>(build_copwin(g, ctx.assignment, o.solver));
    const auto v = verdict_from_table(*table).winner;
    c.expect(v == Winner::Robber, "alloc=" + to_string(plan) + " -> " + detail::w(v));
    TablebaseCop cop(table);
    SlicesRobber robber(k);
    const auto m = run_match(ctx, cop, robber, 1000, o.seed);
    c.expect(!m.captured() && !referee_check(g, m), "slices_robber vs tablebase_cop alloc=" + to_string(plan) + " survived 1000");
    std::size_t caught = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
      GreedyCop greedy;
      SlicesRobber r2(k);
      caught += run_match(ctx, greedy, r2, 1000, o.seed + s).captured();
    }
    c.expect(caught == 0, "slices_robber vs greedy_cop alloc=" + to_string(plan) + " captures=" + std::to_string(caught) + "/10");
  }
  return c;
}

// 5 -------------------------------------------------------------------------
inline Check domset_reduction(const Options& o) {
  Check c;
  Rng rng = make_rng(o.seed, 5);
  std::size_t checked = 0, cop = 0;
  for (std::size_t inst = 0; inst < 200; ++inst) {
    const std::size_t n = 2 + uniform_below(rng, 6);
    const auto edges = corpus::random_connected(n, 0.4 * unit_double(rng), rng);
    const auto gamma = oracle::domination_number(n, edges);
    const auto g = gen_domset_reduction(n, edges);
    for (std::uint32_t k = 1; k <= 3; ++k) {
      const bool got = decide_free_layer_choice(g, k, o.solver).winner == Winner::Cop;
      ++checked;
      cop += got;
      c.quiet(got == (gamma <= k), "instance " + std::to_string(inst) + " n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                       " gamma=" + std::to_string(gamma) + " verdict=" + (got ? "COP" : "ROBBER"));
    }
  }
  c.expect(c.pass, "200 graphs x k=1..3: " + std::to_string(checked) + " verdicts match (gamma<=k), COP in " + std::to_string(cop));
  return c;
}

// 6 -------------------------------------------------------------------------
inline Check tree_algorithm(const Options& o) {
  Check c;
  Rng rng = make_rng(o.seed, 6);
  std::size_t cop = 0, total = 0;
  for (std::size_t inst = 0; inst < 300; ++inst) {
    const std::size_t n = 2 + uniform_below(rng, 7);
    const std::size_t tau = 1 + uniform_below(rng, 2);
    const auto k = static_cast<std::uint32_t>(1 + uniform_below(rng, 2));
    const auto g = corpus::random_tree_instance(n, tau, rng);
    const auto fast = decide_tree_robber(g, k).winner;
    const auto exact = decide_choose_allocation(g, k, o.solver).winner;
    ++total;
    cop += fast == Winner::Cop;
    c.quiet(fast == exact, "instance " + std::to_string(inst) + " tree=" + detail::w(fast) + " solver=" + detail::w(exact));
  }
  c.expect(c.pass, std::to_string(total) + " tree instances agree with the solver (COP " + std::to_string(cop) + ", ROBBER " +
                       std::to_string(total - cop) + ")");
  return c;
}

// 7 -------------------------------------------------------------------------
inline Check soifer(const Options&) {
  Check c;
  std::size_t built = 0, guaranteed = 0;
  std::vector<std::string> over;
  for (std::size_t n = 4; n <= 30; ++n)
    for (std::size_t tau = 1; tau < n / 2; ++tau) {
      const auto g = gen_soifer(n, tau);
      const auto r = validate_soifer(g, n, tau);
      ++built;
      bool hard = true;
      for (const auto& chk : r.checks)
        if (chk.hard && !chk.pass) hard = false;
      guaranteed += hard;
      c.quiet(hard, "n=" + std::to_string(n) + " tau=" + std::to_string(tau) + " structural check failed");
      const auto* soft = r.find("max_degree_ceil_n_over_tau");
      if (!soft->pass) over.push_back(std::to_string(n) + "/" + std::to_string(tau) + ":" + soft->measured);
    }
  c.expect(guaranteed == built, std::to_string(built) + " (n,tau) pairs: connected layers, exact disjoint cover of K_n");
  std::string list;
  for (const auto& s : over) list += (list.empty() ? "" : " ") + s;
  c.expect(over.empty(), "max layer degree <= ceil(n/tau) fails for " + std::to_string(over.size()) + " odd-n pairs" +
                             (over.empty() ? std::string() : " [n/tau:maxdeg<=bound " + list + "]"));
  return c;
}

// 8 -------------------------------------------------------------------------
inline Check clique_bound(const Options& o) {
  Check c;
  for (auto [n, tau] : {std::pair<std::size_t, std::size_t>{24, 10}, {30, 11}, {40, 12}}) {
    const auto g = gen_soifer(n, tau);
    const auto k = static_cast<std::uint32_t>(tau / 10);
    const auto res = clique_lb(g, k);
    const bool oracle_ok = oracle::clique_condition(g, k);
    c.expect(res.holds && oracle_ok, "soifer(" + std::to_string(n) + "," + std::to_string(tau) + ") k=" + std::to_string(k) +
                                         " holds via " + (res.method == CliqueLbMethod::Certificate ? "certificate" : "enumeration") +
                                         ", definition check " + (oracle_ok ? "agrees" : "disagrees") + "; maxcop >= " +
                                         std::to_string(k + 1));
  }
  // Exact path against the definition on small complete-robber instances.
  Rng rng = make_rng(o.seed, 8);
  std::size_t agree = 0;
  for (std::size_t inst = 0; inst < 100; ++inst) {
    const std::size_t n = 3 + uniform_below(rng, 5);
    const std::size_t tau = 1 + uniform_below(rng, 2);
    std::vector<EdgeList> layers;
    for (std::size_t i = 0; i < tau; ++i) layers.push_back(corpus::random_edges(n, 0.1 + 0.3 * unit_double(rng), rng));
    const MultiLayerGraph g(n, layers, RobberSpec::Complete);
    for (std::uint32_t k = 1; k <= 2; ++k) {
      const bool a = clique_lb_check(g, k), b = oracle::clique_condition(g, k);
      agree += a == b;
      c.quiet(a == b, "small instance " + std::to_string(inst) + " k=" + std::to_string(k) + " disagrees with definition");
    }
  }
  c.expect(agree == 200, "clique condition matches its definition on " + std::to_string(agree) + "/200 small cases");
  return c;
}

// 9 -------------------------------------------------------------------------
inline Check solver_oracle(const Options& o) {
  Check c;
  Rng rng = make_rng(o.seed, 9);
  std::size_t states = 0, team = 0;
  for (std::size_t inst = 0; inst < 300; ++inst) {
    const std::size_t n = 2 + uniform_below(rng, 5);
    const std::size_t tau = 1 + uniform_below(rng, 2);
    const std::size_t k = 1 + uniform_below(rng, 2);
    const auto g = corpus::random_instance(n, tau, rng);
    std::vector<std::uint32_t> assignment(k);
    for (auto& a : assignment) a = static_cast<std::uint32_t>(uniform_below(rng, tau));
    const auto table = build_copwin(g, assignment, o.solver);
    const oracle::NaiveGame naive(g, assignment);
    bool same = naive.num_states() == table.num_states();
    for (CopWinTable::Index s = 0; s < table.num_states() && same; ++s) {
      const auto st = table.decode(s);
      const auto value = naive.value(st.positions, st.turn);
      same = table.copwin(s) == (value != oracle::kInf) && (!table.copwin(s) || table.rank(s) == value);
      ++states;
    }
    c.quiet(same, "instance " + std::to_string(inst) + " status/rank differs from fixed-point iteration");
    if (n <= 5) {
      const oracle::TeamGame tg(g, assignment);
      std::vector<Vertex> cops(k, 0);
      bool agree = true;
      do
        for (Vertex r = 0; r < n; ++r) {
          std::vector<Vertex> pos{r};
          pos.insert(pos.end(), cops.begin(), cops.end());
          agree = agree && table.copwin(table.encode(pos, 0)) == tg.copwin(r, cops);
        }
      while (next_tuple(cops, n));
      ++team;
      c.quiet(agree, "instance " + std::to_string(inst) + " differs from simultaneous-move game");
    }
  }
  c.expect(c.pass, "300 instances, " + std::to_string(states) + " states: status and rank equal fixed-point iteration; " +
                       std::to_string(team) + " instances equal the simultaneous-move game");
  return c;
}

// 10 ------------------------------------------------------------------------
inline Check monotonicity(const Options& o) {
  Check c;
  Rng rng = make_rng(o.seed, 10);
  std::size_t robber_add = 0, cop_add = 0, free_choice = 0, more_cops = 0;
  for (std::size_t inst = 0; inst < 200; ++inst) {
    const std::size_t n = 3 + uniform_below(rng, 4);
    const std::size_t tau = 1 + uniform_below(rng, 2);
    const auto k = static_cast<std::uint32_t>(1 + uniform_below(rng, 2));
    std::vector<EdgeList> layers;
    for (std::size_t i = 0; i < tau; ++i) layers.push_back(corpus::random_edges(n, corpus::random_density(rng), rng));
    const auto robber = corpus::random_edges(n, corpus::random_density(rng), rng);
    const MultiLayerGraph g(n, layers, RobberSpec::Explicit, robber);
    const auto base = decide_choose_allocation(g, k, o.solver).winner;
    const std::string id = "instance " + std::to_string(inst);

    const auto more_robber = g.with_robber(RobberSpec::Explicit, corpus::add_random_edges(n, robber, 1 + uniform_below(rng, 3), rng));
    if (base == Winner::Robber) {
      ++robber_add;
      c.quiet(decide_choose_allocation(more_robber, k, o.solver).winner == Winner::Robber, id + ": robber edges turned ROBBER into COP");
    }
    auto richer = layers;
    const auto layer = uniform_below(rng, tau);
    richer[layer] = corpus::add_random_edges(n, richer[layer], 1 + uniform_below(rng, 3), rng);
    if (base == Winner::Cop) {
      ++cop_add;
      c.quiet(decide_choose_allocation(MultiLayerGraph(n, richer, RobberSpec::Explicit, robber), k, o.solver).winner == Winner::Cop,
              id + ": cop edges turned COP into ROBBER");
    }
    const MultiLayerGraph uni(n, layers, RobberSpec::Union);
    if (decide_choose_allocation(uni, k, o.solver).winner == Winner::Cop) {
      ++free_choice;
      c.quiet(decide_free_layer_choice(uni, k, o.solver).winner == Winner::Cop, id + ": union COP but free layer choice ROBBER");
    }
    if (base == Winner::Cop) {
      ++more_cops;
      c.quiet(decide_choose_allocation(g, k + 1, o.solver).winner == Winner::Cop, id + ": COP at k but ROBBER at k+1");
    }
  }
  c.expect(c.pass, "robber-edge additions on " + std::to_string(robber_add) + " ROBBER instances, cop-edge additions on " +
                       std::to_string(cop_add) + " COP instances, union->free choice on " + std::to_string(free_choice) +
                       ", k->k+1 on " + std::to_string(more_cops));
  return c;
}

// 11 ------------------------------------------------------------------------
inline Check bounds_soundness(const Options& o) {
  Check c;
  Rng rng = make_rng(o.seed, 11);
  std::size_t mec_true = 0, dom_checked = 0, mec_cases = 0;
  for (std::size_t inst = 0; inst < 150; ++inst) {
    const std::size_t n = 3 + uniform_below(rng, 4);
    const std::size_t tau = 1 + uniform_below(rng, 2);
    const auto g = corpus::random_instance(n, tau, rng);
    const std::string id = "instance " + std::to_string(inst);
    for (std::uint32_t k = 1; k <= 2; ++k) {
      const bool mec = mec_check(g, k);
      ++mec_cases;
      c.quiet(mec == oracle::existentially_closed(g, k), id + " k=" + std::to_string(k) + ": closure differs from definition");
      if (mec) {
        ++mec_true;
        c.quiet(decide_choose_allocation(g, k, o.solver).winner == Winner::Robber, id + ": closed at k but COP wins with k");
      }
    }
    if (g.robber_spec() == RobberSpec::Complete) {
      const auto exact = domset_exact(g, n);
      const auto greedy = domset_greedy(g);
      ++dom_checked;
      if (!c.quiet(exact.has_value() && is_dominating(g, *exact) && is_dominating(g, greedy), id + ": invalid dominating set")) continue;
      c.quiet(exact->size() == oracle::multilayer_domination_number(g), id + ": exact dominating set not minimum");
      c.quiet(exact->size() <= greedy.size(), id + ": exact above greedy");
      c.quiet(multilayer_cop_number(g, static_cast<std::uint32_t>(exact->size()), o.solver).has_value(),
              id + ": cop number exceeds dominating set size");
    }
  }
  c.expect(c.pass, std::to_string(mec_cases) + " closure checks (" + std::to_string(mec_true) + " closed, all ROBBER); " +
                       std::to_string(dom_checked) + " complete-robber instances with cop number <= gamma");
  // exact <= greedy <= bound on denser random layers.
  std::size_t applies = 0, total = 0;
  for (std::size_t n : {16, 24})
    for (std::size_t tau : {1, 2, 3})
      for (double p : {0.4, 0.7}) {
        const auto g = gen_random_layers(n, p, tau, rng());
        const auto delta = ml_min_degree(g);
        const auto greedy = domset_greedy(g).size();
        const auto exact = domset_exact(g, greedy);
        ++total;
        c.quiet(exact && exact->size() <= greedy, "n=" + std::to_string(n) + " exact above greedy");
        if (static_cast<double>(delta) >= static_cast<double>(tau) * (std::exp(1.0) - 1.0)) {
          ++applies;
          c.quiet(static_cast<double>(greedy) <= domset_bound(n, tau, delta),
                  "n=" + std::to_string(n) + " tau=" + std::to_string(tau) + " greedy above bound");
        }
      }
  c.expect(c.pass, "exact <= greedy on " + std::to_string(total) + " random-layer graphs, greedy <= bound on the " +
                       std::to_string(applies) + " with min degree >= tau(e-1)");
  return c;
}

// 12 ------------------------------------------------------------------------
inline Check pstar_density(const Options& o) {
  Check c;
  double worst = 0.0;
  bool sandwich = true;
  std::size_t points = 0;
  for (std::size_t tau : {1, 2, 3, 5, 10})
    for (std::size_t i = 1; i <= 20; ++i) {
      const double p = static_cast<double>(i) / 21.0;
      const double ps = pstar(p, tau);
      const double residual = std::abs(1.0 - std::pow(1.0 - ps / static_cast<double>(tau), static_cast<double>(tau)) - p);
      worst = std::max(worst, residual);
      if (p <= 0.5) sandwich = sandwich && ps / 2 <= p + kPstarResidual && p <= ps + kPstarResidual;
      ++points;
    }
  std::ostringstream res;
  res << worst;
  c.expect(worst < kPstarResidual, std::to_string(points) + "-point grid: max residual " + res.str() + " < 1e-12");
  c.expect(sandwich, "p*/2 <= p <= p* (to 1e-12) for all grid points with p <= 1/2");
  const std::size_t n = 64;
  const double p = 0.3;
  const double pairs = static_cast<double>(n * (n - 1) / 2);
  for (std::size_t tau : {1, 2, 3}) {
    double sum = 0;
    const std::size_t seeds = 200;
    for (std::size_t s = 0; s < seeds; ++s)
      sum += static_cast<double>(gen_random_layers(n, p, tau, o.seed + s).flattened().size()) / pairs;
    const double mean = sum / static_cast<double>(seeds);
    const double sigma = std::sqrt(p * (1 - p) / (pairs * static_cast<double>(seeds)));
    std::ostringstream line;
    line.precision(5);
    line << "tau=" << tau << " mean flattened density " << mean << " within 3 sigma (" << sigma << ") of 0.3";
    c.expect(std::abs(mean - p) <= kDensitySigmas * sigma, line.str());
  }
  return c;
}

// 13 ------------------------------------------------------------------------
inline Check treewidth_strategy(const Options& o) {
  Check c;
  Rng rng = make_rng(o.seed, 13);
  std::size_t done = 0, skipped = 0, captured = 0, width_oracle = 0;
  while (done < 50) {
    const std::size_t n = 4 + uniform_below(rng, 7);
    const std::size_t tau = 1 + uniform_below(rng, 2);
    const auto g = corpus::random_connected_instance(n, tau, 0.12, rng);
    auto [width, td] = treewidth_exact_small(n, g.robber_edges());
    // Keep the tablebase feasible: at most 4 cops.
    if (td.max_bag() > 4) {
      ++skipped;
      continue;
    }
    ++done;
    const std::string id = "instance " + std::to_string(done);
    c.quiet(td_validate(td, n, g.robber_edges()) && td.width() == width, id + ": invalid decomposition");
    if (n <= 8) {
      ++width_oracle;
      c.quiet(width == oracle::treewidth_by_permutation(n, g.robber_edges()), id + ": width differs from elimination orders");
    }
    const auto cops = treewidth_cop_bound(g, td);
    std::vector<std::uint32_t> counts(tau, 0);
    for (std::size_t i = 0; i < cops; ++i) ++counts[i % tau];
    const GameContext ctx(g, AllocationPlan{counts}, "tw" + std::to_string(done));
    auto table = std::make_shared<const CopWinTable>(build_copwin(g, ctx.assignment, o.solver));
    BagsweepCop sweep(td);
    TablebaseRobber robber(table);
    const auto m = run_match(ctx, sweep, robber, 10 * n * n, o.seed + done);
    captured += m.captured();
    c.quiet(m.captured() && !referee_check(g, m), id + ": bagsweep did not capture");
    c.quiet(multilayer_cop_number(g, static_cast<std::uint32_t>(cops), o.solver).has_value(), id + ": cop number above bag size");
  }
  c.expect(c.pass, std::to_string(captured) + "/50 captures by bagsweep_cop, cop number <= max bag everywhere; widths match " +
                       std::to_string(width_oracle) + " permutation checks");
  c.note("corpus limited to max bag <= 4; skipped " + std::to_string(skipped) + " draws");
  return c;
}

// 14 ------------------------------------------------------------------------
inline Check copsbane(const Options& o) {
  Check c;
  const double alpha = 0.2;
  for (std::size_t N : {8, 12, 16, 20}) {
    const auto res = gen_copsbane(N, alpha, std::nullopt, o.seed + N);
    const auto* arm = res.report.find("arm_length");
    std::ostringstream line;
    line << "N=" << N << " validator " << (res.report.ok() ? "passes" : "fails") << ", exact expansion " << res.expansion
         << ", clustering " << res.clustering << ", arm length " << (arm ? arm->measured : "?") << " = 2D+1 with D=" << res.layout.D;
    c.expect(res.report.ok() && !res.expansion_heuristic && arm && arm->pass, line.str());
  }
  for (std::size_t N : {20, 50}) {
    std::size_t caught = 0, degraded = 0, violations = 0, illegal = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto res = gen_copsbane(N, alpha, std::nullopt, o.seed + 100 * N + s);
      const GameContext ctx(res.graph, AllocationPlan{{2, 2}}, "copsbane" + std::to_string(N));
      GreedyCop greedy;
      CopsbaneRobber robber(N);
      const auto m = run_match(ctx, greedy, robber, 1000, o.seed + s);
      caught += m.captured();
      degraded += robber.degraded();
      violations += robber.violations();
      illegal += referee_check(res.graph, m).has_value();
    }
    c.expect(caught == 0 && violations == 0 && illegal == 0,
             "N=" + std::to_string(N) + " vs 2+2 greedy cops, T=1000, 20 seeds: captures " + std::to_string(caught) +
                 ", invariant breaches " + std::to_string(violations));
    c.note("N=" + std::to_string(N) + " matches using the fallback at least once (DEGRADED): " + std::to_string(degraded) + "/20");
  }
  return c;
}

// ---------------------------------------------------------------------------

struct Criterion {
  int id;
  const char* name;
  std::function<Check(const Options&)> run;
};

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "grid", grid_theorem},          {2, "petersen", petersen_counterexample},
      {3, "cycles", cycle_matchings},     {4, "slices", slices},
      {5, "reduction", domset_reduction}, {6, "tree", tree_algorithm},
      {7, "soifer", soifer},              {8, "clique", clique_bound},
      {9, "oracle", solver_oracle},       {10, "monotone", monotonicity},
      {11, "bounds", bounds_soundness},   {12, "pstar", pstar_density},
      {13, "treewidth", treewidth_strategy}, {14, "copsbane", copsbane},
  };
  return list;
}

inline bool selected(const Options& o, int id, const std::string& name) {
  if (o.only.empty()) return true;
  for (const auto& s : o.only)
    if (s == name || s == std::to_string(id)) return true;
  return false;
}

inline std::string format_report(const std::vector<CriterionResult>& results, std::uint64_t seed) {
  std::ostringstream out;
  out << "ACCEPTANCE seed=" << seed << '\n';
  std::size_t pass = 0;
  for (const auto& r : results) {
    out << (r.pass ? "PASS" : "FAIL") << ' ' << r.id << ' ' << r.name << '\n';
    for (const auto& d : r.details) out << "  " << d << '\n';
    pass += r.pass;
  }
  out << "SUMMARY pass=" << pass << " fail=" << results.size() - pass << '\n';
  return out.str();
}

/// Runs the selected criteria. `timing`, if set, receives one wall-time line
/// per criterion as it finishes.
inline std::vector<CriterionResult> run(const Options& o, std::ostream* timing = nullptr) {
  std::vector<CriterionResult> out;
  auto timed = [&](int id, const std::string& name, auto&& fn) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    r.id = id;
    r.name = name;
    try {
      Check c = fn();
      r.pass = c.pass;
      r.details = std::move(c.lines);
    } catch (const std::exception& e) {
      r.pass = false;
      r.details = {std::string("FAIL exception: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (timing) *timing << "time " << id << ' ' << name << ' ' << r.seconds << " s\n" << std::flush;
    out.push_back(std::move(r));
  };
  for (const auto& crit : criteria())
    if (selected(o, crit.id, crit.name)) timed(crit.id, crit.name, [&] { return crit.run(o); });
  if (selected(o, 15, "determinism")) {
    timed(15, "determinism", [&] {
      Check c;
      Options inner = o;
      inner.only.clear();
      for (const auto& crit : criteria()) inner.only.push_back(std::to_string(crit.id));
      const auto first = format_report(run(inner), o.seed);
      const auto second = format_report(run(inner), o.seed);
      c.expect(first == second, "criteria 1-14 run twice: reports of " + std::to_string(first.size()) + " bytes are " +
                                    (first == second ? "identical" : "different"));
      return c;
    });
  }
  return out;
}

}  // namespace mlcr::acceptance

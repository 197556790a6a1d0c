// mlcr: solve, generate, bound and simulate multi-layer cops and robber games.
//
// Exit codes: 0 cop wins (or success), 1 robber wins (or a failed check),
// 2 usage or parse error, 3 state budget exceeded.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mlcr/acceptance.hpp"
#include "mlcr/bounds.hpp"
#include "mlcr/core.hpp"
#include "mlcr/experiment.hpp"
#include "mlcr/generators.hpp"
#include "mlcr/parallel.hpp"
#include "mlcr/sim.hpp"
#include "mlcr/solver.hpp"
#include "mlcr/treealgo.hpp"

using namespace mlcr;

namespace {

constexpr int kExitCop = 0;
constexpr int kExitRobber = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t state_budget = kDefaultStateBudget;
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;

  SolverOptions solver() const { return {state_budget, threads}; }
  std::uint64_t seed_or(std::uint64_t fallback) const { return seed.value_or(fallback); }
};

class Stopwatch {
 public:
  double ms() const { return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

MultiLayerGraph load(const std::string& path) {
  if (path == "-") return parse_mlg(std::cin);
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return parse_mlg(in);
}

std::string basename(const std::string& path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

AllocationPlan parse_allocation(const std::string& text, std::size_t tau) {
  AllocationPlan plan;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoul(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      plan.counts.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw UsageError("bad allocation entry '" + part + "'");
    }
  }
  if (plan.counts.size() != tau)
    throw UsageError("allocation has " + std::to_string(plan.counts.size()) + " entries, graph has " + std::to_string(tau) + " layers");
  return plan;
}

template <class T>
std::string join(const std::vector<T>& v, char sep = ' ') {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << sep;
    out << v[i];
  }
  return out.str();
}

int verdict_code(Winner w) { return w == Winner::Cop ? kExitCop : kExitRobber; }

void print_verdict(const GameVerdict& v, const std::string& mode, std::uint32_t k, std::ostream& out) {
  out << "VERDICT=" << to_string(v.winner) << '\n';
  out << "MODE=" << mode << '\n';
  out << "COPS=" << k << '\n';
  if (!v.plan.counts.empty()) out << "ALLOCATION=" << to_string(v.plan) << '\n';
  if (v.winner == Winner::Cop && !v.cop_placement.empty()) out << "COP_PLACEMENT=" << join(v.cop_placement) << '\n';
  if (v.winner == Winner::Robber) {
    if (!v.robber_layers.empty()) out << "ROBBER_LAYERS=" << join(v.robber_layers, ',') << '\n';
    // one reply per cop placement; only printed when short
    if (!v.robber_replies.empty() && v.robber_replies.size() <= 64) out << "ROBBER_REPLIES=" << join(v.robber_replies) << '\n';
  }
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string file;
  std::string allocation;
  std::optional<std::uint32_t> cops;
  bool free_choice = false;
  bool tree_fast = false;
  bool no_tree = false;
  std::string dump_table;
};

int cmd_solve(const SolveArgs& a, const Globals& g) {
  const auto graph = load(a.file);
  Stopwatch clock;
  const bool tree_robber = graph.robber_spec() != RobberSpec::Complete || graph.num_vertices() <= kCompleteMaterializeLimit
                               ? is_tree(graph.robber_edges(), graph.num_vertices())
                               : false;
  if (a.tree_fast && !tree_robber) throw UsageError("--tree-fast needs a tree robber layer");
  if (a.tree_fast && a.free_choice) throw UsageError("--tree-fast does not apply to --free-choice");
  const bool use_tree = a.tree_fast || (tree_robber && !a.no_tree && !a.free_choice && a.dump_table.empty());

  GameVerdict v;
  std::string mode;
  std::uint32_t k = 0;
  std::optional<RobbersEdgeCertificate> cert;
  if (!a.allocation.empty()) {
    const auto plan = parse_allocation(a.allocation, graph.num_layers());
    k = plan.total();
    if (use_tree) {
      mode = "tree_allocated";
      cert = find_robbers_edge(graph, plan.assignment());
      v.plan = plan;
      v.winner = cert ? Winner::Robber : Winner::Cop;
    } else {
      mode = "allocated";
      if (!a.dump_table.empty() && k > 0) {
        const auto table = build_copwin(graph, plan.assignment(), g.solver());
        std::ofstream out(a.dump_table);
        if (!out) throw UsageError("cannot write " + a.dump_table);
        table.dump(out);
        v = verdict_from_table(table);
        v.plan = plan;
      } else {
        v = decide_allocated(graph, plan, g.solver());
      }
    }
  } else {
    k = *a.cops;
    if (a.free_choice) {
      mode = "free_choice";
      v = decide_free_layer_choice(graph, k, g.solver());
    } else if (use_tree) {
      mode = "tree_choose";
      v = decide_tree_robber(graph, k);
    } else {
      mode = "choose";
      v = decide_choose_allocation(graph, k, g.solver());
    }
  }
  print_verdict(v, mode, k, std::cout);
  if (cert) std::cout << "WITNESS=" << to_string(*cert) << '\n';
  std::cerr << "time_ms=" << clock.ms() << '\n';
  return verdict_code(v.winner);
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::string family;
  std::string output;
  std::string report;
  std::size_t n = 4;
  std::size_t k = 1;
  std::size_t tau = 2;
  double p = 0.5;
  std::size_t N = 20;
  double alpha = 0.2;
  std::optional<std::size_t> D;
  std::string robber = "COMPLETE";
};

int cmd_generate(const GenerateArgs& a, const Globals& g) {
  const std::uint64_t seed = g.seed_or(1);
  std::optional<MultiLayerGraph> graph;
  ConstructionReport report;
  const auto& f = a.family;
  if (f == "grid") {
    graph = gen_grid(a.n);
    report = validate_grid(*graph, a.n);
  } else if (f == "petersen") {
    graph = gen_min_counterexample_petersen();
    report = detail::base_report(*graph, "petersen_counterexample");
  } else if (f == "slices") {
    graph = gen_slices(a.k);
    report = validate_slices(*graph, a.k);
  } else if (f == "cycle") {
    graph = gen_cycle_matchings(a.n);
    report = detail::base_report(*graph, "cycle_matchings");
  } else if (f == "soifer") {
    graph = gen_soifer(a.n, a.tau);
    report = validate_soifer(*graph, a.n, a.tau);
  } else if (f == "random") {
    const auto spec = robber_spec_from_string(a.robber);
    if (!spec) throw UsageError("unknown robber spec '" + a.robber + "'");
    graph = gen_random_layers(a.n, a.p, a.tau, seed, *spec);
    report = detail::base_report(*graph, "random_layers");
  } else if (f == "copsbane") {
    auto res = gen_copsbane(a.N, a.alpha, a.D, seed);
    graph = std::move(res.graph);
    report = std::move(res.report);
  } else if (f == "domset-reduction") {
    graph = gen_domset_reduction(a.n, gen_gnp(a.n, a.p, seed));
    report = detail::base_report(*graph, "domset_reduction");
  } else {
    throw UsageError("unknown family '" + f + "'");
  }
  if (a.output.empty() || a.output == "-") {
    serialize_mlg(*graph, std::cout);
  } else {
    std::ofstream out(a.output);
    if (!out) throw UsageError("cannot write " + a.output);
    serialize_mlg(*graph, out);
  }
  if (!a.report.empty()) {
    std::ofstream out(a.report);
    if (!out) throw UsageError("cannot write " + a.report);
    write_report(report, out);
  }
  return report.ok() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsArgs {
  std::string file;
  std::uint32_t k_max = 3;
  std::size_t domset_cap = 10;
  bool dump_domset = false;
  bool dump_td = false;
};

int cmd_bounds(const BoundsArgs& a, const Globals&) {
  const auto g = load(a.file);
  Stopwatch clock;
  const std::size_t n = g.num_vertices();

  // (1,k)-closure for k cops means the robber escapes k cops, so k+1 is a lower bound.
  std::uint32_t mec_k = 0;
  bool truncated = false;
  for (std::uint32_t k = 1; k <= a.k_max; ++k) {
    try {
      if (!mec_check(g, k)) break;
    } catch (const EnumerationBudgetExceeded&) {
      truncated = true;
      break;
    }
    mec_k = k;
  }
  std::cout << "MEC_K=" << mec_k << (truncated ? " (enumeration budget reached)" : "") << '\n';
  std::cout << "LB_mec=" << (n == 0 ? 0 : mec_k + 1) << '\n';

  std::optional<DominatingSet> exact;
  if (n <= 64) {
    try {
      exact = domset_exact(g, a.domset_cap);
    } catch (const EnumerationBudgetExceeded&) {
    }
  }
  const DominatingSet d = exact ? *exact : domset_greedy(g);
  std::cout << "UB_domset=" << d.size() << '\n';
  std::cout << "DOMSET_METHOD=" << (exact ? "exact" : "greedy") << '\n';
  if (a.dump_domset) write_domset(d, std::cout);

  std::string why;
  bool connected = true;
  for (std::size_t i = 0; i < g.num_layers(); ++i) connected = connected && g.layer_view(i).connected();
  if (!connected) why = "cop layer not connected";
  else if (n > 12) why = "exact treewidth limited to 12 vertices";
  if (why.empty()) {
    EdgeList edges = g.flattened();
    if (g.robber_spec() != RobberSpec::Union) edges = edge_union(edges, g.robber_edges());
    auto [width, td] = treewidth_exact_small(n, edges);
    std::cout << "UB_treewidth=" << treewidth_cop_bound(g, td) << '\n';
    std::cout << "TREEWIDTH=" << width << '\n';
    if (a.dump_td) write_decomposition(td, std::cout);
  } else {
    std::cout << "UB_treewidth=NA\n";
    std::cout << "TREEWIDTH_SKIPPED=" << why << '\n';
  }
  std::cerr << "time_ms=" << clock.ms() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string file;
  std::string allocation;
  std::string cop = "greedy_cop";
  std::string robber = "random_robber";
  std::uint64_t rounds = 1000;
  std::size_t batch = 1;
  std::optional<std::size_t> param;
  bool quiet = false;
};

bool needs_table(const SimulateArgs& a) { return a.cop == "tablebase_cop" || a.robber == "tablebase_robber"; }

std::optional<TreeDecomposition> sweep_decomposition(const MultiLayerGraph& g) {
  if (g.num_vertices() > 12) throw UsageError("bagsweep_cop computes exact treewidth, at most 12 vertices");
  EdgeList edges = g.flattened();
  if (g.robber_spec() != RobberSpec::Union) edges = edge_union(edges, g.robber_edges());
  return treewidth_exact_small(g.num_vertices(), edges).second;
}

std::unique_ptr<CopStrategy> make_cop(const SimulateArgs& a, const MultiLayerGraph& g,
                                      const std::shared_ptr<const CopWinTable>& table) {
  if (a.cop == "greedy_cop") return std::make_unique<GreedyCop>();
  if (a.cop == "tablebase_cop") return std::make_unique<TablebaseCop>(table);
  if (a.cop == "grid_cop_guard") return std::make_unique<GridCopGuard>();
  if (a.cop == "tree_squeeze_cop") return std::make_unique<TreeSqueezeCop>();
  if (a.cop == "bagsweep_cop") return std::make_unique<BagsweepCop>(*sweep_decomposition(g));
  throw UsageError("unknown cop strategy '" + a.cop + "'");
}

std::size_t slices_k(const SimulateArgs& a, const MultiLayerGraph& g) {
  if (a.param) return *a.param;
  for (std::size_t k = 1; SlicesLayout{k}.num_vertices() <= g.num_vertices(); ++k)
    if (SlicesLayout{k}.num_vertices() == g.num_vertices()) return k;
  throw UsageError("slices_robber: vertex count matches no slices construction");
}

std::unique_ptr<RobberStrategy> make_robber(const SimulateArgs& a, const MultiLayerGraph& g,
                                            const std::shared_ptr<const CopWinTable>& table) {
  if (a.robber == "random_robber") return std::make_unique<RandomRobber>();
  if (a.robber == "tablebase_robber") return std::make_unique<TablebaseRobber>(table);
  if (a.robber == "grid_robber_corner") return std::make_unique<GridRobberCorner>();
  if (a.robber == "slices_robber") return std::make_unique<SlicesRobber>(slices_k(a, g));
  if (a.robber == "copsbane_robber") {
    if (!a.param) throw UsageError("copsbane_robber needs --param N");
    return std::make_unique<CopsbaneRobber>(*a.param);
  }
  throw UsageError("unknown robber strategy '" + a.robber + "'");
}

int cmd_simulate(const SimulateArgs& a, const Globals& gl) {
  const auto g = load(a.file);
  const auto plan = parse_allocation(a.allocation, g.num_layers());
  const GameContext ctx(g, plan, basename(a.file));
  std::shared_ptr<const CopWinTable> table;
  if (needs_table(a)) table = std::make_shared<const CopWinTable>(build_copwin(g, ctx.assignment, gl.solver()));
  // Strategies are built up front so family mismatches surface before any thread starts.
  make_cop(a, g, table)->reset(ctx, 0);
  make_robber(a, g, table)->reset(ctx, 0);

  const std::uint64_t base = gl.seed_or(1);
  Stopwatch clock;
  const auto records = parallel_map(a.batch, gl.threads, [&](std::size_t i) {
    auto cop = make_cop(a, g, table);
    auto robber = make_robber(a, g, table);
    return run_match(ctx, *cop, *robber, a.rounds, base + i);
  });
  std::size_t captures = 0, breaches = 0;
  for (const auto& m : records) {
    if (!a.quiet) write_match(m, std::cout);
    captures += m.captured();
    if (auto err = referee_check(g, m)) {
      ++breaches;
      std::cout << "REFEREE seed=" << m.seed << ' ' << *err << '\n';
    }
  }
  std::cout << "MATCHES=" << records.size() << " CAPTURES=" << captures << " SURVIVED=" << records.size() - captures
            << " REFEREE_ERRORS=" << breaches << '\n';
  std::cerr << "time_ms=" << clock.ms() << '\n';
  return breaches ? 1 : 0;
}

// ---------------------------------------------------------------------------
// play

struct PlayArgs {
  std::string file;
  std::string allocation;
  std::string role = "robber";
  std::uint64_t max_rounds = 1000;
};

int cmd_play(const PlayArgs& a, const Globals& g) {
  const auto graph = load(a.file);
  const auto plan = parse_allocation(a.allocation, graph.num_layers());
  if (a.role != "robber" && a.role != "cop") throw UsageError("--role must be robber or cop");
  const auto m = interactive_play(graph, plan, a.role == "robber", std::cin, std::cout, a.max_rounds, g.solver());
  write_match(m, std::cout);
  return 0;
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentArgs {
  std::size_t n = 128;
  double p = 0.3;
  std::size_t tau = 2;
  std::size_t seeds = 20;
  bool timing = false;
  std::string output;
};

int cmd_experiment(const ExperimentArgs& a, const Globals& g) {
  if (a.p < 0.0 || a.p > 1.0) throw UsageError("--p must lie in [0, 1]");
  if (a.tau < 1 || a.n < 1) throw UsageError("--n and --tau must be positive");
  std::vector<std::uint64_t> seeds(a.seeds);
  for (std::size_t i = 0; i < a.seeds; ++i) seeds[i] = g.seed_or(1) + i;
  Stopwatch clock;
  const auto rows = cmd_experiment_random(a.n, a.p, a.tau, seeds, g.threads);
  if (a.output.empty() || a.output == "-") {
    write_experiment_csv(rows, std::cout, a.timing);
  } else {
    std::ofstream out(a.output);
    if (!out) throw UsageError("cannot write " + a.output);
    write_experiment_csv(rows, out, a.timing);
  }
  std::cerr << "time_ms=" << clock.ms() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// verify-paper

int cmd_verify(const std::vector<std::string>& only, const Globals& g) {
  acceptance::Options o;
  o.seed = g.seed_or(o.seed);
  o.solver = g.solver();
  o.only = only;
  const auto results = acceptance::run(o, &std::cerr);
  if (results.empty()) throw UsageError("--only matched no criterion");
  std::cout << acceptance::format_report(results, o.seed);
  for (const auto& r : results)
    if (!r.pass) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-layer cops and robber toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--state-budget", g.state_budget, "maximum solver states")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) { g.seed = s; }, "random seed");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "decide a game from an MLG1 file");
  s->add_option("file", solve.file, "MLG1 file, - for stdin")->required();
  auto* alloc = s->add_option("--allocation", solve.allocation, "cops per layer, e.g. 2,0");
  auto* cops = s->add_option("--cops", solve.cops, "total cops; the cop player picks the allocation");
  alloc->excludes(cops);
  s->add_flag("--free-choice", solve.free_choice, "robber picks a layer after the cops are allocated")->needs(cops);
  s->add_flag("--tree-fast", solve.tree_fast, "use the tree-robber decision procedure");
  s->add_flag("--no-tree-fast", solve.no_tree, "always use the tablebase solver");
  s->add_option("--dump-table", solve.dump_table, "write the CWT1 table (with --allocation)")->needs(alloc);
  s->fallthrough();

  GenerateArgs gen;
  auto* gn = app.add_subcommand("generate", "write a construction as MLG1");
  gn->add_option("family", gen.family, "grid|petersen|slices|cycle|soifer|random|copsbane|domset-reduction")->required();
  gn->add_option("-o,--output", gen.output, "output file (default stdout)");
  gn->add_option("--report", gen.report, "write the construction report here");
  gn->add_option("--n", gen.n, "size parameter")->capture_default_str();
  gn->add_option("--k", gen.k, "slices parameter")->capture_default_str();
  gn->add_option("--tau", gen.tau, "number of layers")->capture_default_str();
  gn->add_option("--p", gen.p, "edge probability")->capture_default_str();
  gn->add_option("--N", gen.N, "cops-bane core size")->capture_default_str();
  gn->add_option("--alpha", gen.alpha, "cops-bane expansion target")->capture_default_str();
  gn->add_option("--D", gen.D, "cops-bane arm parameter (arms have 2D+1 edges)");
  gn->add_option("--robber", gen.robber, "robber spec for random layers: UNION or COMPLETE")->capture_default_str();
  gn->fallthrough();

  BoundsArgs bnd;
  auto* b = app.add_subcommand("bounds", "lower and upper cop number bounds");
  b->add_option("file", bnd.file, "MLG1 file")->required();
  b->add_option("--k-max", bnd.k_max, "largest k for the closure test")->capture_default_str();
  b->add_option("--domset-cap", bnd.domset_cap, "size cap for the exact dominating set")->capture_default_str();
  b->add_flag("--dump-domset", bnd.dump_domset, "print the dominating set");
  b->add_flag("--dump-td", bnd.dump_td, "print the tree decomposition");
  b->fallthrough();

  SimulateArgs sim;
  auto* sm = app.add_subcommand("simulate", "play strategies against each other");
  sm->add_option("file", sim.file, "MLG1 file")->required();
  sm->add_option("--allocation", sim.allocation, "cops per layer")->required();
  sm->add_option("--cop-strategy", sim.cop, "greedy_cop|tablebase_cop|grid_cop_guard|tree_squeeze_cop|bagsweep_cop")
      ->capture_default_str();
  sm->add_option("--robber-strategy", sim.robber,
                 "random_robber|tablebase_robber|grid_robber_corner|slices_robber|copsbane_robber")
      ->capture_default_str();
  sm->add_option("--rounds", sim.rounds, "horizon in robber moves")->capture_default_str();
  sm->add_option("--batch", sim.batch, "matches, seeds seed..seed+batch-1")->check(CLI::PositiveNumber)->capture_default_str();
  sm->add_option("--param", sim.param, "family parameter: k for slices_robber, N for copsbane_robber");
  sm->add_flag("--quiet", sim.quiet, "summary only");
  sm->fallthrough();

  PlayArgs play;
  auto* pl = app.add_subcommand("play", "play one side against the tablebase");
  pl->add_option("file", play.file, "MLG1 file")->required();
  pl->add_option("--allocation", play.allocation, "cops per layer")->required();
  pl->add_option("--role", play.role, "robber or cop")->capture_default_str();
  pl->add_option("--max-rounds", play.max_rounds, "session cap")->capture_default_str();
  pl->fallthrough();

  ExperimentArgs exp;
  auto* ex = app.add_subcommand("experiment", "random-layer dominating set experiment, CSV");
  ex->add_option("--n", exp.n)->capture_default_str();
  ex->add_option("--p", exp.p)->capture_default_str();
  ex->add_option("--tau", exp.tau)->capture_default_str();
  ex->add_option("--seeds", exp.seeds, "number of seeds starting at --seed")->capture_default_str();
  ex->add_flag("--timing", exp.timing, "fill the wall_ms column");
  ex->add_option("-o,--output", exp.output, "output file (default stdout)");
  ex->fallthrough();

  std::vector<std::string> only;
  auto* vp = app.add_subcommand("verify-paper", "run the acceptance criteria");
  vp->add_option("--only", only, "criterion ids or names")->delimiter(',');
  vp->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*s) {
      if (solve.allocation.empty() && !solve.cops) throw UsageError("solve needs --allocation or --cops");
      return cmd_solve(solve, g);
    }
    if (*gn) return cmd_generate(gen, g);
    if (*b) return cmd_bounds(bnd, g);
    if (*sm) return cmd_simulate(sim, g);
    if (*pl) return cmd_play(play, g);
    if (*ex) return cmd_experiment(exp, g);
    if (*vp) return cmd_verify(only, g);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

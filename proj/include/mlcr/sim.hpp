#pragma once

// Strategy interface, match runner with legality checks, the scripted
// strategies and a terminal play loop.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlcr/bounds.hpp"
#include "mlcr/core.hpp"
#include "mlcr/generators.hpp"
#include "mlcr/rng.hpp"
#include "mlcr/solver.hpp"
#include "mlcr/treealgo.hpp"

namespace mlcr {

class IllegalMove : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strategy used on a graph it was not written for.
class StrategyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable view of one game: graph, cop-to-layer assignment and layer adjacency.
struct GameContext {
  const MultiLayerGraph* graph = nullptr;
  AllocationPlan alloc;
  std::vector<std::uint32_t> assignment;
  std::vector<LayerView> layers;
  LayerView robber;
  std::string graph_id;

  GameContext(const MultiLayerGraph& g, AllocationPlan plan, std::string id = "graph")
      : graph(&g), alloc(std::move(plan)), assignment(alloc.assignment()), robber(g.robber_view()), graph_id(std::move(id)) {
    if (alloc.counts.size() != g.num_layers()) throw GraphError("allocation length must equal the number of layers");
    for (std::size_t i = 0; i < g.num_layers(); ++i) layers.push_back(g.layer_view(i));
  }

  std::size_t n() const { return graph->num_vertices(); }
  std::size_t num_cops() const { return assignment.size(); }
  const LayerView& cop_view(std::size_t cop) const { return layers[assignment[cop]]; }
};

inline bool can_step(const LayerView& view, Vertex from, Vertex to) { return from == to || view.adjacent(from, to); }

/// Neighbour of `from` on a shortest path to `target` (smallest id on ties);
/// `from` itself when already there or when `target` is unreachable.
inline Vertex step_toward(const LayerView& view, Vertex from, Vertex target) {
  if (from == target) return from;
  const auto dist = view.distances(target);
  if (dist[from] == kUnreachable) return from;
  for (Vertex w : view.neighbors(from))
    if (dist[w] + 1 == dist[from]) return w;
  return from;
}

/// Index of a cop that can move onto the robber this turn.
inline std::optional<std::size_t> capturing_cop(const GameContext& ctx, Vertex robber, const std::vector<Vertex>& cops) {
  for (std::size_t c = 0; c < cops.size(); ++c)
    if (can_step(ctx.cop_view(c), cops[c], robber)) return c;
  return std::nullopt;
}

class CopStrategy {
 public:
  virtual ~CopStrategy() = default;
  virtual std::string name() const = 0;
  virtual void reset(const GameContext&, std::uint64_t /*seed*/) {}
  virtual std::vector<Vertex> place(const GameContext& ctx) = 0;
  /// New positions of all cops (each stays or crosses one edge of its layer).
  virtual std::vector<Vertex> move(const GameContext& ctx, Vertex robber, const std::vector<Vertex>& cops) = 0;
};

class RobberStrategy {
 public:
  virtual ~RobberStrategy() = default;
  virtual std::string name() const = 0;
  virtual void reset(const GameContext&, std::uint64_t /*seed*/) {}
  virtual Vertex place(const GameContext& ctx, const std::vector<Vertex>& cops) = 0;
  virtual Vertex move(const GameContext& ctx, Vertex robber, const std::vector<Vertex>& cops) = 0;
  /// Notes attached to the match record (for example DEGRADED).
  virtual std::vector<std::string> tags() const { return {}; }
};

// ---------------------------------------------------------------------------
// Match records

enum class Outcome { Capture, Survived, Abandoned };

struct MoveRecord {
  std::uint64_t round = 0;
  char mover = 'P';  // P placement, C cop team, R robber
  Vertex robber = 0;
  std::vector<Vertex> cops;
};

struct MatchRecord {
  std::string graph_id;
  AllocationPlan alloc;
  std::string cop_strategy, robber_strategy;
  std::uint64_t seed = 0;
  std::uint64_t horizon = 0;
  std::vector<MoveRecord> moves;
  Outcome outcome = Outcome::Survived;
  std::uint64_t capture_round = 0;
  std::vector<std::string> tags;

  bool captured() const { return outcome == Outcome::Capture; }
};

inline void write_match(const MatchRecord& m, std::ostream& out) {
  out << "MR1 graph=" << m.graph_id << " alloc=" << to_string(m.alloc) << " cops=" << m.cop_strategy
      << " robber=" << m.robber_strategy << " seed=" << m.seed << " horizon=" << m.horizon;
  for (const auto& t : m.tags) out << " tag=" << t;
  out << '\n';
  for (const auto& mv : m.moves) {
    out << mv.round << ' ' << mv.mover << ' ' << mv.robber;
    for (Vertex c : mv.cops) out << ' ' << c;
    out << '\n';
  }
  switch (m.outcome) {
    case Outcome::Capture: out << "OUTCOME CAPTURE " << m.capture_round << '\n'; break;
    case Outcome::Survived: out << "OUTCOME SURVIVED " << m.horizon << '\n'; break;
    case Outcome::Abandoned: out << "OUTCOME ABANDONED\n"; break;
  }
}

inline std::string to_string(const MatchRecord& m) {
  std::ostringstream out;
  write_match(m, out);
  return out.str();
}

namespace detail {

inline bool is_capture(Vertex robber, const std::vector<Vertex>& cops) {
  return std::find(cops.begin(), cops.end(), robber) != cops.end();
}

}  // namespace detail

/// Independent re-scan of a record: every move legal, captures where and
/// only where they happen. Returns a diagnostic on the first problem.
inline std::optional<std::string> referee_check(const MultiLayerGraph& g, const MatchRecord& m) {
  const auto assignment = m.alloc.assignment();
  if (m.moves.empty() || m.moves.front().mover != 'P') return "record does not start with a placement";
  std::vector<LayerView> views;
  for (std::size_t i = 0; i < g.num_layers(); ++i) views.push_back(g.layer_view(i));
  const LayerView robber_view = g.robber_view();
  const MoveRecord* prev = nullptr;
  for (std::size_t i = 0; i < m.moves.size(); ++i) {
    const auto& mv = m.moves[i];
    if (mv.cops.size() != assignment.size()) return "wrong number of cops at move " + std::to_string(i);
    if (mv.robber >= g.num_vertices()) return "robber off the graph at move " + std::to_string(i);
    for (Vertex c : mv.cops)
      if (c >= g.num_vertices()) return "cop off the graph at move " + std::to_string(i);
    if (prev) {
      if (mv.mover == 'C') {
        if (mv.robber != prev->robber) return "robber moved during cop turn at move " + std::to_string(i);
        for (std::size_t c = 0; c < mv.cops.size(); ++c)
          if (!can_step(views[assignment[c]], prev->cops[c], mv.cops[c]))
            return "cop " + std::to_string(c) + " left its layer at move " + std::to_string(i);
      } else if (mv.mover == 'R') {
        if (mv.cops != prev->cops) return "cops moved during robber turn at move " + std::to_string(i);
        if (!can_step(robber_view, prev->robber, mv.robber)) return "robber left its layer at move " + std::to_string(i);
      } else {
        return "unexpected mover at move " + std::to_string(i);
      }
    }
    const bool cap = detail::is_capture(mv.robber, mv.cops);
    const bool last = i + 1 == m.moves.size();
    if (cap && !last) return "capture at move " + std::to_string(i) + " was not recorded";
    if (last) {
      if (cap != (m.outcome == Outcome::Capture)) return "final outcome disagrees with positions";
      if (cap && mv.round != m.capture_round) return "capture round mismatch";
      if (m.outcome == Outcome::Survived && mv.round != m.horizon) return "survived record ends before the horizon";
    }
    prev = &mv;
  }
  return std::nullopt;
}

/// Cops place first, then alternate full cop-team moves and robber moves.
/// Stops at capture or after `horizon` robber moves.
inline MatchRecord run_match(const GameContext& ctx, CopStrategy& cop, RobberStrategy& robber, std::uint64_t horizon,
                             std::uint64_t seed) {
  MatchRecord rec;
  rec.graph_id = ctx.graph_id;
  rec.alloc = ctx.alloc;
  rec.cop_strategy = cop.name();
  rec.robber_strategy = robber.name();
  rec.seed = seed;
  rec.horizon = horizon;
  const std::size_t n = ctx.n();
  const std::size_t k = ctx.num_cops();

  cop.reset(ctx, seed);
  robber.reset(ctx, seed ^ 0x9E3779B97F4A7C15ull);
  std::vector<Vertex> cops = cop.place(ctx);
  if (cops.size() != k) throw IllegalMove(cop.name() + " placed " + std::to_string(cops.size()) + " cops, expected " + std::to_string(k));
  for (std::size_t c = 0; c < k; ++c)
    if (cops[c] >= n) throw IllegalMove(cop.name() + ": cop " + std::to_string(c) + " placed off the graph");
  Vertex r = robber.place(ctx, cops);
  if (r >= n) throw IllegalMove(robber.name() + ": robber placed off the graph");
  rec.moves.push_back({0, 'P', r, cops});

  auto finish = [&](Outcome o, std::uint64_t round) {
    rec.outcome = o;
    rec.capture_round = round;
    rec.tags = robber.tags();
    return rec;
  };
  if (detail::is_capture(r, cops)) return finish(Outcome::Capture, 0);
  for (std::uint64_t round = 1; round <= horizon; ++round) {
    auto next = cop.move(ctx, r, cops);
    if (next.size() != k) throw IllegalMove(cop.name() + " returned the wrong number of moves");
    for (std::size_t c = 0; c < k; ++c)
      if (next[c] >= n || !can_step(ctx.cop_view(c), cops[c], next[c]))
        throw IllegalMove(cop.name() + ": cop " + std::to_string(c) + " (layer " + std::to_string(ctx.assignment[c] + 1) +
                          ") cannot move " + std::to_string(cops[c]) + " -> " + std::to_string(next[c]));
    cops = std::move(next);
    rec.moves.push_back({round, 'C', r, cops});
    if (detail::is_capture(r, cops)) return finish(Outcome::Capture, round);

    const Vertex nr = robber.move(ctx, r, cops);
    if (nr >= n || !can_step(ctx.robber, r, nr))
      throw IllegalMove(robber.name() + ": robber cannot move " + std::to_string(r) + " -> " + std::to_string(nr));
    r = nr;
    rec.moves.push_back({round, 'R', r, cops});
    if (detail::is_capture(r, cops)) return finish(Outcome::Capture, round);
  }
  return finish(Outcome::Survived, 0);
}

// ---------------------------------------------------------------------------
// Baselines

/// Each cop steps along a shortest path in its own layer toward the robber.
class GreedyCop : public CopStrategy {
 public:
  std::string name() const override { return "greedy_cop"; }
  void reset(const GameContext&, std::uint64_t seed) override { rng_ = make_rng(seed, 1); }
  std::vector<Vertex> place(const GameContext& ctx) override {
    std::vector<Vertex> out(ctx.num_cops());
    for (auto& v : out) v = static_cast<Vertex>(uniform_below(rng_, ctx.n()));
    return out;
  }
  std::vector<Vertex> move(const GameContext& ctx, Vertex robber, const std::vector<Vertex>& cops) override {
    std::vector<Vertex> out(cops.size());
    std::vector<std::optional<std::vector<std::uint32_t>>> dist(ctx.layers.size());
    for (std::size_t c = 0; c < cops.size(); ++c) {
      const auto layer = ctx.assignment[c];
      if (!dist[layer]) dist[layer] = ctx.layers[layer].distances(robber);
      const auto& d = *dist[layer];
      out[c] = cops[c];
      if (d[cops[c]] == kUnreachable) continue;
      for (Vertex w : ctx.layers[layer].neighbors(cops[c]))
        if (d[w] + 1 == d[cops[c]]) {
          out[c] = w;
          break;
        }
    }
    return out;
  }

 private:
  Rng rng_ = make_rng(0);
};

/// Uniform move over the closed neighbourhood.
class RandomRobber : public RobberStrategy {
 public:
  std::string name() const override { return "random_robber"; }
  void reset(const GameContext&, std::uint64_t seed) override { rng_ = make_rng(seed, 2); }
  Vertex place(const GameContext& ctx, const std::vector<Vertex>& cops) override {
    std::vector<Vertex> free;
    for (Vertex v = 0; v < ctx.n(); ++v)
      if (!detail::is_capture(v, cops)) free.push_back(v);
    if (free.empty()) return 0;
    return free[uniform_below(rng_, free.size())];
  }
  Vertex move(const GameContext& ctx, Vertex robber, const std::vector<Vertex>&) override {
    const auto& nb = ctx.robber.neighbors(robber);
    const auto pick = uniform_below(rng_, nb.size() + 1);
    return pick == 0 ? robber : nb[pick - 1];
  }

 private:
  Rng rng_ = make_rng(0);
};

// ---------------------------------------------------------------------------
// Strategies read from a solved table

namespace detail {

inline std::vector<Vertex> positions(Vertex robber, const std::vector<Vertex>& cops) {
  std::vector<Vertex> p{robber};
  p.insert(p.end(), cops.begin(), cops.end());
  return p;
}

inline void require_table(const GameContext& ctx, const CopWinTable& table) {
  if (table.assignment() != ctx.assignment || table.num_vertices() != ctx.n())
    throw StrategyError("table was built for a different game");
}

}  // namespace detail

/// Plays rank-minimizing moves from cop-win states; elsewhere every cop
/// chases the robber along its layer.
class TablebaseCop : public CopStrategy {
 public:
  explicit TablebaseCop(std::shared_ptr<const CopWinTable> table) : table_(std::move(table)) {}
  std::string name() const override { return "tablebase_cop"; }
  void reset(const GameContext& ctx, std::uint64_t) override { detail::require_table(ctx, *table_); }

  std::vector<Vertex> place(const GameContext&) override {
    const auto& t = *table_;
    const auto v = verdict_from_table(t);
    if (v.winner == Winner::Cop) return v.cop_placement;
    // Otherwise the placement leaving the fewest robber-win starts.
    std::vector<Vertex> cops(t.num_cops(), 0), best = cops;
    std::size_t best_safe = std::numeric_limits<std::size_t>::max();
    do {
      std::size_t safe = 0;
      for (Vertex r = 0; r < t.num_vertices(); ++r) safe += !t.copwin(t.encode(detail::positions(r, cops), 0));
      if (safe < best_safe) {
        best_safe = safe;
        best = cops;
      }
    } while (next_tuple(cops, t.num_vertices()));
    return best;
  }

  std::vector<Vertex> move(const GameContext& ctx, Vertex robber, const std::vector<Vertex>& cops) override {
    const auto& t = *table_;
    const TablePolicy policy(t);
    std::vector<Vertex> out = cops;
    for (std::uint32_t c = 0; c < out.size(); ++c) {
      if (detail::is_capture(robber, out)) break;
      const auto idx = t.encode(detail::positions(robber, out), c);
      if (auto next = policy.cop_move(idx)) out[c] = t.position(*next, c + 1);
      else out[c] = step_toward(ctx.cop_view(c), out[c], robber);
    }
    return out;
  }

 private:
  std::shared_ptr<const CopWinTable> table_;
};

/// Moves to a robber-win state when one exists, else delays capture maximally.
class TablebaseRobber : public RobberStrategy {
 public:
  explicit TablebaseRobber(std::shared_ptr<const CopWinTable> table) : table_(std::move(table)) {}
  std::string name() const override { return "tablebase_robber"; }
  void reset(const GameContext& ctx, std::uint64_t) override { detail::require_table(ctx, *table_); }

  Vertex place(const GameContext&, const std::vector<Vertex>& cops) override {
    const auto& t = *table_;
    Vertex best = 0;
    std::optional<std::uint32_t> best_rank;
    for (Vertex r = 0; r < t.num_vertices(); ++r) {
      const auto idx = t.encode(detail::positions(r, cops), 0);
      if (!t.copwin(idx)) return r;
      if (!best_rank || t.rank(idx) > *best_rank) {
        best_rank = t.rank(idx);
        best = r;
      }
    }
    return best;
  }

  Vertex move(const GameContext&, Vertex robber, const std::vector<Vertex>& cops) override {
    const auto& t = *table_;
    const auto idx = t.encode(detail::positions(robber, cops), t.num_cops());
    if (auto next = TablePolicy(t).robber_move(idx)) return t.position(*next, 0);
    return robber;
  }

 private:
  std::shared_ptr<const CopWinTable> table_;
};

// ---------------------------------------------------------------------------
// Grid strategies

/// Two cops on one layer of the grid: one cop shadows the robber's row in its
/// column while the other walks to the next column in that row, then they swap.
class GridCopGuard : public CopStrategy {
 public:
  std::string name() const override { return "grid_cop_guard"; }

  void reset(const GameContext& ctx, std::uint64_t) override {
    if (ctx.graph->num_layers() != 2 || ctx.num_cops() != 2 || ctx.assignment[0] != ctx.assignment[1])
      throw StrategyError("grid_cop_guard needs two cops on the same grid layer");
    n_ = 0;
    while (n_ * n_ < ctx.n()) ++n_;
    if (n_ * n_ != ctx.n() || ctx.graph->layer(0) != gen_grid(n_).layer(0)) throw StrategyError("grid_cop_guard needs a grid graph");
    // Cops on the horizontal layer play the vertical strategy in transposed coordinates.
    transposed_ = ctx.assignment[0] == 0;
    phase_ = 1;
    blocker_ = 1;
    mover_ = 0;
  }

  std::vector<Vertex> place(const GameContext&) override { return {at(1, 1), at(1, 2)}; }

  std::vector<Vertex> move(const GameContext& ctx, Vertex robber, const std::vector<Vertex>& cops) override {
    std::vector<Vertex> out = cops;
    if (auto c = capturing_cop(ctx, robber, cops)) {
      out[*c] = robber;
      return out;
    }
    const auto [rr, rc] = coords(robber);
    if (phase_ == 1) {
      const auto [ci, cj] = coords(cops[0]);
      (void)cj;
      if (ci != rr) {
        const std::size_t ni = ci < rr ? ci + 1 : ci - 1;
        out[0] = at(ni, 1);
        out[1] = at(ni, 2);
      }
      if (coords(out[0]).first == rr) phase_ = 2;
      return out;
    }
    const auto [bi, bc] = coords(cops[blocker_]);
    if (bi != rr) out[blocker_] = at(bi < rr ? bi + 1 : bi - 1, bc);
    if (bc < n_) {
      const Vertex target = at(rr, bc + 1);
      out[mover_] = step_toward(ctx.cop_view(mover_), cops[mover_], target);
      if (out[mover_] == target) std::swap(blocker_, mover_);
    }
    return out;
  }

 private:
  Vertex at(std::size_t i, std::size_t j) const { return transposed_ ? grid_vertex(n_, j, i) : grid_vertex(n_, i, j); }
  std::pair<std::size_t, std::size_t> coords(Vertex v) const {
    auto [i, j] = grid_coords(n_, v);
    return transposed_ ? std::pair{j, i} : std::pair{i, j};
  }

  std::size_t n_ = 0;
  bool transposed_ = false;
  int phase_ = 1;
  std::size_t blocker_ = 1, mover_ = 0;
};

/// Robber against one cop per grid layer: stays in the top-left 2x2 block,
/// picking its square from the cops' rows and columns.
class GridRobberCorner : public RobberStrategy {
 public:
  std::string name() const override { return "grid_robber_corner"; }

  void reset(const GameContext& ctx, std::uint64_t) override {
    if (ctx.graph->num_layers() != 2 || ctx.num_cops() != 2 || ctx.assignment[0] == ctx.assignment[1])
      throw StrategyError("grid_robber_corner needs one cop on each grid layer");
    n_ = 0;
    while (n_ * n_ < ctx.n()) ++n_;
    if (n_ * n_ != ctx.n() || n_ < 4) throw StrategyError("grid_robber_corner needs a grid with n >= 4");
    horizontal_cop_ = ctx.assignment[0] == 0 ? 0 : 1;
    fallbacks_ = 0;
  }

  Vertex place(const GameContext&, const std::vector<Vertex>& cops) override {
    const auto [a, b] = target(cops);
    return grid_vertex(n_, a, b);
  }

  Vertex move(const GameContext& ctx, Vertex robber, const std::vector<Vertex>& cops) override {
    const auto [a, b] = target(cops);
    const auto [ra, rb] = grid_coords(n_, robber);
    if (a == ra || b == rb) return grid_vertex(n_, a, b);
    const auto h_col = grid_coords(n_, cops[horizontal_cop_]).second;
    if (h_col == n_) return grid_vertex(n_, ra, b);
    if (h_col == n_ - 1) return grid_vertex(n_, a, rb);
    // Not reachable while the invariant holds; move to any unthreatened square.
    ++fallbacks_;
    for (Vertex v : {robber, grid_vertex(n_, ra, b), grid_vertex(n_, a, rb)})
      if (!capturing_cop(ctx, v, cops)) return v;
    return robber;
  }

  std::vector<std::string> tags() const override {
    if (fallbacks_ == 0) return {};
    return {"FALLBACK" + std::to_string(fallbacks_)};
  }

 private:
  std::pair<std::size_t, std::size_t> target(const std::vector<Vertex>& cops) const {
    const auto h = grid_coords(n_, cops[horizontal_cop_]);
    const auto v = grid_coords(n_, cops[1 - horizontal_cop_]);
    return {h.first == 1 ? 2 : 1, v.second == 1 ? 2 : 1};
  }

  std::size_t n_ = 0;
  std::size_t horizontal_cop_ = 0;
  std::size_t fallbacks_ = 0;
};

// ---------------------------------------------------------------------------
// Slices robber

/// Keeps to ring vertices of a slice whose neighbourhood is free of cops and
/// relocates along a path column no cop can reach quickly.
class SlicesRobber : public RobberStrategy {
 public:
  explicit SlicesRobber(std::size_t k) : layout_{k} {}
  std::string name() const override { return "slices_robber"; }

  void reset(const GameContext& ctx, std::uint64_t) override {
    if (ctx.n() != layout_.num_vertices() || ctx.graph->num_layers() != 2) throw StrategyError("slices_robber needs the slices graph");
    plan_.clear();
    fallbacks_ = 0;
  }

  Vertex place(const GameContext& ctx, const std::vector<Vertex>& cops) override {
    const auto dist = cop_distances(ctx, cops);
    const auto x = safe_slice(cops, 0);
    const auto y = safe_column(dist);
    const Vertex start = layout_.at(x, y, 5 * layout_.k + 1);
    if (threatened(dist, start)) return best_escape(ctx, dist, start);
    return start;
  }

  Vertex move(const GameContext& ctx, Vertex robber, const std::vector<Vertex>& cops) override {
    const auto dist = cop_distances(ctx, cops);
    const std::size_t k = layout_.k;
    if (plan_.empty()) {
      // Relocate once a cop comes within k+1 moves of this slice's ring.
      const auto x = layout_.coord(robber).x;
      bool pressed = false;
      for (std::size_t y = 1; y <= k && !pressed; ++y)
        for (std::size_t z = 5 * k + 1; z <= 5 * k + 2; ++z) pressed = pressed || dist[layout_.at(x, y, z)] <= k + 1;
      if (pressed) plan_route(robber, cops, dist);
    }
    if (!plan_.empty()) {
      const Vertex next = plan_.front();
      if (!threatened(dist, next) && can_step(ctx.robber, robber, next)) {
        plan_.erase(plan_.begin());
        return next;
      }
      plan_.clear();
    }
    if (!threatened(dist, robber)) return robber;
    ++fallbacks_;
    return best_escape(ctx, dist, robber);
  }

  std::vector<std::string> tags() const override {
    if (fallbacks_ == 0) return {};
    return {"FALLBACK" + std::to_string(fallbacks_)};
  }

 private:
  /// Minimum over cops of the distance in that cop's layer.
  std::vector<std::uint32_t> cop_distances(const GameContext& ctx, const std::vector<Vertex>& cops) const {
    std::vector<std::uint32_t> best(ctx.n(), kUnreachable);
    for (std::size_t c = 0; c < cops.size(); ++c) {
      const auto d = ctx.cop_view(c).distances(cops[c]);
      for (Vertex v = 0; v < ctx.n(); ++v) best[v] = std::min(best[v], d[v]);
    }
    return best;
  }

  static bool threatened(const std::vector<std::uint32_t>& dist, Vertex v) { return dist[v] <= 1; }

  /// A slice with no cop on it or its two neighbours, nearest to `near` (0 = any).
  std::size_t safe_slice(const std::vector<Vertex>& cops, std::size_t near) const {
    const std::size_t m = layout_.slices();
    std::vector<char> occupied(m + 2, 0);
    for (Vertex c : cops) occupied[layout_.coord(c).x] = 1;
    std::size_t best = 1, best_gap = std::numeric_limits<std::size_t>::max();
    for (std::size_t x = 1; x <= m; ++x) {
      if (occupied[x - 1] || occupied[x] || occupied[x + 1]) continue;
      const std::size_t gap = near == 0 ? 0 : (x > near ? x - near : near - x);
      if (gap < best_gap) {
        best_gap = gap;
        best = x;
      }
    }
    return best;
  }

  /// Column y whose ring vertices are farthest from every cop.
  std::size_t safe_column(const std::vector<std::uint32_t>& dist) const {
    const std::size_t k = layout_.k;
    std::size_t best = 1;
    std::uint32_t best_d = 0;
    for (std::size_t y = 1; y <= k; ++y) {
      std::uint32_t d = kUnreachable;
      for (std::size_t x = 1; x <= layout_.slices(); ++x)
        for (std::size_t z = 5 * k + 1; z <= 5 * k + 2; ++z) d = std::min(d, dist[layout_.at(x, y, z)]);
      if (d > best_d) {
        best_d = d;
        best = y;
      }
    }
    return best;
  }

  /// Around the current ring to column y, then along the slice path to slice x.
  void plan_route(Vertex robber, const std::vector<Vertex>& cops, const std::vector<std::uint32_t>& dist) {
    const std::size_t k = layout_.k;
    const auto here = layout_.coord(robber);
    const std::size_t x_target = safe_slice(cops, here.x);
    const std::size_t y_target = safe_column(dist);
    // Ring of slice x: positions (y, 5k+1), (y, 5k+2) alternate around a 2k-cycle in R.
    std::vector<Vertex> ring;
    for (std::size_t y = 1; y <= k; ++y) {
      ring.push_back(layout_.at(here.x, y, 5 * k + 1));
      ring.push_back(layout_.at(here.x, y, 5 * k + 2));
    }
    // Ring edges: (y,5k+1)-(y,5k+2) and (y,5k+1)-(y+1,5k+2); walk within the ring by BFS.
    const Vertex goal = layout_.at(here.x, y_target, 5 * k + 1);
    plan_ = ring_path(robber, goal, ring);
    const std::size_t step = x_target > here.x ? 1 : std::size_t(-1);
    for (std::size_t x = here.x; x != x_target;) {
      x += step;
      plan_.push_back(layout_.at(x, y_target, 5 * k + 1));
    }
  }

  std::vector<Vertex> ring_path(Vertex from, Vertex to, const std::vector<Vertex>& ring) const {
    const std::size_t k = layout_.k;
    auto nbrs = [&](Vertex v) {
      const auto c = layout_.coord(v);
      std::vector<Vertex> out;
      if (c.z == 5 * k + 1) {
        out.push_back(layout_.at(c.x, c.y, 5 * k + 2));
        out.push_back(layout_.at(c.x, c.y % k + 1, 5 * k + 2));
      } else {
        out.push_back(layout_.at(c.x, c.y, 5 * k + 1));
        out.push_back(layout_.at(c.x, (c.y + k - 2) % k + 1, 5 * k + 1));
      }
      return out;
    };
    std::vector<Vertex> parent(layout_.num_vertices(), std::numeric_limits<Vertex>::max());
    std::vector<Vertex> queue{from};
    parent[from] = from;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (Vertex w : nbrs(queue[h]))
        if (parent[w] == std::numeric_limits<Vertex>::max()) {
          parent[w] = queue[h];
          queue.push_back(w);
        }
    (void)ring;
    std::vector<Vertex> path;
    if (parent[to] == std::numeric_limits<Vertex>::max()) return path;
    for (Vertex v = to; v != from; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
  }

  Vertex best_escape(const GameContext& ctx, const std::vector<std::uint32_t>& dist, Vertex from) const {
    Vertex best = from;
    std::uint32_t best_d = dist[from];
    for (Vertex w : ctx.robber.neighbors(from))
      if (dist[w] > best_d) {
        best_d = dist[w];
        best = w;
      }
    return best;
  }

  SlicesLayout layout_;
  std::vector<Vertex> plan_;
  std::size_t fallbacks_ = 0;
};

// ---------------------------------------------------------------------------
// Cops-bane robber

/// Stays in the expander core, inside a large component of core vertices that
/// no cop can reach without passing the star centre.
class CopsbaneRobber : public RobberStrategy {
 public:
  explicit CopsbaneRobber(std::size_t N) : N_(N) {}
  std::string name() const override { return "copsbane_robber"; }

  void reset(const GameContext& ctx, std::uint64_t) override {
    layout_ = CopsbaneLayout::from_graph(*ctx.graph, N_);
    const Vertex hub = layout_.hub();
    off_hub_.clear();
    for (std::size_t i = 0; i < ctx.graph->num_layers(); ++i) {
      EdgeList e;
      for (const Edge& ed : ctx.graph->layer(i))
        if (ed.u != hub && ed.v != hub) e.push_back(ed);
      off_hub_.emplace_back(ctx.n(), e);
    }
    degraded_ = false;
    degraded_rounds_ = 0;
    violations_ = 0;
  }

  Vertex place(const GameContext& ctx, const std::vector<Vertex>& cops) override {
    const auto threat = threat_map(ctx, cops);
    const auto region = safe_region(ctx, cops);
    for (Vertex v = 0; v < N_; ++v)
      if (region.safe[v] && !threat[v]) return v;
    degraded_ = true;
    for (Vertex v = 0; v < N_; ++v)
      if (!threat[v]) return v;
    return 0;
  }

  Vertex move(const GameContext& ctx, Vertex robber, const std::vector<Vertex>& cops) override {
    const auto threat = threat_map(ctx, cops);
    const auto region = safe_region(ctx, cops);
    Vertex choice = robber;
    bool planned = region.safe[robber] && !threat[robber];
    if (!planned) {
      // Shortest path in the core to the safe region through unblocked, unthreatened vertices.
      std::vector<Vertex> parent(N_, std::numeric_limits<Vertex>::max());
      std::vector<Vertex> queue{robber};
      parent[robber] = robber;
      std::optional<Vertex> goal;
      for (std::size_t h = 0; h < queue.size() && !goal; ++h)
        for (Vertex w : ctx.robber.neighbors(queue[h])) {
          if (w >= N_ || parent[w] != std::numeric_limits<Vertex>::max() || threat[w] || region.blocked[w]) continue;
          parent[w] = queue[h];
          if (region.safe[w]) {
            goal = w;
            break;
          }
          queue.push_back(w);
        }
      if (goal) {
        Vertex v = *goal;
        while (parent[v] != robber) v = parent[v];
        choice = v;
        planned = true;
      } else {
        degraded_ = true;
        ++degraded_rounds_;
        choice = farthest_step(ctx, robber, cops, threat, region.blocked);
      }
    }
    if (threat[choice]) ++violations_;
    if (planned && region.blocked[choice]) ++violations_;
    return choice;
  }

  std::vector<std::string> tags() const override {
    std::vector<std::string> t;
    if (degraded_) t.push_back("DEGRADED" + std::to_string(degraded_rounds_));
    if (violations_) t.push_back("THREATENED" + std::to_string(violations_));
    return t;
  }
  bool degraded() const { return degraded_; }
  std::size_t degraded_rounds() const { return degraded_rounds_; }
  std::size_t violations() const { return violations_; }

 private:
  /// Vertices some cop can move onto next turn.
  std::vector<char> threat_map(const GameContext& ctx, const std::vector<Vertex>& cops) const {
    std::vector<char> t(ctx.n(), 0);
    for (std::size_t c = 0; c < cops.size(); ++c) {
      t[cops[c]] = 1;
      for (Vertex w : ctx.cop_view(c).neighbors(cops[c])) t[w] = 1;
    }
    return t;
  }

  struct Region {
    std::vector<char> blocked;  // core vertices a cop reaches without the star centre
    std::vector<char> safe;     // large, small-diameter component of the unblocked core
  };

  Region safe_region(const GameContext& ctx, const std::vector<Vertex>& cops) const {
    Region out{std::vector<char>(N_, 0), std::vector<char>(N_, 0)};
    auto& blocked = out.blocked;
    for (std::size_t c = 0; c < cops.size(); ++c) {
      if (cops[c] == layout_.hub()) continue;
      const auto& view = off_hub_[ctx.assignment[c]];
      const auto label = view.component(cops[c]);
      for (Vertex v = 0; v < N_; ++v)
        if (view.component(v) == label) blocked[v] = 1;
    }
    EdgeList free_edges;
    for (const Edge& e : ctx.graph->explicit_robber_edges())
      if (!blocked[e.u] && !blocked[e.v]) free_edges.push_back(e);
    const LayerView free_core(N_, free_edges);
    std::vector<std::size_t> size(free_core.num_components(), 0);
    for (Vertex v = 0; v < N_; ++v)
      if (!blocked[v]) ++size[free_core.component(v)];
    for (std::uint32_t label = 0; label < size.size(); ++label) {
      if (size[label] < N_ / 2 + 1) continue;
      std::uint32_t diam = 0;
      for (Vertex s = 0; s < N_; ++s) {
        if (blocked[s] || free_core.component(s) != label) continue;
        const auto d = free_core.distances(s);
        for (Vertex t = 0; t < N_; ++t)
          if (!blocked[t] && free_core.component(t) == label) diam = std::max(diam, d[t]);
      }
      if (diam > layout_.D) continue;
      for (Vertex v = 0; v < N_; ++v)
        if (!blocked[v] && free_core.component(v) == label) out.safe[v] = 1;
    }
    return out;
  }

  Vertex farthest_step(const GameContext& ctx, Vertex robber, const std::vector<Vertex>& cops,
                       const std::vector<char>& threat, const std::vector<char>& blocked) const {
    std::vector<std::uint32_t> best(ctx.n(), kUnreachable);
    for (std::size_t c = 0; c < cops.size(); ++c) {
      const auto d = ctx.cop_view(c).distances(cops[c]);
      for (Vertex v = 0; v < ctx.n(); ++v) best[v] = std::min(best[v], d[v]);
    }
    // options from v that stay out of every cop's reach after one cop move
    auto escapes = [&](Vertex v) {
      std::size_t count = best[v] >= 3;
      for (Vertex y : ctx.robber.neighbors(v)) count += best[y] >= 3;
      return count;
    };
    std::vector<std::size_t> margin(ctx.n(), 0);
    margin[robber] = escapes(robber);
    for (Vertex w : ctx.robber.neighbors(robber)) margin[w] = escapes(w);
    Vertex choice = robber;
    auto better = [&](Vertex a, Vertex b) {
      if (threat[a] != threat[b]) return !threat[a];
      if (margin[a] != margin[b]) return margin[a] > margin[b];
      if (best[a] != best[b]) return best[a] > best[b];
      const bool ba = a < N_ && blocked[a], bb = b < N_ && blocked[b];
      return !ba && bb;
    };
    for (Vertex w : ctx.robber.neighbors(robber))
      if (better(w, choice)) choice = w;
    return choice;
  }

  std::size_t N_;
  CopsbaneLayout layout_;
  std::vector<LayerView> off_hub_;
  bool degraded_ = false;
  std::size_t degraded_rounds_ = 0;
  std::size_t violations_ = 0;
};

// ---------------------------------------------------------------------------
// Tree robber layer: squeeze

/// One cop guards a vertex u of the robber's tree; the robber is confined to
/// one branch at u. The guard advances to the next tree vertex w toward the
/// robber directly, through a common neighbour, or by handing over to a
/// second cop, so the robber's branch shrinks every few moves.
class TreeSqueezeCop : public CopStrategy {
 public:
  std::string name() const override { return "tree_squeeze_cop"; }

  void reset(const GameContext& ctx, std::uint64_t) override {
    const auto& g = *ctx.graph;
    if (!is_tree(g.robber_edges(), g.num_vertices())) throw StrategyError("tree_squeeze_cop needs a tree robber layer");
    const std::size_t k = ctx.num_cops();
    if (k == 0) throw StrategyError("tree_squeeze_cop needs at least one cop");
    auto ctx_tree = detail::tree_context(g);
    std::vector<std::uint32_t> comps(k, 0);
    bool found = false;
    while (!found) {
      if (!detail::robbers_edge_for(ctx_tree, ctx.assignment, comps)) {
        found = true;
        break;
      }
      std::size_t i = k;
      while (i-- > 0) {
        if (++comps[i] < ctx.cop_view(i).num_components()) break;
        comps[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
    if (!found) throw StrategyError("tree_squeeze_cop: this allocation has a robber's edge");
    comps_ = comps;
    guard_ = 0;
    pending_.reset();
  }

  std::vector<Vertex> place(const GameContext& ctx) override {
    std::vector<Vertex> out(ctx.num_cops());
    for (std::size_t c = 0; c < out.size(); ++c) {
      out[c] = 0;
      while (ctx.cop_view(c).component(out[c]) != comps_[c]) ++out[c];
    }
    guarded_ = out[guard_];
    return out;
  }

  std::vector<Vertex> move(const GameContext& ctx, Vertex robber, const std::vector<Vertex>& cops) override {
    std::vector<Vertex> out = cops;
    if (auto c = capturing_cop(ctx, robber, cops)) {
      out[*c] = robber;
      return out;
    }
    if (pending_) {
      out[guard_] = *pending_;
      guarded_ = *pending_;
      pending_.reset();
      return out;
    }
    const Vertex u = guarded_;
    const auto to_robber = ctx.robber.distances(robber);
    Vertex w = u;
    for (Vertex x : ctx.robber.neighbors(u))
      if (to_robber[x] + 1 == to_robber[u]) w = x;
    const auto& gview = ctx.cop_view(guard_);
    const auto d = gview.distances(u);
    if (d[w] == 1) {
      out[guard_] = w;
      guarded_ = w;
      return out;
    }
    if (d[w] == 2) {
      const auto dw = gview.distances(w);
      for (Vertex x : gview.neighbors(u))
        if (dw[x] == 1) {
          out[guard_] = x;
          pending_ = w;
          return out;
        }
    }
    for (std::size_t c = 0; c < cops.size(); ++c) {
      if (c == guard_ || ctx.cop_view(c).component(w) != comps_[c]) continue;
      out[c] = step_toward(ctx.cop_view(c), cops[c], w);
      if (out[c] == w) {
        guard_ = c;
        guarded_ = w;
      }
      return out;
    }
    for (std::size_t c = 0; c < cops.size(); ++c) {
      if (c == guard_ || ctx.cop_view(c).component(u) != comps_[c]) continue;
      out[c] = step_toward(ctx.cop_view(c), cops[c], u);
      if (out[c] == u) guard_ = c;
      return out;
    }
    throw StrategyError("tree_squeeze_cop: no cop can advance from " + std::to_string(u));
  }

 private:
  std::vector<std::uint32_t> comps_;
  std::size_t guard_ = 0;
  Vertex guarded_ = 0;
  std::optional<Vertex> pending_;
};

// ---------------------------------------------------------------------------
// Tree decomposition sweep

/// Cops occupy a whole bag, then move into the neighbouring bag toward the
/// robber while keeping the shared vertices occupied.
class BagsweepCop : public CopStrategy {
 public:
  explicit BagsweepCop(TreeDecomposition td) : td_(std::move(td)) {}
  std::string name() const override { return "bagsweep_cop"; }

  void reset(const GameContext& ctx, std::uint64_t) override {
    if (ctx.num_cops() < td_.max_bag()) throw StrategyError("bagsweep_cop needs at least max-bag-size cops");
    if (!td_validate(td_, ctx.n(), ctx.graph->robber_edges()))
      throw StrategyError("bagsweep_cop needs a decomposition valid for the robber layer");
    for (const auto& view : ctx.layers)
      if (!view.connected()) throw StrategyError("bagsweep_cop needs connected cop layers");
    EdgeList te;
    for (const auto& [a, b] : td_.tree) te.emplace_back(a, b);
    tree_ = LayerView(td_.bags.size(), canonical(te));
    bag_ = 0;
    targets_.clear();
  }

  std::vector<Vertex> place(const GameContext& ctx) override {
    std::vector<Vertex> out(ctx.num_cops());
    const auto& bag = td_.bags[0];
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = bag.empty() ? 0 : bag[c % bag.size()];
    return out;
  }

  std::vector<Vertex> move(const GameContext& ctx, Vertex robber, const std::vector<Vertex>& cops) override {
    std::vector<Vertex> out = cops;
    if (auto c = capturing_cop(ctx, robber, cops)) {
      out[*c] = robber;
      return out;
    }
    if (targets_.empty()) plan_shift(robber, cops);
    bool done = true;
    for (std::size_t c = 0; c < cops.size(); ++c) {
      out[c] = step_toward(ctx.cop_view(c), cops[c], targets_[c]);
      done = done && out[c] == targets_[c];
    }
    if (done) {
      bag_ = next_bag_;
      targets_.clear();
    }
    return out;
  }

 private:
  /// Choose the neighbour bag toward the robber and a target vertex per cop.
  void plan_shift(Vertex robber, const std::vector<Vertex>& cops) {
    const std::size_t m = td_.bags.size();
    std::vector<std::uint32_t> parent(m, std::numeric_limits<std::uint32_t>::max());
    std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(bag_)};
    parent[bag_] = static_cast<std::uint32_t>(bag_);
    std::optional<std::uint32_t> hit;
    for (std::size_t h = 0; h < queue.size() && !hit; ++h) {
      const auto b = queue[h];
      if (std::binary_search(td_.bags[b].begin(), td_.bags[b].end(), robber)) {
        hit = b;
        break;
      }
      for (Vertex c : tree_.neighbors(b))
        if (parent[c] == std::numeric_limits<std::uint32_t>::max()) {
          parent[c] = b;
          queue.push_back(c);
        }
    }
    next_bag_ = bag_;
    if (hit && *hit != bag_) {
      std::uint32_t b = *hit;
      while (parent[b] != bag_) b = parent[b];
      next_bag_ = b;
    }
    const auto& from = td_.bags[bag_];
    const auto& to = td_.bags[next_bag_];
    targets_.assign(cops.size(), 0);
    std::vector<char> assigned(cops.size(), 0);
    std::vector<Vertex> uncovered;
    for (Vertex v : to) {
      bool kept = false;
      if (std::binary_search(from.begin(), from.end(), v))
        for (std::size_t c = 0; c < cops.size() && !kept; ++c)
          if (!assigned[c] && cops[c] == v) {
            assigned[c] = 1;
            targets_[c] = v;
            kept = true;
          }
      if (!kept) uncovered.push_back(v);
    }
    std::size_t next = 0;
    for (std::size_t c = 0; c < cops.size(); ++c) {
      if (assigned[c]) continue;
      targets_[c] = next < uncovered.size() ? uncovered[next++] : cops[c];
    }
  }

  TreeDecomposition td_;
  LayerView tree_;
  std::size_t bag_ = 0, next_bag_ = 0;
  std::vector<Vertex> targets_;
};

// ---------------------------------------------------------------------------
// Terminal play

/// The human plays one side by typing vertex ids; the engine answers with
/// table policies. `quit` abandons the game.
inline MatchRecord interactive_play(const MultiLayerGraph& g, const AllocationPlan& alloc, bool human_is_robber,
                                    std::istream& in, std::ostream& out, std::uint64_t max_rounds = 1000,
                                    const SolverOptions& opts = {}) {
  GameContext ctx(g, alloc, "interactive");
  auto table = std::make_shared<const CopWinTable>(build_copwin(g, ctx.assignment, opts));
  TablebaseCop engine_cop(table);
  TablebaseRobber engine_robber(table);
  engine_cop.reset(ctx, 0);
  engine_robber.reset(ctx, 0);

  MatchRecord rec;
  rec.graph_id = ctx.graph_id;
  rec.alloc = alloc;
  rec.cop_strategy = human_is_robber ? engine_cop.name() : "human";
  rec.robber_strategy = human_is_robber ? "human" : engine_robber.name();
  rec.horizon = max_rounds;

  // Reads one line of vertex ids; nullopt on quit or end of input.
  auto read_vertices = [&](const std::string& prompt, std::size_t count) -> std::optional<std::vector<Vertex>> {
    while (true) {
      out << prompt << std::flush;
      std::string line;
      if (!std::getline(in, line)) return std::nullopt;
      std::istringstream ss(line);
      std::vector<std::string> tok;
      for (std::string t; ss >> t;) tok.push_back(t);
      if (tok.size() == 1 && (tok[0] == "quit" || tok[0] == "q")) return std::nullopt;
      std::vector<Vertex> vs;
      bool ok = tok.size() == count;
      for (const auto& t : tok) {
        if (!ok) break;
        try {
          const auto v = std::stoul(t);
          ok = v < g.num_vertices();
          vs.push_back(static_cast<Vertex>(v));
        } catch (const std::exception&) {
          ok = false;
        }
      }
      if (ok) return vs;
      out << "expected " << count << " vertex id(s) below " << g.num_vertices() << " or 'quit'\n";
    }
  };
  auto abandon = [&] {
    rec.outcome = Outcome::Abandoned;
    return rec;
  };
  auto show = [&](Vertex r, const std::vector<Vertex>& cops) {
    out << "robber=" << r << " cops=";
    for (std::size_t c = 0; c < cops.size(); ++c) out << (c ? "," : "") << cops[c];
    out << '\n';
  };

  std::vector<Vertex> cops;
  if (human_is_robber) {
    cops = engine_cop.place(ctx);
  } else {
    while (true) {
      auto v = read_vertices("place " + std::to_string(ctx.num_cops()) + " cops> ", ctx.num_cops());
      if (!v) return abandon();
      cops = *v;
      break;
    }
  }
  Vertex r = 0;
  if (human_is_robber) {
    show(0, cops);
    auto v = read_vertices("place robber> ", 1);
    if (!v) return abandon();
    r = (*v)[0];
  } else {
    r = engine_robber.place(ctx, cops);
  }
  rec.moves.push_back({0, 'P', r, cops});
  show(r, cops);
  if (detail::is_capture(r, cops)) {
    rec.outcome = Outcome::Capture;
    out << "captured at placement\n";
    return rec;
  }
  for (std::uint64_t round = 1; round <= max_rounds; ++round) {
    if (human_is_robber) {
      cops = engine_cop.move(ctx, r, cops);
    } else {
      while (true) {
        auto v = read_vertices("cops> ", ctx.num_cops());
        if (!v) return abandon();
        bool legal = true;
        for (std::size_t c = 0; c < cops.size(); ++c) legal = legal && can_step(ctx.cop_view(c), cops[c], (*v)[c]);
        if (legal) {
          cops = *v;
          break;
        }
        out << "illegal cop move\n";
      }
    }
    rec.moves.push_back({round, 'C', r, cops});
    show(r, cops);
    if (detail::is_capture(r, cops)) {
      rec.outcome = Outcome::Capture;
      rec.capture_round = round;
      out << "captured in round " << round << '\n';
      return rec;
    }
    if (human_is_robber) {
      while (true) {
        auto v = read_vertices("robber> ", 1);
        if (!v) return abandon();
        if (can_step(ctx.robber, r, (*v)[0])) {
          r = (*v)[0];
          break;
        }
        out << "illegal robber move\n";
      }
    } else {
      r = engine_robber.move(ctx, r, cops);
    }
    rec.moves.push_back({round, 'R', r, cops});
    show(r, cops);
    if (detail::is_capture(r, cops)) {
      rec.outcome = Outcome::Capture;
      rec.capture_round = round;
      out << "captured in round " << round << '\n';
      return rec;
    }
  }
  rec.outcome = Outcome::Survived;
  out << "survived " << max_rounds << " rounds\n";
  return rec;
}

}  // namespace mlcr

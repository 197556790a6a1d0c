#pragma once

// Exact retrograde solver for the allocated, choose-allocation and
// free-layer-choice games, plus strategy extraction.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlcr/core.hpp"
#include "mlcr/parallel.hpp"

namespace mlcr {

inline constexpr std::uint64_t kDefaultStateBudget = std::uint64_t{1} << 31;

struct SolverOptions {
  std::uint64_t state_budget = kDefaultStateBudget;
  unsigned threads = 1;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget)
      : std::runtime_error("state budget exceeded: need " + std::to_string(required) + " states, budget " +
                           std::to_string(budget)),
        required_(required) {}
  std::uint64_t required() const noexcept { return required_; }

 private:
  std::uint64_t required_;
};

enum class Status : std::uint8_t { Unknown = 0, CopWin = 1, RobberWin = 2 };
enum class Winner { Cop, Robber };

inline std::string_view to_string(Winner w) { return w == Winner::Cop ? "COP" : "ROBBER"; }

/// n^(k+1)(k+1), or nullopt on overflow.
inline std::optional<std::uint64_t> state_count(std::uint64_t n, std::uint64_t k) {
  std::uint64_t total = k + 1;
  for (std::uint64_t i = 0; i <= k; ++i) {
    if (n != 0 && total > std::numeric_limits<std::uint64_t>::max() / n) return std::nullopt;
    total *= n;
  }
  return total;
}

/// Game state: positions[0] is the robber, positions[i] cop i; turn k means
/// the robber moves, turn t < k means cop t+1 moves.
struct GameState {
  std::vector<Vertex> positions;
  std::uint32_t turn = 0;

  bool operator==(const GameState&) const = default;
};

/// Status and rank of every state for one cop-to-layer assignment.
class CopWinTable {
 public:
  using Index = std::uint64_t;

  CopWinTable(const MultiLayerGraph& g, std::vector<std::uint32_t> assignment, const SolverOptions& opts = {})
      : n_(g.num_vertices()), k_(static_cast<std::uint32_t>(assignment.size())), assignment_(std::move(assignment)) {
    for (auto layer : assignment_)
      if (layer >= g.num_layers()) throw GraphError("cop assigned to missing layer " + std::to_string(layer));
    const auto count = state_count(n_, k_);
    if (!count || *count > opts.state_budget)
      throw BudgetExceeded(count.value_or(std::numeric_limits<std::uint64_t>::max()), opts.state_budget);
    num_states_ = *count;

    views_.reserve(k_ + 1);
    views_.push_back(std::make_shared<const LayerView>(g.robber_view()));
    std::vector<std::shared_ptr<const LayerView>> layer_cache(g.num_layers());
    for (auto layer : assignment_) {
      if (!layer_cache[layer]) layer_cache[layer] = std::make_shared<const LayerView>(g.layer_view(layer));
      views_.push_back(layer_cache[layer]);
    }
    stride_.assign(k_ + 1, 0);
    Index s = k_ + 1;
    for (std::uint32_t a = k_ + 1; a-- > 0;) {
      stride_[a] = s;
      s *= n_;
    }
    solve();
  }

  std::size_t num_vertices() const noexcept { return n_; }
  std::uint32_t num_cops() const noexcept { return k_; }
  const std::vector<std::uint32_t>& assignment() const noexcept { return assignment_; }
  Index num_states() const noexcept { return num_states_; }

  Index encode(const GameState& s) const {
    Index idx = s.turn;
    for (std::uint32_t a = 0; a <= k_; ++a) idx += stride_[a] * s.positions[a];
    return idx;
  }
  Index encode(const std::vector<Vertex>& positions, std::uint32_t turn) const { return encode(GameState{positions, turn}); }

  GameState decode(Index idx) const {
    GameState s;
    s.turn = static_cast<std::uint32_t>(idx % (k_ + 1));
    s.positions.resize(k_ + 1);
    for (std::uint32_t a = 0; a <= k_; ++a) s.positions[a] = static_cast<Vertex>((idx / stride_[a]) % n_);
    return s;
  }

  Vertex position(Index idx, std::uint32_t agent) const { return static_cast<Vertex>((idx / stride_[agent]) % n_); }
  std::uint32_t turn(Index idx) const { return static_cast<std::uint32_t>(idx % (k_ + 1)); }

  bool is_capture(Index idx) const {
    const Vertex r = position(idx, 0);
    for (std::uint32_t a = 1; a <= k_; ++a)
      if (position(idx, a) == r) return true;
    return false;
  }

  Status status(Index idx) const { return static_cast<Status>(status_[idx]); }
  bool copwin(Index idx) const { return status(idx) == Status::CopWin; }
  std::uint32_t rank(Index idx) const { return rank_[idx]; }

  /// Agent moving in the given state: 0 for the robber, i for cop i.
  std::uint32_t mover(Index idx) const {
    const auto t = turn(idx);
    return t == k_ ? 0 : t + 1;
  }

  /// Neighbours of `v` in the layer of `agent` (robber layer for agent 0).
  const std::vector<Vertex>& agent_neighbors(std::uint32_t agent, Vertex v) const { return views_[agent]->neighbors(v); }
  const LayerView& agent_view(std::uint32_t agent) const { return *views_[agent]; }

  /// Successors in increasing index order (stay move included).
  std::vector<Index> successors(Index idx) const {
    std::vector<Index> out;
    const auto a = mover(idx);
    const Vertex p = position(idx, a);
    const Index base = idx - turn(idx) - stride_[a] * p;
    const std::uint32_t next_turn = (turn(idx) + 1) % (k_ + 1);
    out.push_back(base + stride_[a] * p + next_turn);
    for (Vertex q : views_[a]->neighbors(p)) out.push_back(base + stride_[a] * q + next_turn);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// CWT1 debug dump: one `index status rank` line per state.
  void dump(std::ostream& out) const {
    out << "CWT1 " << n_ << ' ' << k_ << ' ' << num_states_ << '\n';
    for (Index i = 0; i < num_states_; ++i)
      out << i << ' ' << (copwin(i) ? 'C' : 'R') << ' ' << (copwin(i) ? rank_[i] : 0) << '\n';
  }

 private:
  void solve() {
    constexpr std::uint32_t kNoRank = std::numeric_limits<std::uint32_t>::max();
    status_.assign(num_states_, static_cast<std::uint8_t>(Status::Unknown));
    rank_.assign(num_states_, kNoRank);
    counter_.assign(num_states_, 0);
    std::vector<Index> queue;
    queue.reserve(num_states_ / 4 + 1);

    for (Index i = 0; i < num_states_; ++i) {
      if (is_capture(i)) {
        status_[i] = static_cast<std::uint8_t>(Status::CopWin);
        rank_[i] = 0;
        queue.push_back(i);
      } else if (turn(i) == k_) {
        const auto deg = views_[0]->degree(position(i, 0)) + 1;
        if (deg > std::numeric_limits<std::uint16_t>::max()) throw GraphError("robber degree too large for solver");
        counter_[i] = static_cast<std::uint16_t>(deg);
      }
    }

    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Index s = queue[head];
      const std::uint32_t r = rank_[s];
      const std::uint32_t t = turn(s);
      const std::uint32_t pt = t == 0 ? k_ : t - 1;
      const std::uint32_t a = pt == k_ ? 0 : pt + 1;
      const Vertex p = position(s, a);
      const Index base = s - t - stride_[a] * p + pt;
      auto visit = [&](Vertex q) {
        const Index pred = base + stride_[a] * q;
        if (status_[pred] != static_cast<std::uint8_t>(Status::Unknown)) return;
        if (pt == k_ && --counter_[pred] != 0) return;
        status_[pred] = static_cast<std::uint8_t>(Status::CopWin);
        rank_[pred] = r + 1;
        queue.push_back(pred);
      };
      visit(p);
      for (Vertex q : views_[a]->neighbors(p)) visit(q);
    }

    for (auto& st : status_)
      if (st == static_cast<std::uint8_t>(Status::Unknown)) st = static_cast<std::uint8_t>(Status::RobberWin);
    counter_.clear();
    counter_.shrink_to_fit();
  }

  std::size_t n_;
  std::uint32_t k_;
  std::vector<std::uint32_t> assignment_;
  Index num_states_ = 0;
  std::vector<std::shared_ptr<const LayerView>> views_;
  std::vector<Index> stride_;
  std::vector<std::uint8_t> status_;
  std::vector<std::uint32_t> rank_;
  std::vector<std::uint16_t> counter_;
};

inline CopWinTable build_copwin(const MultiLayerGraph& g, const std::vector<std::uint32_t>& assignment,
                                const SolverOptions& opts = {}) {
  if (assignment.empty()) throw GraphError("build_copwin needs at least one cop");
  return CopWinTable(g, assignment, opts);
}

/// Mixed-radix enumeration of k-tuples over 0..n-1, last entry fastest.
inline bool next_tuple(std::vector<Vertex>& tuple, std::size_t n) {
  for (std::size_t i = tuple.size(); i-- > 0;) {
    if (++tuple[i] < n) return true;
    tuple[i] = 0;
  }
  return false;
}

struct GameVerdict {
  Winner winner = Winner::Robber;
  AllocationPlan plan;
  /// COP: a cop placement that wins against every robber placement.
  std::vector<Vertex> cop_placement;
  /// ROBBER: for each cop placement (mixed-radix index, first cop most
  /// significant) a robber vertex whose start state is not cop-win.
  std::vector<Vertex> robber_replies;
  /// ROBBER in the free-layer-choice game: per composition, the robber layer
  /// that defeats it (in compositions() order).
  std::vector<std::uint32_t> robber_layers;
};

/// Scans placements of a built table. Cops place first, the robber replies.
inline GameVerdict verdict_from_table(const CopWinTable& table) {
  GameVerdict v;
  const std::size_t n = table.num_vertices();
  const auto k = table.num_cops();
  std::vector<Vertex> pos(k + 1, 0);
  std::vector<Vertex> cops(k, 0);
  std::vector<Vertex> replies;
  do {
    std::copy(cops.begin(), cops.end(), pos.begin() + 1);
    std::optional<Vertex> safe;
    for (Vertex r = 0; r < n && !safe; ++r) {
      pos[0] = r;
      if (!table.copwin(table.encode(pos, 0))) safe = r;
    }
    if (!safe) {
      v.winner = Winner::Cop;
      v.cop_placement = cops;
      return v;
    }
    replies.push_back(*safe);
  } while (next_tuple(cops, n));
  v.winner = Winner::Robber;
  v.robber_replies = std::move(replies);
  return v;
}

inline GameVerdict decide_allocated(const MultiLayerGraph& g, const AllocationPlan& alloc, const SolverOptions& opts = {}) {
  if (alloc.counts.size() != g.num_layers()) throw GraphError("allocation length must equal the number of layers");
  GameVerdict v;
  if (alloc.total() == 0) {
    v.winner = g.num_vertices() == 0 ? Winner::Cop : Winner::Robber;
    v.robber_replies.assign(g.num_vertices() ? 1 : 0, 0);
  } else if (g.num_vertices() == 0) {
    v.winner = Winner::Cop;
  } else {
    v = verdict_from_table(build_copwin(g, alloc.assignment(), opts));
  }
  v.plan = alloc;
  return v;
}

/// First winning composition, trying (k,0,..,0) first.
inline GameVerdict decide_choose_allocation(const MultiLayerGraph& g, std::uint32_t k, const SolverOptions& opts = {}) {
  const auto plans = compositions(k, g.num_layers());
  if (opts.threads > 1) {
    auto verdicts = parallel_map(plans.size(), opts.threads, [&](std::size_t i) { return decide_allocated(g, plans[i], opts); });
    for (auto& v : verdicts)
      if (v.winner == Winner::Cop) return v;
  } else {
    for (const auto& plan : plans) {
      auto v = decide_allocated(g, plan, opts);
      if (v.winner == Winner::Cop) return v;
    }
  }
  GameVerdict v;
  v.winner = Winner::Robber;
  return v;
}

/// Layers are cop layers only; the robber picks any of them as its own layer
/// after seeing the allocation.
inline GameVerdict decide_free_layer_choice(const MultiLayerGraph& g, std::uint32_t k, const SolverOptions& opts = {}) {
  std::vector<MultiLayerGraph> variants;
  variants.reserve(g.num_layers());
  for (std::size_t j = 0; j < g.num_layers(); ++j) variants.push_back(g.with_robber(RobberSpec::Explicit, g.layer(j)));
  GameVerdict out;
  out.winner = Winner::Robber;
  for (const auto& plan : compositions(k, g.num_layers())) {
    std::optional<std::uint32_t> beaten_by;
    GameVerdict first;
    for (std::uint32_t j = 0; j < variants.size() && !beaten_by; ++j) {
      auto v = decide_allocated(variants[j], plan, opts);
      if (v.winner == Winner::Robber) beaten_by = j;
      else if (j == 0) first = std::move(v);
    }
    if (!beaten_by) {
      first.winner = Winner::Cop;
      first.plan = plan;
      // The placement shown is the one winning against robber layer 1; other
      // layers may need other placements.
      return first;
    }
    out.robber_layers.push_back(*beaten_by);
  }
  return out;
}

/// Least k <= k_max with a winning allocation.
inline std::optional<std::uint32_t> multilayer_cop_number(const MultiLayerGraph& g, std::uint32_t k_max,
                                                          const SolverOptions& opts = {}) {
  for (std::uint32_t k = 0; k <= k_max; ++k)
    if (decide_choose_allocation(g, k, opts).winner == Winner::Cop) return k;
  return std::nullopt;
}

inline std::optional<std::uint32_t> single_layer_cop_number(std::size_t n, const EdgeList& edges, std::uint32_t k_max,
                                                            const SolverOptions& opts = {}) {
  return multilayer_cop_number(MultiLayerGraph(n, {edges}, RobberSpec::Union), k_max, opts);
}

/// Optimal policies read from a table. Computed per query.
class TablePolicy {
 public:
  using Index = CopWinTable::Index;

  explicit TablePolicy(const CopWinTable& table) : table_(&table) {}

  /// Rank-minimizing COPWIN successor of a COPWIN cop-turn state.
  std::optional<Index> cop_move(Index s) const {
    const auto& t = *table_;
    if (t.is_capture(s) || t.turn(s) == t.num_cops() || !t.copwin(s)) return std::nullopt;
    std::optional<Index> best;
    for (Index x : t.successors(s))
      if (t.copwin(x) && (!best || t.rank(x) < t.rank(*best))) best = x;
    return best;
  }

  /// A ROBBERWIN successor if one exists, else the rank-maximizing one.
  std::optional<Index> robber_move(Index s) const {
    const auto& t = *table_;
    if (t.is_capture(s) || t.turn(s) != t.num_cops()) return std::nullopt;
    std::optional<Index> best;
    for (Index x : t.successors(s)) {
      if (!t.copwin(x)) return x;
      if (!best || t.rank(x) > t.rank(*best)) best = x;
    }
    return best;
  }

  const CopWinTable& table() const { return *table_; }

 private:
  const CopWinTable* table_;
};

inline TablePolicy extract_strategy(const CopWinTable& table) { return TablePolicy(table); }

}  // namespace mlcr

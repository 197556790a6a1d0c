#pragma once

// Slow reference implementations for cross-checking. Each is written from the
// definitions without reusing the code it checks; keep instances tiny.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "mlcr/core.hpp"

namespace mlcr::oracle {

namespace detail {

inline std::vector<std::vector<char>> adjacency_matrix(std::size_t n, const EdgeList& edges) {
  std::vector<std::vector<char>> a(n, std::vector<char>(n, 0));
  for (const Edge& e : edges) a[e.u][e.v] = a[e.v][e.u] = 1;
  return a;
}

inline std::vector<std::vector<char>> robber_matrix(const MultiLayerGraph& g) {
  if (g.robber_spec() == RobberSpec::Complete) {
    const std::size_t n = g.num_vertices();
    std::vector<std::vector<char>> a(n, std::vector<char>(n, 1));
    for (std::size_t v = 0; v < n; ++v) a[v][v] = 0;
    return a;
  }
  if (g.robber_spec() == RobberSpec::Explicit) return adjacency_matrix(g.num_vertices(), g.explicit_robber_edges());
  std::vector<std::vector<char>> a(g.num_vertices(), std::vector<char>(g.num_vertices(), 0));
  for (const auto& layer : g.layers())
    for (const Edge& e : layer) a[e.u][e.v] = a[e.v][e.u] = 1;
  return a;
}

}  // namespace detail

inline constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

/// Sequential-turn game solved by synchronous value iteration. value[s] is the
/// number of plies to capture under optimal play, kInf for robber wins.
/// States are indexed (turn, p0, p1, .., pk) with p0 fastest.
class NaiveGame {
 public:
  NaiveGame(const MultiLayerGraph& g, const std::vector<std::uint32_t>& assignment)
      : n_(g.num_vertices()), k_(assignment.size()) {
    adj_.push_back(detail::robber_matrix(g));
    for (auto layer : assignment) adj_.push_back(detail::adjacency_matrix(n_, g.layer(layer)));
    std::size_t count = k_ + 1;
    for (std::size_t a = 0; a <= k_; ++a) count *= n_;
    value_.assign(count, kInf);
    for (std::size_t s = 0; s < count; ++s)
      if (captured(s)) value_[s] = 0;
    for (std::uint32_t ply = 1;; ++ply) {
      std::vector<std::size_t> fresh;
      for (std::size_t s = 0; s < count; ++s) {
        if (value_[s] != kInf) continue;
        const bool robber_turn = turn(s) == k_;
        bool win = robber_turn;
        for (std::size_t x : successors(s)) {
          const bool done = value_[x] < ply;
          if (robber_turn && !done) win = false;
          if (!robber_turn && done) win = true;
        }
        if (win) fresh.push_back(s);
      }
      if (fresh.empty()) break;
      for (auto s : fresh) value_[s] = ply;
    }
  }

  std::size_t index(const std::vector<Vertex>& positions, std::size_t turn) const {
    std::size_t idx = 0;
    for (std::size_t a = positions.size(); a-- > 0;) idx = idx * n_ + positions[a];
    return turn * width() + idx;
  }
  bool copwin(const std::vector<Vertex>& positions, std::size_t turn) const { return value_[index(positions, turn)] != kInf; }
  std::uint32_t value(const std::vector<Vertex>& positions, std::size_t turn) const { return value_[index(positions, turn)]; }
  std::size_t num_states() const { return value_.size(); }

 private:
  std::size_t width() const {
    std::size_t w = 1;
    for (std::size_t a = 0; a <= k_; ++a) w *= n_;
    return w;
  }
  std::size_t turn(std::size_t s) const { return s / width(); }
  Vertex pos(std::size_t s, std::size_t agent) const {
    std::size_t r = s % width();
    for (std::size_t a = 0; a < agent; ++a) r /= n_;
    return static_cast<Vertex>(r % n_);
  }
  bool captured(std::size_t s) const {
    for (std::size_t a = 1; a <= k_; ++a)
      if (pos(s, a) == pos(s, 0)) return true;
    return false;
  }
  std::vector<std::size_t> successors(std::size_t s) const {
    const std::size_t t = turn(s);
    const std::size_t agent = t == k_ ? 0 : t + 1;
    std::vector<Vertex> p(k_ + 1);
    for (std::size_t a = 0; a <= k_; ++a) p[a] = pos(s, a);
    const std::size_t next = (t + 1) % (k_ + 1);
    std::vector<std::size_t> out;
    const Vertex here = p[agent];
    for (Vertex w = 0; w < n_; ++w) {
      if (w != here && !adj_[agent][here][w]) continue;
      p[agent] = w;
      out.push_back(index(p, next));
    }
    return out;
  }

  std::size_t n_, k_;
  std::vector<std::vector<std::vector<char>>> adj_;
  std::vector<std::uint32_t> value_;
};

/// Game with simultaneous cop-team moves: each round every cop moves at once,
/// then the robber. copwin(r, cops) is for the cop team to move.
class TeamGame {
 public:
  TeamGame(const MultiLayerGraph& g, const std::vector<std::uint32_t>& assignment)
      : n_(g.num_vertices()), k_(assignment.size()) {
    robber_ = detail::robber_matrix(g);
    for (auto layer : assignment) cop_adj_.push_back(detail::adjacency_matrix(n_, g.layer(layer)));
    std::size_t configs = 1;
    for (std::size_t a = 0; a <= k_; ++a) configs *= n_;
    cop_turn_.assign(configs, 0);
    robber_turn_.assign(configs, 0);
    for (std::size_t c = 0; c < configs; ++c)
      if (captured(c)) cop_turn_[c] = robber_turn_[c] = 1;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t c = 0; c < configs; ++c) {
        if (!cop_turn_[c]) {
          bool win = false;
          for_each_team_move(c, [&](std::size_t x) { win = win || robber_turn_[x]; });
          if (win) cop_turn_[c] = changed = 1;
        }
        if (!robber_turn_[c]) {
          bool win = true;
          const auto p = unpack(c);
          for (Vertex w = 0; w < n_; ++w) {
            if (w != p[0] && !robber_[p[0]][w]) continue;
            auto q = p;
            q[0] = w;
            win = win && cop_turn_[pack(q)];
          }
          if (win) robber_turn_[c] = changed = 1;
        }
      }
    }
  }

  bool copwin(Vertex robber, const std::vector<Vertex>& cops) const {
    std::vector<Vertex> p{robber};
    p.insert(p.end(), cops.begin(), cops.end());
    return cop_turn_[pack(p)];
  }

 private:
  std::size_t pack(const std::vector<Vertex>& p) const {
    std::size_t c = 0;
    for (std::size_t a = p.size(); a-- > 0;) c = c * n_ + p[a];
    return c;
  }
  std::vector<Vertex> unpack(std::size_t c) const {
    std::vector<Vertex> p(k_ + 1);
    for (auto& v : p) {
      v = static_cast<Vertex>(c % n_);
      c /= n_;
    }
    return p;
  }
  bool captured(std::size_t c) const {
    const auto p = unpack(c);
    for (std::size_t a = 1; a <= k_; ++a)
      if (p[a] == p[0]) return true;
    return false;
  }
  template <class Fn>
  void for_each_team_move(std::size_t c, Fn&& fn) const {
    const auto p = unpack(c);
    std::vector<std::vector<Vertex>> options(k_);
    for (std::size_t i = 0; i < k_; ++i)
      for (Vertex w = 0; w < n_; ++w)
        if (w == p[i + 1] || cop_adj_[i][p[i + 1]][w]) options[i].push_back(w);
    std::vector<std::size_t> pick(k_, 0);
    while (true) {
      auto q = p;
      for (std::size_t i = 0; i < k_; ++i) q[i + 1] = options[i][pick[i]];
      fn(pack(q));
      std::size_t i = 0;
      while (i < k_ && ++pick[i] == options[i].size()) pick[i++] = 0;
      if (i == k_) return;
    }
  }

  std::size_t n_, k_;
  std::vector<std::vector<char>> robber_;
  std::vector<std::vector<std::vector<char>>> cop_adj_;
  std::vector<char> cop_turn_, robber_turn_;
};

/// Domination number of a simple graph by subset enumeration (n <= 20).
inline std::size_t domination_number(std::size_t n, const EdgeList& edges) {
  if (n == 0) return 0;
  std::vector<std::uint32_t> closed(n);
  for (std::size_t v = 0; v < n; ++v) closed[v] = 1u << v;
  for (const Edge& e : edges) {
    closed[e.u] |= 1u << e.v;
    closed[e.v] |= 1u << e.u;
  }
  const std::uint32_t all = n == 32 ? ~0u : (1u << n) - 1;
  std::size_t best = n;
  for (std::uint32_t s = 1; s <= all && s != 0; ++s) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(s));
    if (size >= best) continue;
    std::uint32_t cover = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (s >> v & 1) cover |= closed[v];
    if (cover == all) best = size;
  }
  return best;
}

/// Minimum multi-layer dominating set size by enumerating sets of
/// (vertex, layer) pairs in increasing size.
inline std::size_t multilayer_domination_number(const MultiLayerGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<char>> cover;
  for (std::size_t i = 0; i < g.num_layers(); ++i) {
    const auto a = detail::adjacency_matrix(n, g.layer(i));
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<char> c(n, 0);
      c[v] = 1;
      for (std::size_t w = 0; w < n; ++w)
        if (a[v][w]) c[w] = 1;
      cover.push_back(c);
    }
  }
  const std::size_t m = cover.size();
  for (std::size_t size = 1; size <= n; ++size) {
    std::vector<std::size_t> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<char> hit(n, 0);
      for (auto i : idx)
        for (std::size_t v = 0; v < n; ++v) hit[v] = hit[v] || cover[i][v];
      if (std::all_of(hit.begin(), hit.end(), [](char c) { return c; })) return size;
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == m - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return n;
}

namespace detail {

/// Calls fn(cops) for every k-tuple of (vertex, layer) cop positions.
template <class Fn>
bool for_each_cop_tuple(std::size_t n, std::size_t tau, std::size_t k, Fn&& fn) {
  std::vector<std::pair<Vertex, std::size_t>> cops(k, {0, 0});
  while (true) {
    if (!fn(cops)) return false;
    std::size_t i = 0;
    while (i < k) {
      if (++cops[i].first < n) break;
      cops[i].first = 0;
      if (++cops[i].second < tau) break;
      cops[i].second = 0;
      ++i;
    }
    if (i == k) return true;
  }
}

}  // namespace detail

/// (1,k)-existential closure from its definition: for every placement of k
/// cops (repetition allowed) that leaves a vertex free, every free vertex has
/// a robber neighbour that is free and not adjacent to any cop in that cop's layer.
inline bool existentially_closed(const MultiLayerGraph& g, std::size_t k) {
  const std::size_t n = g.num_vertices();
  if (n == 0 || k == 0) return false;
  std::vector<std::vector<std::vector<char>>> layer;
  for (const auto& e : g.layers()) layer.push_back(detail::adjacency_matrix(n, e));
  const auto robber = detail::robber_matrix(g);
  return detail::for_each_cop_tuple(n, g.num_layers(), k, [&](const auto& cops) {
    std::vector<char> occupied(n, 0);
    for (auto [v, i] : cops) occupied[v] = 1;
    if (std::all_of(occupied.begin(), occupied.end(), [](char c) { return c; })) return false;
    for (Vertex v = 0; v < n; ++v) {
      if (occupied[v]) continue;
      bool escape = false;
      for (Vertex x = 0; x < n && !escape; ++x) {
        if (!robber[v][x] || occupied[x]) continue;
        bool seen = false;
        for (auto [c, i] : cops) seen = seen || layer[i][x][c];
        escape = !seen;
      }
      if (!escape) return false;
    }
    return true;
  });
}

/// Closed-neighbourhood condition for a complete robber layer, from its
/// definition over all k-tuples of cops and every robber vertex outside them.
inline bool clique_condition(const MultiLayerGraph& g, std::size_t k) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<std::vector<char>>> layer;
  for (const auto& e : g.layers()) layer.push_back(detail::adjacency_matrix(n, e));
  return detail::for_each_cop_tuple(n, g.num_layers(), k, [&](const auto& cops) {
    std::vector<char> cover(n, 0);
    for (auto [c, i] : cops) {
      cover[c] = 1;
      for (Vertex w = 0; w < n; ++w)
        if (layer[i][c][w]) cover[w] = 1;
    }
    for (Vertex u = 0; u < n; ++u) {
      bool on_cop = false;
      for (auto [c, i] : cops) on_cop = on_cop || c == u;
      if (on_cop) continue;
      auto with_u = cover;
      with_u[u] = 1;
      if (std::count(with_u.begin(), with_u.end(), 1) >= static_cast<long>(n)) return false;
    }
    return true;
  });
}

/// Treewidth as the best elimination order over all permutations (n <= 9).
inline std::size_t treewidth_by_permutation(std::size_t n, const EdgeList& edges) {
  if (n == 0) return 0;
  const auto base = detail::adjacency_matrix(n, edges);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::size_t best = n - 1;
  do {
    auto a = base;
    std::vector<char> gone(n, 0);
    std::size_t width = 0;
    for (auto v : order) {
      std::vector<std::size_t> nb;
      for (std::size_t w = 0; w < n; ++w)
        if (!gone[w] && a[v][w]) nb.push_back(w);
      width = std::max(width, nb.size());
      for (auto x : nb)
        for (auto y : nb)
          if (x != y) a[x][y] = 1;
      gone[v] = 1;
    }
    best = std::min(best, width);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

/// Shortest cycle length by exhaustive simple-path search, nullopt for forests.
inline std::optional<std::size_t> girth_by_search(std::size_t n, const EdgeList& edges) {
  const auto a = detail::adjacency_matrix(n, edges);
  std::optional<std::size_t> best;
  std::vector<char> on_path(n, 0);
  // Cycles are rooted at their smallest vertex.
  auto dfs = [&](auto&& self, std::size_t root, std::size_t v, std::size_t len) -> void {
    if (best && len >= *best) return;
    for (std::size_t w = root; w < n; ++w) {
      if (!a[v][w]) continue;
      if (w == root && len >= 3) best = len;
      if (w <= root || on_path[w]) continue;
      on_path[w] = 1;
      self(self, root, w, len + 1);
      on_path[w] = 0;
    }
  };
  for (std::size_t r = 0; r < n; ++r) {
    on_path[r] = 1;
    dfs(dfs, r, r, 1);
    on_path[r] = 0;
  }
  return best;
}

}  // namespace mlcr::oracle

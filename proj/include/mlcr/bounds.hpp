#pragma once

// Lower and upper bounds on the multi-layer cop number: existential closure,
// the clique condition, multi-layer dominating sets and treewidth.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mlcr/core.hpp"
#include "mlcr/rng.hpp"

namespace mlcr {

class EnumerationBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kEnumerationBudget = 1e8;

/// Binomial coefficient as a double (saturates gracefully for huge values).
inline double binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (std::uint64_t i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  return out;
}

namespace detail {

/// Calls fn(indices) for every strictly increasing size-k tuple over [0, m).
/// Stops early when fn returns false; returns whether it ran to completion.
template <class Fn>
bool for_each_combination(std::size_t m, std::size_t k, Fn&& fn) {
  if (k > m) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(idx)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Existential closure

/// Exact (1,k)-multi-layer existential closure test. Cop sets of every size
/// up to k are tried, since several cops may share a vertex and layer.
inline bool mec_check(const MultiLayerGraph& g, std::uint32_t k) {
  const std::size_t n = g.num_vertices();
  const std::size_t tau = g.num_layers();
  const std::size_t pairs = n * tau;
  double work = 0;
  for (std::uint32_t s = 1; s <= k; ++s) work += binomial(pairs, s) * static_cast<double>(n);
  if (work > kEnumerationBudget) throw EnumerationBudgetExceeded("mec_check enumeration exceeds budget");
  if (n == 0) return false;

  std::vector<LayerView> views;
  for (std::size_t i = 0; i < tau; ++i) views.push_back(g.layer_view(i));
  const LayerView robber = g.robber_view();

  std::vector<char> in_union(n), threatened(n);
  auto closed_ok = [&](const std::vector<std::size_t>& chosen) {
    std::fill(in_union.begin(), in_union.end(), 0);
    std::fill(threatened.begin(), threatened.end(), 0);
    for (auto p : chosen) {
      const Vertex v = static_cast<Vertex>(p % n);
      in_union[v] = 1;
      for (Vertex x : views[p / n].neighbors(v)) threatened[x] = 1;
    }
    bool any_outside = false;
    for (Vertex v = 0; v < n; ++v) {
      if (in_union[v]) continue;
      any_outside = true;
      bool escape = false;
      for (Vertex x : robber.neighbors(v))
        if (!in_union[x] && !threatened[x]) {
          escape = true;
          break;
        }
      if (!escape) return false;
    }
    return any_outside;
  };
  for (std::uint32_t s = 1; s <= k; ++s)
    if (!detail::for_each_combination(pairs, s, closed_ok)) return false;
  return true;
}

/// Largest k <= k_max for which mec_check holds (0 if none).
inline std::uint32_t mec_lower_bound(const MultiLayerGraph& g, std::uint32_t k_max) {
  std::uint32_t best = 0;
  for (std::uint32_t k = 1; k <= k_max; ++k) {
    if (!mec_check(g, k)) break;
    best = k;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Clique condition

inline std::size_t max_layer_degree(const MultiLayerGraph& g) {
  std::size_t best = 0;
  for (const auto& layer : g.layers()) best = std::max(best, max_degree(g.num_vertices(), layer));
  return best;
}

enum class CliqueLbMethod { Certificate, Exact, Failed };

struct CliqueLbResult {
  bool holds = false;
  CliqueLbMethod method = CliqueLbMethod::Failed;
};

/// For every placement of k cops and every robber vertex u outside it, the
/// closed neighbourhoods of the cops plus u miss some vertex.
inline CliqueLbResult clique_lb(const MultiLayerGraph& g, std::uint32_t k) {
  if (g.robber_spec() != RobberSpec::Complete) throw GraphError("clique_lb_check needs a COMPLETE robber layer");
  const std::size_t n = g.num_vertices();
  if (k >= n) return {false, CliqueLbMethod::Exact};
  const std::size_t delta = max_layer_degree(g);
  if (1 + k + k * (delta + 1) < n) return {true, CliqueLbMethod::Certificate};

  const std::size_t pairs = n * g.num_layers();
  if (binomial(pairs, k) * static_cast<double>(k * (delta + 1)) > kEnumerationBudget) return {false, CliqueLbMethod::Failed};
  std::vector<LayerView> views;
  for (std::size_t i = 0; i < g.num_layers(); ++i) views.push_back(g.layer_view(i));
  std::vector<char> covered(n);
  // Covering grows with the cop set, so size-k sets are the worst case. The
  // condition fails as soon as fewer than two vertices stay uncovered: a
  // missing vertex is never a cop position, so the robber can stand on it.
  const bool ok = detail::for_each_combination(pairs, k, [&](const std::vector<std::size_t>& chosen) {
    std::fill(covered.begin(), covered.end(), 0);
    std::size_t count = 0;
    auto mark = [&](Vertex x) {
      if (!covered[x]) {
        covered[x] = 1;
        ++count;
      }
    };
    for (auto p : chosen) {
      const Vertex v = static_cast<Vertex>(p % n);
      mark(v);
      for (Vertex x : views[p / n].neighbors(v)) mark(x);
    }
    return count + 2 <= n;
  });
  return {ok, CliqueLbMethod::Exact};
}

inline bool clique_lb_check(const MultiLayerGraph& g, std::uint32_t k) { return clique_lb(g, k).holds; }

// ---------------------------------------------------------------------------
// Multi-layer dominating sets

struct VertexLayer {
  Vertex vertex = 0;
  std::uint32_t layer = 0;
  auto operator<=>(const VertexLayer&) const = default;
};

struct DominatingSet {
  std::vector<VertexLayer> pairs;
  std::size_t size() const { return pairs.size(); }
};

inline bool is_dominating(const MultiLayerGraph& g, const DominatingSet& d) {
  std::vector<char> covered(g.num_vertices(), 0);
  std::vector<std::optional<LayerView>> views(g.num_layers());
  for (const auto& [v, layer] : d.pairs) {
    if (v >= g.num_vertices() || layer >= g.num_layers()) return false;
    if (!views[layer]) views[layer] = g.layer_view(layer);
    covered[v] = 1;
    for (Vertex x : views[layer]->neighbors(v)) covered[x] = 1;
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

inline void write_domset(const DominatingSet& d, std::ostream& out) {
  out << "DOMSET " << d.size() << '\n';
  for (const auto& [v, layer] : d.pairs) out << v << ' ' << layer + 1 << '\n';
}

namespace detail {

/// Closed neighbourhood of each (vertex, layer) pair, pairs in vertex-major order.
inline std::vector<std::pair<VertexLayer, std::vector<Vertex>>> pair_coverage(const MultiLayerGraph& g) {
  std::vector<LayerView> views;
  for (std::size_t i = 0; i < g.num_layers(); ++i) views.push_back(g.layer_view(i));
  std::vector<std::pair<VertexLayer, std::vector<Vertex>>> out;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    for (std::uint32_t i = 0; i < g.num_layers(); ++i) {
      std::vector<Vertex> cov{v};
      for (Vertex x : views[i].neighbors(v)) cov.push_back(x);
      out.push_back({{v, i}, std::move(cov)});
    }
  return out;
}

}  // namespace detail

/// Pair covering most uncovered vertices at each step; ties by (vertex, layer).
inline DominatingSet domset_greedy(const MultiLayerGraph& g) {
  const auto cov = detail::pair_coverage(g);
  std::vector<char> covered(g.num_vertices(), 0);
  std::size_t remaining = g.num_vertices();
  DominatingSet d;
  while (remaining > 0) {
    std::size_t best = 0, best_gain = 0;
    for (std::size_t p = 0; p < cov.size(); ++p) {
      std::size_t gain = 0;
      for (Vertex x : cov[p].second) gain += covered[x] == 0;
      if (gain > best_gain) {
        best_gain = gain;
        best = p;
      }
    }
    d.pairs.push_back(cov[best].first);
    for (Vertex x : cov[best].second) {
      if (!covered[x]) --remaining;
      covered[x] = 1;
    }
  }
  return d;
}

/// Minimum dominating set by branch and bound, nullopt when larger than size_cap.
inline std::optional<DominatingSet> domset_exact(const MultiLayerGraph& g, std::size_t size_cap) {
  const std::size_t n = g.num_vertices();
  if (n > 64) throw EnumerationBudgetExceeded("domset_exact supports at most 64 vertices");
  if (n == 0) return DominatingSet{};
  using Mask = std::uint64_t;
  const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;

  // One representative per distinct coverage mask, dropping dominated masks.
  std::vector<std::pair<Mask, VertexLayer>> sets;
  for (const auto& [pair, cov] : detail::pair_coverage(g)) {
    Mask m = 0;
    for (Vertex x : cov) m |= Mask{1} << x;
    sets.push_back({m, pair});
  }
  std::vector<std::pair<Mask, VertexLayer>> kept;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < sets.size() && !dominated; ++j) {
      if (i == j) continue;
      const Mask a = sets[i].first, b = sets[j].first;
      dominated = (a & ~b) == 0 && (a != b || j < i);
    }
    if (!dominated) kept.push_back(sets[i]);
  }
  std::vector<std::vector<std::size_t>> covering(n);
  for (std::size_t s = 0; s < kept.size(); ++s)
    for (Vertex v = 0; v < n; ++v)
      if (kept[s].first >> v & 1) covering[v].push_back(s);
  int max_cover = 0;
  for (const auto& s : kept) max_cover = std::max(max_cover, std::popcount(s.first));

  // The greedy size bounds the search; equal or smaller solutions are kept.
  std::size_t bound = domset_greedy(g).size() + 1;
  std::vector<std::size_t> best, chosen;

  auto search = [&](auto&& self, Mask covered) -> void {
    if (covered == all) {
      if (chosen.size() < bound) {
        best = chosen;
        bound = chosen.size();
      }
      return;
    }
    const int missing = std::popcount(all & ~covered);
    if (chosen.size() + static_cast<std::size_t>((missing + max_cover - 1) / max_cover) >= bound) return;
    // Branch on the uncovered vertex with the fewest options.
    Vertex pick = 0;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (Vertex v = 0; v < n; ++v)
      if (!(covered >> v & 1) && covering[v].size() < fewest) {
        fewest = covering[v].size();
        pick = v;
      }
    for (std::size_t s : covering[pick]) {
      chosen.push_back(s);
      self(self, covered | kept[s].first);
      chosen.pop_back();
    }
  };
  search(search, 0);

  DominatingSet d;
  for (auto s : best) d.pairs.push_back(kept[s].second);
  std::sort(d.pairs.begin(), d.pairs.end());
  if (d.size() > size_cap) return std::nullopt;
  return d;
}

/// Value of nτ/(τ+δ)·(ln((τ+δ)/τ)+1).
inline double domset_bound(std::size_t n, std::size_t tau, std::size_t delta) {
  const double t = static_cast<double>(tau), s = static_cast<double>(tau + delta);
  return static_cast<double>(n) * t / s * (std::log(s / t) + 1.0);
}

inline double domset_probability(std::size_t tau, std::size_t delta) {
  const double s = static_cast<double>(tau + delta);
  return std::log(s / static_cast<double>(tau)) / s;
}

/// Random pairs with probability ln((τ+δ)/τ)/(τ+δ), then undominated vertices
/// are added on layer 1.
inline DominatingSet domset_randomized(const MultiLayerGraph& g, std::uint64_t seed) {
  const std::size_t delta = ml_min_degree(g);
  if (delta < 1) throw GraphError("domset_randomized needs minimum multi-layer degree at least 1");
  const double p = domset_probability(g.num_layers(), delta);
  Rng rng = make_rng(seed);
  DominatingSet d;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    for (std::uint32_t i = 0; i < g.num_layers(); ++i)
      if (bernoulli(rng, p)) d.pairs.push_back({v, i});
  std::vector<char> covered(g.num_vertices(), 0);
  std::vector<LayerView> views;
  for (std::size_t i = 0; i < g.num_layers(); ++i) views.push_back(g.layer_view(i));
  for (const auto& [v, layer] : d.pairs) {
    covered[v] = 1;
    for (Vertex x : views[layer].neighbors(v)) covered[x] = 1;
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (!covered[v]) d.pairs.push_back({v, 0});
  return d;
}

// ---------------------------------------------------------------------------
// Edge probability for random layers

/// Solves 1 − (1 − p*/τ)^τ = p for p*.
inline double pstar(double p, std::size_t tau) {
  if (p < 0.0 || p > 1.0) throw std::domain_error("pstar needs 0 <= p <= 1");
  if (tau < 1) throw std::domain_error("pstar needs tau >= 1");
  const double t = static_cast<double>(tau);
  return -t * std::expm1(std::log1p(-p) / t);
}

// ---------------------------------------------------------------------------
// Tree decompositions

struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> tree;

  std::size_t max_bag() const {
    std::size_t best = 0;
    for (const auto& b : bags) best = std::max(best, b.size());
    return best;
  }
  std::size_t width() const { return bags.empty() ? 0 : max_bag() - 1; }
};

inline void write_decomposition(const TreeDecomposition& td, std::ostream& out) {
  out << "TD " << td.bags.size() << ' ' << td.width() << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "BAG " << i;
    for (Vertex v : td.bags[i]) out << ' ' << v;
    out << '\n';
  }
  for (const auto& [a, b] : td.tree) out << "TREE " << a << ' ' << b << '\n';
}

inline bool td_validate(const TreeDecomposition& td, std::size_t n, const EdgeList& edges) {
  const std::size_t m = td.bags.size();
  if (m == 0) return n == 0;
  if (td.tree.size() + 1 != m) return false;
  EdgeList tree_edges;
  for (const auto& [a, b] : td.tree) {
    if (a >= m || b >= m || a == b) return false;
    tree_edges.emplace_back(a, b);
  }
  const LayerView tree(m, canonical(tree_edges));
  if (!tree.connected()) return false;

  std::vector<std::vector<std::uint32_t>> holders(n);
  std::vector<std::vector<char>> in_bag(m, std::vector<char>(n, 0));
  for (std::uint32_t i = 0; i < m; ++i)
    for (Vertex v : td.bags[i]) {
      if (v >= n) return false;
      if (!in_bag[i][v]) holders[v].push_back(i);
      in_bag[i][v] = 1;
    }
  for (Vertex v = 0; v < n; ++v) {
    if (holders[v].empty()) return false;
    // Bags holding v must induce a connected subtree.
    std::vector<char> seen(m, 0);
    std::vector<std::uint32_t> stack{holders[v][0]};
    seen[holders[v][0]] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const auto b = stack.back();
      stack.pop_back();
      for (Vertex c : tree.neighbors(b))
        if (!seen[c] && in_bag[c][v]) {
          seen[c] = 1;
          ++reached;
          stack.push_back(c);
        }
    }
    if (reached != holders[v].size()) return false;
  }
  for (const Edge& e : edges) {
    if (e.v >= n) return false;
    bool found = false;
    for (std::uint32_t i = 0; i < m && !found; ++i) found = in_bag[i][e.u] && in_bag[i][e.v];
    if (!found) return false;
  }
  return true;
}

/// Decomposition induced by eliminating vertices in `order`.
inline TreeDecomposition decomposition_from_order(std::size_t n, const EdgeList& edges, const std::vector<Vertex>& order) {
  std::vector<std::set<Vertex>> adj(n);
  for (const Edge& e : edges) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  std::vector<std::uint32_t> pos(n);
  for (std::uint32_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  TreeDecomposition td;
  td.bags.resize(n);
  std::vector<std::optional<std::uint32_t>> parent(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const Vertex v = order[i];
    std::vector<Vertex> later;
    for (Vertex w : adj[v])
      if (pos[w] > i) later.push_back(w);
    for (std::size_t a = 0; a < later.size(); ++a)
      for (std::size_t b = a + 1; b < later.size(); ++b) {
        adj[later[a]].insert(later[b]);
        adj[later[b]].insert(later[a]);
      }
    td.bags[i] = later;
    td.bags[i].push_back(v);
    std::sort(td.bags[i].begin(), td.bags[i].end());
    if (!later.empty()) {
      const Vertex next = *std::min_element(later.begin(), later.end(), [&](Vertex a, Vertex b) { return pos[a] < pos[b]; });
      parent[i] = pos[next];
    }
  }
  // Components of the elimination forest hang off the last bag.
  for (std::uint32_t i = 0; i + 1 < n; ++i) td.tree.push_back({i, parent[i].value_or(static_cast<std::uint32_t>(n - 1))});
  return td;
}

/// Exact treewidth via the subset recurrence TW(S) = min_v max(TW(S−v), |Q(S−v, v)|).
inline std::pair<std::size_t, TreeDecomposition> treewidth_exact_small(std::size_t n, const EdgeList& edges) {
  if (n > 12) throw EnumerationBudgetExceeded("treewidth_exact_small supports at most 12 vertices");
  if (n == 0) return {0, {}};
  const LayerView view(n, edges);
  const std::uint32_t full = (1u << n) - 1;

  // |Q(S, v)|: vertices outside S ∪ {v} reachable from v through S.
  auto q_size = [&](std::uint32_t s, Vertex v) {
    std::uint32_t seen = 1u << v;
    std::vector<Vertex> stack{v};
    int count = 0;
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : view.neighbors(x)) {
        if (seen >> y & 1) continue;
        seen |= 1u << y;
        if (s >> y & 1) stack.push_back(y);
        else ++count;
      }
    }
    return count;
  };

  std::vector<int> tw(full + 1, std::numeric_limits<int>::max());
  std::vector<std::int8_t> last(full + 1, -1);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    for (Vertex v = 0; v < n; ++v) {
      if (!(s >> v & 1)) continue;
      const std::uint32_t rest = s & ~(1u << v);
      const int val = std::max(tw[rest], q_size(rest, v));
      if (val < tw[s]) {
        tw[s] = val;
        last[s] = static_cast<std::int8_t>(v);
      }
    }
  }
  std::vector<Vertex> order(n);
  std::uint32_t s = full;
  for (std::size_t i = n; i-- > 0;) {
    order[i] = static_cast<Vertex>(last[s]);
    s &= ~(1u << last[s]);
  }
  auto td = decomposition_from_order(n, edges, order);
  return {static_cast<std::size_t>(std::max(tw[full], 0)), std::move(td)};
}

/// Cops certified by the bag-sweep strategy: the largest bag size.
inline std::size_t treewidth_cop_bound(const MultiLayerGraph& g, const TreeDecomposition& td) {
  for (std::size_t i = 0; i < g.num_layers(); ++i)
    if (!g.layer_view(i).connected()) throw GraphError("treewidth_cop_bound needs every cop layer connected");
  if (!td_validate(td, g.num_vertices(), g.flattened())) throw GraphError("decomposition is not valid for the flattened graph");
  if (g.robber_spec() != RobberSpec::Union && !td_validate(td, g.num_vertices(), g.robber_edges()))
    throw GraphError("decomposition is not valid for the robber layer");
  return td.max_bag();
}

}  // namespace mlcr

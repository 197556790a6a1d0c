#pragma once

// Constructors for the multi-layer graph families, each with a validator that
// produces a ConstructionReport.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mlcr/core.hpp"
#include "mlcr/rng.hpp"

namespace mlcr {

struct InvariantCheck {
  std::string name;
  bool pass = false;
  std::string measured;
  /// Soft checks are reported but do not make generation fail.
  bool hard = true;
};

struct ConstructionReport {
  std::string family;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<bool> layer_connected;
  std::vector<std::size_t> layer_min_degree, layer_max_degree;
  std::vector<InvariantCheck> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.pass || !c.hard; });
  }
  const InvariantCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  void add(std::string name, bool pass, std::string measured, bool hard = true) {
    checks.push_back({std::move(name), pass, std::move(measured), hard});
  }
};

inline void write_report(const ConstructionReport& r, std::ostream& out) {
  out << "FAMILY " << r.family << '\n';
  for (const auto& [k, v] : r.params) out << "PARAM " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < r.layer_connected.size(); ++i)
    out << "LAYER " << i + 1 << " connected=" << (r.layer_connected[i] ? "yes" : "no") << " min_degree=" << r.layer_min_degree[i]
        << " max_degree=" << r.layer_max_degree[i] << '\n';
  for (const auto& c : r.checks)
    out << "CHECK " << c.name << ' ' << (c.pass ? "PASS" : "FAIL") << (c.hard ? "" : " (soft)") << " measured=" << c.measured
        << '\n';
  out << "STATUS " << (r.ok() ? "OK" : "INVALID") << '\n';
}

class ConstructionError : public GraphError {
 public:
  ConstructionError(const std::string& what, ConstructionReport report)
      : GraphError(what), report_(std::move(report)) {}
  const ConstructionReport& report() const noexcept { return report_; }

 private:
  ConstructionReport report_;
};

namespace detail {

inline ConstructionReport base_report(const MultiLayerGraph& g, std::string family) {
  ConstructionReport r;
  r.family = std::move(family);
  for (std::size_t i = 0; i < g.num_layers(); ++i) {
    r.layer_connected.push_back(g.layer_view(i).connected());
    r.layer_min_degree.push_back(min_degree(g.num_vertices(), g.layer(i)));
    r.layer_max_degree.push_back(max_degree(g.num_vertices(), g.layer(i)));
  }
  return r;
}

inline void require(const ConstructionReport& r) {
  if (!r.ok()) {
    std::string failed;
    for (const auto& c : r.checks)
      if (!c.pass && c.hard) failed += (failed.empty() ? "" : ", ") + c.name;
    throw ConstructionError(r.family + " construction invariant failed: " + failed, r);
  }
}

template <class T>
std::string str(const T& v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Simple base graphs

inline EdgeList gen_petersen() {
  EdgeList e;
  for (Vertex i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return canonical(e);
}

inline EdgeList gen_gnp(std::size_t n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw GraphError("gnp needs 0 <= p <= 1");
  Rng rng = make_rng(seed);
  EdgeList e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (bernoulli(rng, p)) e.emplace_back(u, v);
  return e;
}

/// Uniform simple d-regular graph by the configuration model with rejection.
inline EdgeList gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed, std::size_t max_tries = 10000) {
  if ((n * d) % 2 != 0) throw GraphError("random regular graph needs n*d even");
  if (d >= n && n > 0) throw GraphError("random regular graph needs d < n");
  Rng rng = make_rng(seed);
  std::vector<Vertex> points;
  for (Vertex v = 0; v < n; ++v) points.insert(points.end(), d, v);
  for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
    shuffle(points, rng);
    EdgeList e;
    bool simple = true;
    for (std::size_t i = 0; i < points.size() && simple; i += 2) {
      if (points[i] == points[i + 1]) simple = false;
      else e.emplace_back(points[i], points[i + 1]);
    }
    if (!simple) continue;
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) continue;
    return e;
  }
  throw GraphError("random regular graph sampling failed after " + std::to_string(max_tries) + " tries");
}

// ---------------------------------------------------------------------------
// Grid with horizontal and vertical layers

/// Row i, column j (both 1-based) of the n x n grid.
inline Vertex grid_vertex(std::size_t n, std::size_t i, std::size_t j) { return static_cast<Vertex>((i - 1) * n + (j - 1)); }

inline std::pair<std::size_t, std::size_t> grid_coords(std::size_t n, Vertex v) { return {v / n + 1, v % n + 1}; }

inline ConstructionReport validate_grid(const MultiLayerGraph& g, std::size_t n) {
  auto r = detail::base_report(g, "grid");
  r.params.push_back({"n", std::to_string(n)});
  r.add("vertex_count", g.num_vertices() == n * n, std::to_string(g.num_vertices()));
  r.add("two_layers", g.num_layers() == 2, std::to_string(g.num_layers()));
  if (g.num_layers() != 2) return r;
  r.add("layers_connected", r.layer_connected[0] && r.layer_connected[1],
        std::to_string(r.layer_connected[0]) + "," + std::to_string(r.layer_connected[1]));
  // Each layer has n(n-1) straight edges plus one boundary edge per gap between rows (columns).
  const std::size_t expected = n * (n - 1) + (n - 1);
  r.add("layer_sizes", g.layer(0).size() == expected && g.layer(1).size() == expected,
        std::to_string(g.layer(0).size()) + "," + std::to_string(g.layer(1).size()));
  bool boundary_ok = true;
  auto has = [&](std::size_t layer, Vertex a, Vertex b) {
    return std::binary_search(g.layer(layer).begin(), g.layer(layer).end(), Edge(a, b));
  };
  for (std::size_t i = 1; i < n; ++i) {
    const bool even = i % 2 == 0;
    boundary_ok = boundary_ok && has(0, grid_vertex(n, i, 1), grid_vertex(n, i + 1, 1)) == even &&
                  has(0, grid_vertex(n, i, n), grid_vertex(n, i + 1, n)) == !even &&
                  has(1, grid_vertex(n, 1, i), grid_vertex(n, 1, i + 1)) == even &&
                  has(1, grid_vertex(n, n, i), grid_vertex(n, n, i + 1)) == !even;
  }
  r.add("boundary_edges", boundary_ok, boundary_ok ? "parity rules hold" : "mismatch");
  r.add("robber_union", g.robber_spec() == RobberSpec::Union, std::string(to_string(g.robber_spec())));
  return r;
}

inline MultiLayerGraph gen_grid(std::size_t n) {
  if (n < 2) throw GraphError("grid needs n >= 2");
  EdgeList h, v;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j < n; ++j) {
      h.emplace_back(grid_vertex(n, i, j), grid_vertex(n, i, j + 1));
      v.emplace_back(grid_vertex(n, j, i), grid_vertex(n, j + 1, i));
    }
  for (std::size_t i = 1; i < n; ++i) {
    if (i % 2 == 0) {
      h.emplace_back(grid_vertex(n, i, 1), grid_vertex(n, i + 1, 1));
      v.emplace_back(grid_vertex(n, 1, i), grid_vertex(n, 1, i + 1));
    } else {
      h.emplace_back(grid_vertex(n, i, n), grid_vertex(n, i + 1, n));
      v.emplace_back(grid_vertex(n, n, i), grid_vertex(n, n, i + 1));
    }
  }
  MultiLayerGraph g(n * n, {canonical(h), canonical(v)}, RobberSpec::Union);
  detail::require(validate_grid(g, n));
  return g;
}

// ---------------------------------------------------------------------------
// Two layers with large single-layer cop numbers but multi-layer cop number 2

/// Requires girth >= 5 and minimum degree >= c of the base graph H on
/// vertices 0..nh-1. Vertex v_i of the result is index i-1; v_n is the hub.
inline MultiLayerGraph gen_min_counterexample(std::size_t nh, const EdgeList& h, std::size_t c) {
  const auto gir = girth(nh, h);
  if (gir && *gir < 5) throw GraphError("base graph has girth " + std::to_string(*gir) + " < 5");
  if (min_degree(nh, h) < c) throw GraphError("base graph has minimum degree below " + std::to_string(c));
  if (nh < 2) throw GraphError("base graph needs at least two vertices");
  const std::size_t n = 2 * nh - 1;
  auto v = [](std::size_t i) { return static_cast<Vertex>(i - 1); };
  EdgeList e1, e2;
  for (const Edge& e : h) {
    const std::size_t i = e.u + 1, j = e.v + 1;
    e1.emplace_back(v(i), v(j));
    e2.emplace_back(v(2 * nh - i), v(2 * nh - j));
  }
  for (std::size_t i = nh + 1; i <= n; ++i) e1.emplace_back(v(nh), v(i));
  for (std::size_t i = 1; i < nh; ++i) e2.emplace_back(v(nh), v(i));
  MultiLayerGraph g(n, {canonical(e1), canonical(e2)}, RobberSpec::Union);
  auto r = detail::base_report(g, "min_counterexample");
  r.params.push_back({"base_vertices", std::to_string(nh)});
  r.params.push_back({"c", std::to_string(c)});
  r.add("layers_connected", r.layer_connected[0] && r.layer_connected[1], "");
  r.add("layer_sizes", g.layer(0).size() == h.size() + nh - 1 && g.layer(1).size() == h.size() + nh - 1,
        std::to_string(g.layer(0).size()));
  detail::require(r);
  return g;
}

inline MultiLayerGraph gen_min_counterexample_petersen() { return gen_min_counterexample(10, gen_petersen(), 3); }

// ---------------------------------------------------------------------------
// Slices construction

/// Dense indexing of (x, y, z): slice x occupies a block of 1 + k(5k+2)
/// vertices; local index 0 is the hub (x, inf, inf) and (y, z) maps to
/// 1 + (y-1)(5k+2) + (z-1).
struct SlicesLayout {
  std::size_t k = 1;

  std::size_t slices() const { return 3 * k; }
  std::size_t column() const { return 5 * k + 2; }
  std::size_t block() const { return 1 + k * column(); }
  std::size_t num_vertices() const { return slices() * block(); }

  Vertex hub(std::size_t x) const { return static_cast<Vertex>((x - 1) * block()); }
  Vertex at(std::size_t x, std::size_t y, std::size_t z) const {
    return static_cast<Vertex>((x - 1) * block() + 1 + (y - 1) * column() + (z - 1));
  }

  struct Coord {
    std::size_t x = 0, y = 0, z = 0;  // y = z = 0 for the hub
    bool is_hub() const { return y == 0; }
  };
  Coord coord(Vertex v) const {
    Coord c;
    c.x = v / block() + 1;
    const std::size_t local = v % block();
    if (local == 0) return c;
    c.y = (local - 1) / column() + 1;
    c.z = (local - 1) % column() + 1;
    return c;
  }
  bool is_ring(Vertex v) const {
    const auto c = coord(v);
    return !c.is_hub() && c.z > 5 * k;
  }
};

inline ConstructionReport validate_slices(const MultiLayerGraph& g, std::size_t k) {
  const SlicesLayout L{k};
  auto r = detail::base_report(g, "slices");
  r.params.push_back({"k", std::to_string(k)});
  r.add("vertex_count", g.num_vertices() == L.num_vertices(), std::to_string(g.num_vertices()));
  r.add("layers_connected", r.layer_connected.size() == 2 && r.layer_connected[0] && r.layer_connected[1], "");
  r.add("robber_connected", g.robber_view().connected(), "");
  // Every slice x >= 2 induces the same robber-layer graph in local coordinates.
  std::vector<EdgeList> local(L.slices() + 1);
  for (const Edge& e : g.robber_edges()) {
    const auto a = L.coord(e.u), b = L.coord(e.v);
    if (a.x == b.x) local[a.x].emplace_back(e.u % L.block(), e.v % L.block());
  }
  bool iso = true;
  for (std::size_t x = 2; x <= L.slices(); ++x) iso = iso && canonical(local[x]) == canonical(local[2]);
  r.add("slices_isomorphic", iso, "");
  return r;
}

inline MultiLayerGraph gen_slices(std::size_t k) {
  if (k < 1) throw GraphError("slices construction needs k >= 1");
  const SlicesLayout L{k};
  EdgeList c1, c2;
  auto both = [&](Vertex a, Vertex b) {
    c1.emplace_back(a, b);
    c2.emplace_back(a, b);
  };
  const std::size_t K = 5 * k;
  for (std::size_t x = 1; x <= L.slices(); ++x) {
    for (std::size_t y = 1; y <= k; ++y) {
      // Hub to path start; present in the drawing, needed for connectivity.
      both(L.hub(x), L.at(x, y, 1));
      for (std::size_t z = 1; z < K; ++z) both(L.at(x, y, z), L.at(x, y, z + 1));
      c1.emplace_back(L.at(x, y, K + 1), L.at(x, y, K + 2));
      c2.emplace_back(L.at(x, y, K + 1), L.at(x, y % k + 1, K + 2));
      (x % 2 == 1 ? c1 : c2).emplace_back(L.at(x, y, K), L.at(x, y, K + 1));
    }
  }
  for (std::size_t x = 1; x < L.slices(); ++x) {
    both(L.hub(x), L.hub(x + 1));
    for (std::size_t y = 1; y <= k; ++y)
      for (std::size_t z = 1; z <= 2; ++z) (x % 2 == 1 ? c1 : c2).emplace_back(L.at(x, y, K + z), L.at(x + 1, y, K + z));
  }
  for (std::size_t y = 1; y <= k; ++y)
    for (std::size_t z = 1; z <= 2; ++z) c2.emplace_back(L.hub(1), L.at(1, y, K + z));
  MultiLayerGraph g(L.num_vertices(), {canonical(c1), canonical(c2)}, RobberSpec::Union);
  detail::require(validate_slices(g, k));
  return g;
}

/// Subgraph induced by slice x of `edges`, relabelled to local indices.
inline EdgeList slice_edges(const SlicesLayout& L, const EdgeList& edges, std::size_t x) {
  EdgeList out;
  for (const Edge& e : edges) {
    const auto a = L.coord(e.u), b = L.coord(e.v);
    if (a.x == x && b.x == x) out.emplace_back(e.u % L.block(), e.v % L.block());
  }
  return canonical(out);
}

// ---------------------------------------------------------------------------
// Even cycle split into two perfect matchings

/// Vertices 1..2n of the cycle are indices 0..2n-1.
inline MultiLayerGraph gen_cycle_matchings(std::size_t n) {
  if (n < 2) throw GraphError("cycle matchings need n >= 2");
  EdgeList c1, c2;
  for (std::size_t i = 1; i <= n; ++i) c1.emplace_back(static_cast<Vertex>(2 * i - 2), static_cast<Vertex>(2 * i - 1));
  c2.emplace_back(static_cast<Vertex>(2 * n - 1), 0);
  for (std::size_t i = 1; i < n; ++i) c2.emplace_back(static_cast<Vertex>(2 * i - 1), static_cast<Vertex>(2 * i));
  MultiLayerGraph g(2 * n, {canonical(c1), canonical(c2)}, RobberSpec::Union);
  auto r = detail::base_report(g, "cycle_matchings");
  const auto flat = g.flattened();
  r.add("flatten_is_cycle", flat.size() == 2 * n && min_degree(2 * n, flat) == 2 && LayerView(2 * n, flat).connected(), "");
  r.add("perfect_matchings", max_degree(2 * n, g.layer(0)) == 1 && max_degree(2 * n, g.layer(1)) == 1 &&
                                 min_degree(2 * n, g.layer(0)) == 1 && min_degree(2 * n, g.layer(1)) == 1, "");
  detail::require(r);
  return g;
}

// ---------------------------------------------------------------------------
// Dominating set reduction

/// One star layer per vertex u of G, joining u to its neighbours.
inline MultiLayerGraph gen_domset_reduction(std::size_t n, const EdgeList& edges) {
  if (n == 0) throw GraphError("domset reduction needs at least one vertex");
  const LayerView view(n, canonical(edges));
  std::vector<EdgeList> layers;
  for (Vertex u = 0; u < n; ++u) {
    EdgeList star;
    for (Vertex w : view.neighbors(u)) star.emplace_back(u, w);
    layers.push_back(canonical(star));
  }
  return MultiLayerGraph(n, std::move(layers), RobberSpec::Union);
}

// ---------------------------------------------------------------------------
// Clique partition from the polygon colouring

inline std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

/// Maximum layer degree the odd/even construction can guarantee.
inline std::size_t soifer_guaranteed_degree(std::size_t n, std::size_t tau) {
  if (n % 2 == 0) return ceil_div(n - 1, tau);
  return std::max(ceil_div(n - 1, tau), ceil_div(n - 2, tau) + 1);
}

inline ConstructionReport validate_soifer(const MultiLayerGraph& g, std::size_t n, std::size_t tau) {
  auto r = detail::base_report(g, "soifer");
  r.params.push_back({"n", std::to_string(n)});
  r.params.push_back({"tau", std::to_string(tau)});
  r.add("layers_connected", std::all_of(r.layer_connected.begin(), r.layer_connected.end(), [](bool b) { return b; }), "");
  r.add("union_is_clique", g.flattened() == complete_edges(n), std::to_string(g.flattened().size()));
  std::size_t total = 0;
  for (const auto& layer : g.layers()) total += layer.size();
  r.add("layers_disjoint", total == n * (n - 1) / 2, std::to_string(total));
  const std::size_t maxdeg = r.layer_max_degree.empty() ? 0 : *std::max_element(r.layer_max_degree.begin(), r.layer_max_degree.end());
  r.add("max_degree_guaranteed", maxdeg <= soifer_guaranteed_degree(n, tau),
        std::to_string(maxdeg) + "<=" + std::to_string(soifer_guaranteed_degree(n, tau)));
  r.add("max_degree_ceil_n_over_tau", maxdeg <= ceil_div(n, tau), std::to_string(maxdeg) + "<=" + std::to_string(ceil_div(n, tau)),
        /*hard=*/false);
  r.add("robber_complete", g.robber_spec() == RobberSpec::Complete, "");
  return r;
}

/// Partition of K_n into tau connected layers; needs 1 <= tau < floor(n/2).
inline MultiLayerGraph gen_soifer(std::size_t n, std::size_t tau) {
  if (tau < 1 || tau >= n / 2) throw GraphError("soifer partition needs 1 <= tau < floor(n/2)");
  const std::size_t ell = n / 2;
  const std::size_t m = 2 * ell - 1;  // number of colour classes
  std::vector<EdgeList> layers(tau);
  // Consecutive class intervals; the first (m mod tau) layers take one extra class.
  std::vector<std::size_t> layer_of_class(m);
  for (std::size_t i = 0, c = 0; i < tau; ++i) {
    const std::size_t size = m / tau + (i < m % tau ? 1 : 0);
    for (std::size_t s = 0; s < size; ++s) layer_of_class[c++] = i;
  }
  for (std::size_t i = 0; i < m; ++i) {
    auto& layer = layers[layer_of_class[i]];
    layer.emplace_back(static_cast<Vertex>(m), static_cast<Vertex>(i));
    for (std::size_t j = 1; j < ell; ++j)
      layer.emplace_back(static_cast<Vertex>((i + m - j) % m), static_cast<Vertex>((i + j) % m));
  }
  if (n % 2 == 1) {
    // Extra vertex 2l joins 0..2l-1 in consecutive blocks of floor/ceil(2l/tau).
    const Vertex extra = static_cast<Vertex>(2 * ell);
    const std::size_t others = 2 * ell;
    for (std::size_t i = 0, v = 0; i < tau; ++i) {
      const std::size_t size = others / tau + (i < others % tau ? 1 : 0);
      for (std::size_t s = 0; s < size; ++s) layers[i].emplace_back(extra, static_cast<Vertex>(v++));
    }
  }
  for (auto& layer : layers) layer = canonical(layer);
  MultiLayerGraph g(n, std::move(layers), RobberSpec::Complete);
  detail::require(validate_soifer(g, n, tau));
  return g;
}

// ---------------------------------------------------------------------------
// Random layers whose union is G(n, p)

inline MultiLayerGraph gen_random_layers(std::size_t n, double p, std::size_t tau, std::uint64_t seed,
                                         RobberSpec robber = RobberSpec::Complete) {
  if (p < 0.0 || p > 1.0) throw GraphError("random layers need 0 <= p <= 1");
  if (tau < 1) throw GraphError("random layers need tau >= 1");
  if (robber == RobberSpec::Explicit) throw GraphError("random layers support COMPLETE or UNION robber layers");
  const double q = -std::expm1(std::log1p(-p) / static_cast<double>(tau));
  Rng rng = make_rng(seed);
  std::vector<EdgeList> layers(tau);
  for (auto& layer : layers)
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (bernoulli(rng, q)) layer.emplace_back(u, v);
  return MultiLayerGraph(n, std::move(layers), robber);
}

// ---------------------------------------------------------------------------
// Cops-bane: expander core plus a subdivided star

/// X vertices are 0..N-1, the star centre is N, and interior vertex s (1-based,
/// counted from the centre) of arm a is N + 1 + a*2D + (s-1). Arm a ends at X vertex a.
struct CopsbaneLayout {
  std::size_t N = 0;
  std::size_t D = 0;

  Vertex hub() const { return static_cast<Vertex>(N); }
  std::size_t num_vertices() const { return N + 1 + N * 2 * D; }
  Vertex arm_vertex(std::size_t arm, std::size_t s) const { return static_cast<Vertex>(N + 1 + arm * 2 * D + (s - 1)); }
  bool in_core(Vertex v) const { return v < N; }

  static CopsbaneLayout from_graph(const MultiLayerGraph& g, std::size_t N) {
    if (N == 0 || g.num_vertices() < N + 1 || (g.num_vertices() - N - 1) % (2 * N) != 0)
      throw GraphError("graph does not have cops-bane shape for N = " + std::to_string(N));
    return {N, (g.num_vertices() - N - 1) / (2 * N)};
  }
};

struct CopsbaneResult {
  MultiLayerGraph graph;
  CopsbaneLayout layout;
  ConstructionReport report;
  EdgeList core;                  // E1 ∪ E2
  EdgeList colour1, colour2;      // E1, E2
  double expansion = 0.0;         // exact for N <= 20, else sampled
  bool expansion_heuristic = false;
  std::size_t clustering = 0;     // largest monochromatic component, in vertices
  std::size_t core_diameter = 0;
};

/// min |N(S) \ S| / |S| over 1 <= |S| <= N/2, by exhaustive enumeration.
inline double vertex_expansion_exact(std::size_t n, const EdgeList& edges) {
  if (n > 24) throw GraphError("exact expansion supports at most 24 vertices");
  if (n < 2) return 0.0;
  std::vector<std::uint32_t> nb(n, 0);
  for (const Edge& e : edges) {
    nb[e.u] |= 1u << e.v;
    nb[e.v] |= 1u << e.u;
  }
  double best = std::numeric_limits<double>::infinity();
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t s = 1; s < limit; ++s) {
    const int size = std::popcount(s);
    if (static_cast<std::size_t>(size) > n / 2) continue;
    std::uint32_t out = 0;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) out |= nb[std::countr_zero(rest)];
    out &= ~s;
    best = std::min(best, static_cast<double>(std::popcount(out)) / size);
  }
  return best;
}

/// Upper estimate of vertex expansion from random subsets and BFS balls.
inline double vertex_expansion_sampled(std::size_t n, const EdgeList& edges, std::uint64_t seed, std::size_t samples = 20000) {
  const LayerView view(n, edges);
  Rng rng = make_rng(seed, 0xE);
  double best = std::numeric_limits<double>::infinity();
  std::vector<char> in(n);
  auto eval = [&](const std::vector<Vertex>& set) {
    std::fill(in.begin(), in.end(), 0);
    for (Vertex v : set) in[v] = 1;
    std::size_t out = 0;
    std::vector<char> seen(n, 0);
    for (Vertex v : set)
      for (Vertex w : view.neighbors(v))
        if (!in[w] && !seen[w]) {
          seen[w] = 1;
          ++out;
        }
    best = std::min(best, static_cast<double>(out) / static_cast<double>(set.size()));
  };
  std::vector<Vertex> all(n);
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  for (std::size_t i = 0; i < samples; ++i) {
    const std::size_t size = 1 + uniform_below(rng, n / 2);
    shuffle(all, rng);
    eval(std::vector<Vertex>(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(size)));
  }
  for (Vertex s = 0; s < n; ++s) {
    // BFS prefixes are the usual worst cases for expansion.
    std::vector<Vertex> order;
    std::vector<char> seen(n, 0);
    order.push_back(s);
    seen[s] = 1;
    for (std::size_t h = 0; h < order.size() && order.size() <= n / 2; ++h)
      for (Vertex w : view.neighbors(order[h]))
        if (!seen[w] && order.size() < n / 2) {
          seen[w] = 1;
          order.push_back(w);
        }
    for (std::size_t len = 1; len <= order.size(); ++len) eval(std::vector<Vertex>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(len)));
  }
  return best;
}

/// Largest monochromatic component (vertex count) of a 2-colouring.
inline std::size_t clustering_of(std::size_t n, const EdgeList& edges, const std::vector<std::uint8_t>& colour) {
  std::size_t best = 0;
  for (std::uint8_t c = 0; c < 2; ++c) {
    EdgeList mono;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (colour[i] == c) mono.push_back(edges[i]);
    const LayerView view(n, mono);
    std::vector<std::size_t> size(view.num_components(), 0);
    for (Vertex v = 0; v < n; ++v)
      if (view.degree(v) > 0) ++size[view.component(v)];
    for (auto s : size) best = std::max(best, s);
  }
  return best;
}

/// Local search from several random starts: flip single edges while that
/// lowers (clustering, sum of squared component sizes). Returns the colour of
/// each edge.
inline std::vector<std::uint8_t> low_clustering_colouring(std::size_t n, const EdgeList& edges, Rng& rng,
                                                          std::size_t restarts = 16, std::size_t max_rounds = 200) {
  auto score = [&](const std::vector<std::uint8_t>& col) {
    std::size_t best = 0, squares = 0;
    for (std::uint8_t c = 0; c < 2; ++c) {
      EdgeList mono;
      for (std::size_t i = 0; i < edges.size(); ++i)
        if (col[i] == c) mono.push_back(edges[i]);
      const LayerView view(n, mono);
      std::vector<std::size_t> size(view.num_components(), 0);
      for (Vertex v = 0; v < n; ++v)
        if (view.degree(v) > 0) ++size[view.component(v)];
      for (auto s : size) {
        best = std::max(best, s);
        squares += s * s;
      }
    }
    return std::pair{best, squares};
  };
  std::vector<std::uint8_t> best_colour;
  std::pair<std::size_t, std::size_t> best_score{};
  for (std::size_t start = 0; start < std::max<std::size_t>(restarts, 1); ++start) {
    std::vector<std::uint8_t> colour(edges.size());
    for (auto& c : colour) c = static_cast<std::uint8_t>(uniform_below(rng, 2));
    auto current = score(colour);
    for (std::size_t round = 0; round < max_rounds; ++round) {
      bool improved = false;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        colour[i] ^= 1;
        const auto s = score(colour);
        if (s < current) {
          current = s;
          improved = true;
        } else {
          colour[i] ^= 1;
        }
      }
      if (!improved) break;
    }
    if (best_colour.empty() || current < best_score) {
      best_score = current;
      best_colour = colour;
    }
  }
  return best_colour;
}

inline ConstructionReport validate_copsbane(const CopsbaneResult& c, double alpha, std::size_t clustering_cap) {
  const auto& g = c.graph;
  const auto& L = c.layout;
  auto r = detail::base_report(g, "copsbane");
  r.params.push_back({"N", std::to_string(L.N)});
  r.params.push_back({"alpha", detail::str(alpha)});
  r.params.push_back({"D", std::to_string(L.D)});
  r.add("vertex_count", g.num_vertices() == L.num_vertices(), std::to_string(g.num_vertices()));
  std::vector<std::size_t> deg(L.N, 0);
  for (const Edge& e : c.core) {
    ++deg[e.u];
    ++deg[e.v];
  }
  r.add("core_3_regular", std::all_of(deg.begin(), deg.end(), [](std::size_t d) { return d == 3; }), "");
  r.add(c.expansion_heuristic ? "expansion_sampled_HEURISTIC" : "expansion_exact", c.expansion >= alpha,
        detail::str(c.expansion) + ">=" + detail::str(alpha));
  r.add("clustering", c.clustering <= clustering_cap, std::to_string(c.clustering) + "<=" + std::to_string(clustering_cap));
  // Every arm is a path of exactly 2D+1 edges from the centre to its X vertex.
  const auto star_dist = LayerView(g.num_vertices(), [&] {
                           EdgeList star;
                           for (const Edge& e : g.layer(0))
                             if (!(e.u < L.N && e.v < L.N)) star.push_back(e);
                           return star;
                         }()).distances(L.hub());
  bool arms_ok = true;
  for (std::size_t a = 0; a < L.N; ++a) arms_ok = arms_ok && star_dist[a] == 2 * L.D + 1;
  r.add("arm_length", arms_ok, std::to_string(2 * L.D + 1));
  r.add("robber_is_core", g.robber_spec() == RobberSpec::Explicit && g.explicit_robber_edges() == c.core, "");
  return r;
}

/// Random cubic expander X with a low-clustering 2-edge-colouring, joined to a
/// star whose N arms have 2D+1 edges each. D defaults to twice diam(X).
inline CopsbaneResult gen_copsbane(std::size_t N, double alpha, std::optional<std::size_t> D, std::uint64_t seed,
                                   std::size_t clustering_cap = 2000, std::size_t max_tries = 200) {
  if (N < 8 || N % 2 != 0) throw GraphError("cops-bane needs even N >= 8");
  Rng rng = make_rng(seed, 0xCB);
  for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
    const EdgeList core = gen_random_regular(N, 3, rng());
    const LayerView core_view(N, core);
    if (!core_view.connected()) continue;
    const bool heuristic = N > 20;
    const double expansion = heuristic ? vertex_expansion_sampled(N, core, seed + attempt) : vertex_expansion_exact(N, core);
    if (expansion < alpha) continue;
    const auto colour = low_clustering_colouring(N, core, rng);

    CopsbaneResult res{MultiLayerGraph(1, {EdgeList{}}), {}, {}, core, {}, {}, expansion, heuristic,
                       clustering_of(N, core, colour), diameter(core_view)};
    for (std::size_t i = 0; i < core.size(); ++i) (colour[i] == 0 ? res.colour1 : res.colour2).push_back(core[i]);
    res.layout = {N, D.value_or(2 * res.core_diameter)};
    if (res.layout.D == 0) throw GraphError("cops-bane needs D >= 1");
    const auto& L = res.layout;
    EdgeList star;
    for (std::size_t a = 0; a < N; ++a) {
      star.emplace_back(L.hub(), L.arm_vertex(a, 1));
      for (std::size_t s = 1; s < 2 * L.D; ++s) star.emplace_back(L.arm_vertex(a, s), L.arm_vertex(a, s + 1));
      star.emplace_back(L.arm_vertex(a, 2 * L.D), static_cast<Vertex>(a));
    }
    star = canonical(star);
    res.graph = MultiLayerGraph(L.num_vertices(), {edge_union(res.colour1, star), edge_union(res.colour2, star)},
                                RobberSpec::Explicit, core);
    res.report = validate_copsbane(res, alpha, clustering_cap);
    res.report.params.push_back({"seed", std::to_string(seed)});
    res.report.params.push_back({"core_diameter", std::to_string(res.core_diameter)});
    if (res.clustering > clustering_cap)
      throw ConstructionError("cops-bane colouring exceeds clustering cap, achieved " + std::to_string(res.clustering), res.report);
    detail::require(res.report);
    return res;
  }
  throw GraphError("cops-bane: no connected cubic graph with expansion >= " + detail::str(alpha) + " after " +
                   std::to_string(max_tries) + " tries");
}

}  // namespace mlcr

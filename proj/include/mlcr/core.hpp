#pragma once

// Multi-layer graph data model, basic per-layer graph algorithms and the
// MLG1 text format.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mlcr {

using Vertex = std::uint32_t;

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// Undirected edge stored canonically with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  constexpr Edge() = default;
  constexpr Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

using EdgeList = std::vector<Edge>;

/// Sorts and removes duplicate edges.
inline EdgeList canonical(EdgeList edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

inline EdgeList edge_union(const EdgeList& a, const EdgeList& b) {
  EdgeList out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool edge_subset(const EdgeList& sub, const EdgeList& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

inline EdgeList complete_edges(std::size_t n) {
  EdgeList out;
  out.reserve(n * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) out.emplace_back(u, v);
  return out;
}

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse failure carrying the 1-based line number of the offending line.
class ParseError : public GraphError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

enum class RobberSpec { Union, Complete, Explicit };

inline std::string_view to_string(RobberSpec spec) {
  switch (spec) {
    case RobberSpec::Union: return "UNION";
    case RobberSpec::Complete: return "COMPLETE";
    case RobberSpec::Explicit: return "EXPLICIT";
  }
  return "?";
}

inline std::optional<RobberSpec> robber_spec_from_string(std::string_view s) {
  if (s == "UNION") return RobberSpec::Union;
  if (s == "COMPLETE") return RobberSpec::Complete;
  if (s == "EXPLICIT") return RobberSpec::Explicit;
  return std::nullopt;
}

/// Above this vertex count a COMPLETE robber layer is never materialized.
inline constexpr std::size_t kCompleteMaterializeLimit = 2048;

/// Per-vertex sorted adjacency of one edge set plus its component labelling.
class LayerView {
 public:
  LayerView() = default;
  LayerView(std::size_t n, const EdgeList& edges) : adj_(n), comp_(n, 0) {
    for (const Edge& e : edges) {
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
    label_components();
  }

  static LayerView complete(std::size_t n) {
    LayerView view;
    view.adj_.assign(n, {});
    for (Vertex u = 0; u < n; ++u) {
      view.adj_[u].reserve(n - 1);
      for (Vertex v = 0; v < n; ++v)
        if (v != u) view.adj_[u].push_back(v);
    }
    view.comp_.assign(n, 0);
    view.num_components_ = n == 0 ? 0 : 1;
    return view;
  }

  std::size_t size() const noexcept { return adj_.size(); }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  bool adjacent(Vertex u, Vertex v) const {
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }
  std::uint32_t component(Vertex v) const { return comp_[v]; }
  std::size_t num_components() const noexcept { return num_components_; }
  bool connected() const noexcept { return num_components_ <= 1; }

  /// BFS distances from `source`; kUnreachable marks other components.
  std::vector<std::uint32_t> distances(Vertex source) const {
    std::vector<std::uint32_t> dist(adj_.size(), kUnreachable);
    std::vector<Vertex> queue{source};
    dist[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      for (Vertex y : adj_[x]) {
        if (dist[y] == kUnreachable) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
    return dist;
  }

  std::vector<Vertex> component_members(std::uint32_t label) const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < comp_.size(); ++v)
      if (comp_[v] == label) out.push_back(v);
    return out;
  }

 private:
  void label_components() {
    const std::size_t n = adj_.size();
    constexpr std::uint32_t unset = std::numeric_limits<std::uint32_t>::max();
    comp_.assign(n, unset);
    std::uint32_t next = 0;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
      if (comp_[s] != unset) continue;
      comp_[s] = next;
      stack.push_back(s);
      while (!stack.empty()) {
        const Vertex x = stack.back();
        stack.pop_back();
        for (Vertex y : adj_[x]) {
          if (comp_[y] == unset) {
            comp_[y] = next;
            stack.push_back(y);
          }
        }
      }
      ++next;
    }
    num_components_ = next;
  }

  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint32_t> comp_;
  std::size_t num_components_ = 0;
};

/// A vertex set 0..n-1, tau >= 1 cop layers and a robber layer.
///
/// Immutable after construction. Edges within a layer are canonical and
/// unique; the same edge may appear in several layers.
class MultiLayerGraph {
 public:
  MultiLayerGraph(std::size_t n, std::vector<EdgeList> layers, RobberSpec spec = RobberSpec::Union,
                  EdgeList robber_edges = {})
      : n_(n), layers_(std::move(layers)), spec_(spec), robber_edges_(std::move(robber_edges)) {
    if (layers_.empty()) throw GraphError("a multi-layer graph needs at least one layer");
    for (std::size_t i = 0; i < layers_.size(); ++i) validate_edges(layers_[i], "layer " + std::to_string(i + 1));
    if (spec_ == RobberSpec::Explicit) {
      validate_edges(robber_edges_, "robber layer");
    } else if (!robber_edges_.empty()) {
      throw GraphError("robber edges given for a non-EXPLICIT robber layer");
    }
  }

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_layers() const noexcept { return layers_.size(); }
  const EdgeList& layer(std::size_t i) const { return layers_.at(i); }
  const std::vector<EdgeList>& layers() const noexcept { return layers_; }
  RobberSpec robber_spec() const noexcept { return spec_; }

  /// The EXPLICIT robber edges as given (empty for other specs).
  const EdgeList& explicit_robber_edges() const noexcept { return robber_edges_; }

  /// Resolved robber edge set. COMPLETE is refused above the materialization limit.
  EdgeList robber_edges() const {
    switch (spec_) {
      case RobberSpec::Explicit: return robber_edges_;
      case RobberSpec::Union: return flattened();
      case RobberSpec::Complete:
        if (n_ > kCompleteMaterializeLimit)
          throw GraphError("COMPLETE robber layer is not materialized for n > 2048");
        return complete_edges(n_);
    }
    return {};
  }

  /// Adjacency in the robber layer without materializing COMPLETE.
  bool robber_adjacent(Vertex u, Vertex v) const {
    if (u == v) return false;
    switch (spec_) {
      case RobberSpec::Complete: return true;
      case RobberSpec::Explicit: return std::binary_search(robber_edges_.begin(), robber_edges_.end(), Edge(u, v));
      case RobberSpec::Union:
        for (const auto& layer : layers_)
          if (std::binary_search(layer.begin(), layer.end(), Edge(u, v))) return true;
        return false;
    }
    return false;
  }

  LayerView layer_view(std::size_t i) const { return LayerView(n_, layers_.at(i)); }

  LayerView robber_view() const {
    if (spec_ == RobberSpec::Complete) return LayerView::complete(n_);
    return LayerView(n_, robber_edges());
  }

  /// Union of all cop layers.
  EdgeList flattened() const {
    EdgeList out;
    for (const auto& layer : layers_) out = edge_union(out, layer);
    return out;
  }

  /// Same layers, different robber layer.
  MultiLayerGraph with_robber(RobberSpec spec, EdgeList robber = {}) const {
    return MultiLayerGraph(n_, layers_, spec, std::move(robber));
  }

  bool operator==(const MultiLayerGraph& o) const {
    return n_ == o.n_ && layers_ == o.layers_ && spec_ == o.spec_ && robber_edges_ == o.robber_edges_;
  }

 private:
  void validate_edges(EdgeList& edges, const std::string& where) const {
    for (const Edge& e : edges) {
      if (e.u == e.v) throw GraphError(where + ": self-loop at " + std::to_string(e.u));
      if (e.v >= n_) throw GraphError(where + ": vertex " + std::to_string(e.v) + " out of range");
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end())
      throw GraphError(where + ": duplicate edge " + std::to_string(dup->u) + " " + std::to_string(dup->v));
  }

  std::size_t n_;
  std::vector<EdgeList> layers_;
  RobberSpec spec_;
  EdgeList robber_edges_;
};

/// Cop counts per layer.
struct AllocationPlan {
  std::vector<std::uint32_t> counts;

  std::uint32_t total() const { return std::accumulate(counts.begin(), counts.end(), 0u); }

  /// Layer index for each cop, cops of layer 0 first.
  std::vector<std::uint32_t> assignment() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t layer = 0; layer < counts.size(); ++layer)
      out.insert(out.end(), counts[layer], layer);
    return out;
  }

  static AllocationPlan from_assignment(const std::vector<std::uint32_t>& assignment, std::size_t tau) {
    AllocationPlan plan{std::vector<std::uint32_t>(tau, 0)};
    for (auto layer : assignment) ++plan.counts.at(layer);
    return plan;
  }

  bool operator==(const AllocationPlan&) const = default;
};

inline std::string to_string(const AllocationPlan& plan) {
  std::string out;
  for (std::size_t i = 0; i < plan.counts.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(plan.counts[i]);
  }
  return out;
}

/// All compositions of `total` into `parts` non-negative parts, starting
/// from (total, 0, ..., 0) and ending at (0, ..., 0, total).
inline std::vector<AllocationPlan> compositions(std::uint32_t total, std::size_t parts) {
  std::vector<AllocationPlan> out;
  std::vector<std::uint32_t> cur(parts, 0);
  auto rec = [&](auto&& self, std::size_t idx, std::uint32_t remaining) -> void {
    if (idx + 1 == parts) {
      cur[idx] = remaining;
      out.push_back({cur});
      return;
    }
    for (std::uint32_t c = remaining + 1; c-- > 0;) {
      cur[idx] = c;
      self(self, idx + 1, remaining - c);
    }
  };
  if (parts > 0) rec(rec, 0, total);
  return out;
}

// ---------------------------------------------------------------------------
// Basic operations

inline EdgeList flatten(const MultiLayerGraph& g) { return g.flattened(); }

struct ComponentLabels {
  std::vector<std::uint32_t> label;
  std::size_t count = 0;
};

inline ComponentLabels components(const MultiLayerGraph& g, std::size_t layer) {
  const LayerView view = g.layer_view(layer);
  ComponentLabels out;
  out.label.resize(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) out.label[v] = view.component(v);
  out.count = view.num_components();
  return out;
}

inline std::vector<std::uint32_t> bfs_dist(const MultiLayerGraph& g, std::size_t layer, Vertex source) {
  return g.layer_view(layer).distances(source);
}

/// Minimum over vertices of the summed per-layer degrees.
inline std::size_t ml_min_degree(const MultiLayerGraph& g) {
  std::vector<std::size_t> deg(g.num_vertices(), 0);
  for (const auto& layer : g.layers())
    for (const Edge& e : layer) {
      ++deg[e.u];
      ++deg[e.v];
    }
  return deg.empty() ? 0 : *std::min_element(deg.begin(), deg.end());
}

inline std::size_t min_degree(std::size_t n, const EdgeList& edges) {
  if (n == 0) return 0;
  std::vector<std::size_t> deg(n, 0);
  for (const Edge& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return *std::min_element(deg.begin(), deg.end());
}

inline std::size_t max_degree(std::size_t n, const EdgeList& edges) {
  std::vector<std::size_t> deg(n, 0);
  for (const Edge& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

/// Length of a shortest cycle, std::nullopt for forests.
inline std::optional<std::size_t> girth(std::size_t n, const EdgeList& edges) {
  const LayerView view(n, edges);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<std::uint32_t> dist(n), parent(n);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    dist[s] = 0;
    parent[s] = s;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      for (Vertex y : view.neighbors(x)) {
        if (dist[y] == kUnreachable) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push_back(y);
        } else if (parent[x] != y) {
          best = std::min<std::size_t>(best, dist[x] + dist[y] + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  return best;
}

inline std::size_t diameter(const LayerView& view) {
  std::size_t best = 0;
  for (Vertex s = 0; s < view.size(); ++s)
    for (auto d : view.distances(s))
      if (d != kUnreachable) best = std::max<std::size_t>(best, d);
  return best;
}

// ---------------------------------------------------------------------------
// MLG1 text format

namespace detail {

inline bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t") != std::string::npos) return true;
  }
  return false;
}

inline std::uint64_t parse_count(const std::string& token, std::size_t line_no, const char* what) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(line_no, std::string("expected non-negative integer for ") + what + ", got '" + token + "'");
  try {
    return std::stoull(token);
  } catch (const std::exception&) {
    throw ParseError(line_no, std::string(what) + " out of range");
  }
}

inline std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

inline EdgeList read_edges(std::istream& in, std::size_t count, std::size_t n, std::size_t& line_no,
                           const std::string& where) {
  EdgeList edges;
  edges.reserve(count);
  std::string line;
  std::vector<std::size_t> lines;
  lines.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!next_content_line(in, line, line_no))
      throw ParseError(line_no, where + ": expected " + std::to_string(count) + " edges, file ended");
    const auto tok = split(line);
    if (tok.size() != 2) throw ParseError(line_no, where + ": edge line must have two vertices");
    const auto a = parse_count(tok[0], line_no, "vertex");
    const auto b = parse_count(tok[1], line_no, "vertex");
    if (a >= n || b >= n) throw ParseError(line_no, where + ": vertex out of range");
    if (a == b) throw ParseError(line_no, where + ": self-loop");
    edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    lines.push_back(line_no);
  }
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return edges[x] < edges[y]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (edges[order[i]] == edges[order[i - 1]]) {
      const Edge e = edges[order[i]];
      throw ParseError(std::max(lines[order[i]], lines[order[i - 1]]),
                       where + ": duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
  }
  return canonical(std::move(edges));
}

}  // namespace detail

inline MultiLayerGraph parse_mlg(std::istream& in) {
  std::size_t line_no = 0;
  std::string line;
  if (!detail::next_content_line(in, line, line_no)) throw ParseError(line_no, "empty input");
  const auto header = detail::split(line);
  if (header.size() != 4 || header[0] != "MLG1") throw ParseError(line_no, "malformed header, expected 'MLG1 <n> <tau> <spec>'");
  const auto n = detail::parse_count(header[1], line_no, "n");
  const auto tau = detail::parse_count(header[2], line_no, "tau");
  if (tau < 1) throw ParseError(line_no, "tau must be at least 1");
  const auto spec = robber_spec_from_string(header[3]);
  if (!spec) throw ParseError(line_no, "unknown robber spec '" + header[3] + "'");

  std::vector<EdgeList> layers;
  for (std::uint64_t i = 1; i <= tau; ++i) {
    if (!detail::next_content_line(in, line, line_no)) throw ParseError(line_no, "missing LAYER " + std::to_string(i));
    const auto tok = detail::split(line);
    if (tok.size() != 3 || tok[0] != "LAYER") throw ParseError(line_no, "expected 'LAYER <i> <m>'");
    if (detail::parse_count(tok[1], line_no, "layer index") != i)
      throw ParseError(line_no, "layers must appear in order, expected LAYER " + std::to_string(i));
    const auto m = detail::parse_count(tok[2], line_no, "edge count");
    layers.push_back(detail::read_edges(in, m, n, line_no, "layer " + std::to_string(i)));
  }
  EdgeList robber;
  if (*spec == RobberSpec::Explicit) {
    if (!detail::next_content_line(in, line, line_no)) throw ParseError(line_no, "missing ROBBER section");
    const auto tok = detail::split(line);
    if (tok.size() != 2 || tok[0] != "ROBBER") throw ParseError(line_no, "expected 'ROBBER <m>'");
    const auto m = detail::parse_count(tok[1], line_no, "edge count");
    robber = detail::read_edges(in, m, n, line_no, "robber layer");
  }
  if (detail::next_content_line(in, line, line_no)) throw ParseError(line_no, "trailing content");
  return MultiLayerGraph(n, std::move(layers), *spec, std::move(robber));
}

inline MultiLayerGraph parse_mlg(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_mlg(in);
}

inline void serialize_mlg(const MultiLayerGraph& g, std::ostream& out) {
  out << "MLG1 " << g.num_vertices() << ' ' << g.num_layers() << ' ' << to_string(g.robber_spec()) << '\n';
  auto write_edges = [&](const EdgeList& edges) {
    for (const Edge& e : edges) out << e.u << ' ' << e.v << '\n';
  };
  for (std::size_t i = 0; i < g.num_layers(); ++i) {
    out << "LAYER " << i + 1 << ' ' << g.layer(i).size() << '\n';
    write_edges(g.layer(i));
  }
  if (g.robber_spec() == RobberSpec::Explicit) {
    out << "ROBBER " << g.explicit_robber_edges().size() << '\n';
    write_edges(g.explicit_robber_edges());
  }
}

inline std::string serialize_mlg(const MultiLayerGraph& g) {
  std::ostringstream out;
  serialize_mlg(g, out);
  return out.str();
}

}  // namespace mlcr

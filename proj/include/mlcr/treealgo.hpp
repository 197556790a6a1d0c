#pragma once

// Polynomial-per-assignment decision procedure for instances whose robber
// layer is a tree.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mlcr/core.hpp"
#include "mlcr/solver.hpp"

namespace mlcr {

inline bool is_tree(const EdgeList& edges, std::size_t n) {
  if (n == 0 || edges.size() != n - 1) return false;
  return LayerView(n, edges).connected();
}

struct ReachingCop {
  std::uint32_t cop = 0;
  std::uint32_t layer = 0;
};

/// A robber-layer edge that the robber can hold forever. `dist` is nullopt
/// for infinity.
struct RobbersEdgeCertificate {
  Edge edge;
  /// Endpoint order as printed: an unguarded endpoint comes first.
  Vertex first = 0;
  Vertex second = 0;
  std::vector<ReachingCop> reaching_cops;
  std::optional<std::uint32_t> dist;
  /// Start component chosen for each cop when the certificate was found.
  std::vector<std::uint32_t> components;
};

inline std::string to_string(const RobbersEdgeCertificate& c) {
  std::ostringstream out;
  out << "ROBBERS_EDGE " << c.first << ' ' << c.second << " ncops=" << c.reaching_cops.size() << " dist=";
  if (c.dist) out << *c.dist;
  else out << "inf";
  return out.str();
}

namespace detail {

struct TreeContext {
  std::size_t n;
  EdgeList robber_edges;
  std::vector<LayerView> views;
};

inline TreeContext tree_context(const MultiLayerGraph& g) {
  TreeContext ctx{g.num_vertices(), g.robber_edges(), {}};
  if (!is_tree(ctx.robber_edges, ctx.n)) throw GraphError("robber layer is not a tree");
  for (std::size_t i = 0; i < g.num_layers(); ++i) ctx.views.push_back(g.layer_view(i));
  return ctx;
}

/// Robber's edge for fixed start components, if any.
inline std::optional<RobbersEdgeCertificate> robbers_edge_for(const TreeContext& ctx,
                                                              const std::vector<std::uint32_t>& assignment,
                                                              const std::vector<std::uint32_t>& comps) {
  auto reaches = [&](std::size_t cop, Vertex v) { return ctx.views[assignment[cop]].component(v) == comps[cop]; };
  auto make = [&](Vertex a, Vertex b) {
    RobbersEdgeCertificate cert;
    cert.edge = Edge(a, b);
    cert.first = a;
    cert.second = b;
    cert.components = comps;
    for (std::uint32_t c = 0; c < assignment.size(); ++c)
      if (reaches(c, a) || reaches(c, b)) cert.reaching_cops.push_back({c, assignment[c]});
    if (cert.reaching_cops.size() == 1) {
      const auto d = ctx.views[cert.reaching_cops[0].layer].distances(a)[b];
      if (d != kUnreachable) cert.dist = d;
    }
    return cert;
  };

  // A vertex no cop can ever reach is a permanent refuge.
  for (const Edge& e : ctx.robber_edges) {
    for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      bool guarded = false;
      for (std::size_t c = 0; c < assignment.size() && !guarded; ++c) guarded = reaches(c, a);
      if (!guarded) {
        auto cert = make(a, b);
        cert.reaching_cops.clear();
        cert.dist.reset();
        return cert;
      }
    }
  }
  for (const Edge& e : ctx.robber_edges) {
    auto cert = make(e.u, e.v);
    if (cert.reaching_cops.empty()) return cert;
    if (cert.reaching_cops.size() == 1 && (!cert.dist || *cert.dist >= 3)) return cert;
  }
  return std::nullopt;
}

}  // namespace detail

/// Robber's edge for this assignment. Each cop starts in one component of its
/// layer; the robber wins iff every choice of start components leaves a
/// robber's edge, so a certificate is returned only in that case (the one for
/// the last choice tried).
inline std::optional<RobbersEdgeCertificate> find_robbers_edge(const MultiLayerGraph& g,
                                                               const std::vector<std::uint32_t>& assignment) {
  const auto ctx = detail::tree_context(g);
  if (assignment.empty()) {
    if (ctx.robber_edges.empty()) return std::nullopt;
    RobbersEdgeCertificate cert;
    cert.edge = ctx.robber_edges.front();
    cert.first = cert.edge.u;
    cert.second = cert.edge.v;
    return cert;
  }
  std::vector<std::uint32_t> comps(assignment.size(), 0);
  std::optional<RobbersEdgeCertificate> last;
  while (true) {
    auto cert = detail::robbers_edge_for(ctx, assignment, comps);
    if (!cert) return std::nullopt;
    last = std::move(cert);
    std::size_t i = comps.size();
    while (i-- > 0) {
      if (++comps[i] < ctx.views[assignment[i]].num_components()) break;
      comps[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return last;
}

/// Verdict over all cop-to-layer assignments; the plan is set when COP.
inline GameVerdict decide_tree_robber(const MultiLayerGraph& g, std::uint32_t k) {
  detail::tree_context(g);
  GameVerdict v;
  v.winner = Winner::Robber;
  if (k == 0) return v;
  for (const auto& plan : compositions(k, g.num_layers())) {
    if (!find_robbers_edge(g, plan.assignment())) {
      v.winner = Winner::Cop;
      v.plan = plan;
      return v;
    }
  }
  return v;
}

}  // namespace mlcr

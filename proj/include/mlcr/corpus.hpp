#pragma once

// Random small instances for property checks.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <vector>

#include "mlcr/core.hpp"
#include "mlcr/generators.hpp"
#include "mlcr/rng.hpp"

namespace mlcr::corpus {

/// Uniform random recursive tree: vertex v attaches to a random earlier vertex.
inline EdgeList random_tree(std::size_t n, Rng& rng) {
  EdgeList e;
  for (std::size_t v = 1; v < n; ++v) e.emplace_back(static_cast<Vertex>(uniform_below(rng, v)), static_cast<Vertex>(v));
  return canonical(e);
}

inline EdgeList random_edges(std::size_t n, double p, Rng& rng) { return gen_gnp(n, p, rng()); }

/// Connected graph: a random tree plus G(n, p) edges.
inline EdgeList random_connected(std::size_t n, double p, Rng& rng) {
  return edge_union(random_tree(n, rng), random_edges(n, p, rng));
}

inline double random_density(Rng& rng) { return 0.15 + 0.5 * unit_double(rng); }

/// τ random layers on n vertices with a random robber layer type.
inline MultiLayerGraph random_instance(std::size_t n, std::size_t tau, Rng& rng) {
  std::vector<EdgeList> layers;
  for (std::size_t i = 0; i < tau; ++i) layers.push_back(random_edges(n, random_density(rng), rng));
  switch (uniform_below(rng, 3)) {
    case 0: return MultiLayerGraph(n, std::move(layers), RobberSpec::Union);
    case 1: return MultiLayerGraph(n, std::move(layers), RobberSpec::Complete);
    default: {
      auto robber = random_edges(n, random_density(rng), rng);
      return MultiLayerGraph(n, std::move(layers), RobberSpec::Explicit, std::move(robber));
    }
  }
}

/// Random instance whose robber layer is a random tree.
inline MultiLayerGraph random_tree_instance(std::size_t n, std::size_t tau, Rng& rng) {
  std::vector<EdgeList> layers;
  for (std::size_t i = 0; i < tau; ++i) layers.push_back(random_edges(n, random_density(rng), rng));
  return MultiLayerGraph(n, std::move(layers), RobberSpec::Explicit, random_tree(n, rng));
}

/// Random instance with connected, sparse cop layers and a UNION robber layer.
inline MultiLayerGraph random_connected_instance(std::size_t n, std::size_t tau, double extra, Rng& rng) {
  std::vector<EdgeList> layers;
  for (std::size_t i = 0; i < tau; ++i) layers.push_back(random_connected(n, extra, rng));
  return MultiLayerGraph(n, std::move(layers), RobberSpec::Union);
}

/// EdgeList with `count` random non-edges of `edges` added (fewer if saturated).
inline EdgeList add_random_edges(std::size_t n, const EdgeList& edges, std::size_t count, Rng& rng) {
  EdgeList missing;
  const auto all = complete_edges(n);
  std::set_difference(all.begin(), all.end(), edges.begin(), edges.end(), std::back_inserter(missing));
  shuffle(missing, rng);
  if (missing.size() > count) missing.resize(count);
  return edge_union(edges, canonical(missing));
}

}  // namespace mlcr::corpus

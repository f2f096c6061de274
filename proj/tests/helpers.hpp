#pragma once

#include <vector>

#include "dcsbm/dcsbm.hpp"

namespace testutil {

using dcsbm::Edge;
using dcsbm::Graph;
using dcsbm::Index;

inline Graph path(Index n) {
  std::vector<Edge> e;
  for (Index u = 0; u + 1 < n; ++u) e.push_back({u, u + 1});
  return Graph::from_edges(n, e);
}

// Centre 0 with leaves 1..k.
inline Graph star(Index k) {
  std::vector<Edge> e;
  for (Index v = 1; v <= k; ++v) e.push_back({0, v});
  return Graph::from_edges(k + 1, e);
}

inline Graph complete(Index n) {
  std::vector<Edge> e;
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v) e.push_back({u, v});
  return Graph::from_edges(n, e);
}

// Disjoint cliques of the given sizes, laid out contiguously.
inline Graph cliques(const std::vector<Index>& sizes, std::vector<Edge> extra = {}) {
  std::vector<Edge> e = std::move(extra);
  Index off = 0;
  for (Index s : sizes) {
    for (Index u = 0; u < s; ++u)
      for (Index v = u + 1; v < s; ++v) e.push_back({off + u, off + v});
    off += s;
  }
  return Graph::from_edges(off, e);
}

// Erdos-Renyi style graph from the pair-uniform stream.
inline Graph random_graph(Index n, double p, std::uint64_t seed) {
  std::vector<Edge> e;
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v)
      if (dcsbm::pair_uniform(seed, static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(v)) < p)
        e.push_back({u, v});
  return Graph::from_edges(n, e);
}

}  // namespace testutil

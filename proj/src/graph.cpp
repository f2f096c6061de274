#include "dcsbm/graph.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace dcsbm {

Graph Graph::from_edges(Index n, std::vector<Edge> edges, bool dedupe) {
  if (n < 0) throw InvalidArgument("node count must be nonnegative");
  for (auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      std::ostringstream os;
      os << "edge (" << e.u << "," << e.v << ") out of range for n=" << n;
      throw InvalidArgument(os.str());
    }
    if (e.u == e.v) {
      std::ostringstream os;
      os << "self-loop at node " << e.u;
      throw InvalidArgument(os.str());
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (dedupe) {
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  } else {
    auto it = std::adjacent_find(edges.begin(), edges.end());
    if (it != edges.end()) {
      std::ostringstream os;
      os << "duplicate edge (" << it->u << "," << it->v << ")";
      throw InvalidArgument(os.str());
    }
  }
  return from_sorted_unique(n, std::move(edges));
}

Graph Graph::from_sorted_unique(Index n, std::vector<Edge> edges) {
  assert(std::is_sorted(edges.begin(), edges.end()));
  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  g.build_adjacency();
  return g;
}

void Graph::build_adjacency() {
  const auto n = static_cast<std::size_t>(n_);
  degrees_.assign(n, 0);
  for (const auto& e : edges_) {
    ++degrees_[static_cast<std::size_t>(e.u)];
    ++degrees_[static_cast<std::size_t>(e.v)];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) offsets_[u + 1] = offsets_[u] + degrees_[u];
  adj_.assign(static_cast<std::size_t>(offsets_[n]), 0);
  std::vector<Index> fill(offsets_.begin(), offsets_.end() - 1);
  // Sorted edge order fills each neighbor list in ascending order.
  for (const auto& e : edges_) adj_[static_cast<std::size_t>(fill[static_cast<std::size_t>(e.v)]++)] = e.u;
  for (const auto& e : edges_) adj_[static_cast<std::size_t>(fill[static_cast<std::size_t>(e.u)]++)] = e.v;
  for (std::size_t u = 0; u < n; ++u)
    std::sort(adj_.begin() + offsets_[u], adj_.begin() + offsets_[u + 1]);
}

bool Graph::has_edge(Index u, Index v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Index Graph::min_nonzero_degree() const noexcept {
  Index best = 0;
  for (Index d : degrees_)
    if (d > 0 && (best == 0 || d < best)) best = d;
  return best;
}

Index Graph::max_degree() const noexcept {
  return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end());
}

Index Graph::isolated_count() const noexcept {
  return static_cast<Index>(std::count(degrees_.begin(), degrees_.end(), Index{0}));
}

Graph Graph::induced(const std::vector<Index>& nodes) const {
  std::vector<Index> map(static_cast<std::size_t>(n_), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) map[static_cast<std::size_t>(nodes[i])] = static_cast<Index>(i);
  std::vector<Edge> out;
  for (const auto& e : edges_) {
    Index a = map[static_cast<std::size_t>(e.u)], b = map[static_cast<std::size_t>(e.v)];
    if (a >= 0 && b >= 0) out.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(out.begin(), out.end());
  return from_sorted_unique(static_cast<Index>(nodes.size()), std::move(out));
}

std::vector<Index> component_labels(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<Index> comp(n, -1);
  std::vector<Index> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = static_cast<Index>(s);
    stack.push_back(static_cast<Index>(s));
    while (!stack.empty()) {
      Index u = stack.back();
      stack.pop_back();
      for (Index v : g.neighbors(u)) {
        if (comp[static_cast<std::size_t>(v)] < 0) {
          comp[static_cast<std::size_t>(v)] = static_cast<Index>(s);
          stack.push_back(v);
        }
      }
    }
  }
  return comp;
}

std::vector<Index> giant_component(const Graph& g) {
  auto comp = component_labels(g);
  std::vector<Index> size(comp.size(), 0);
  for (Index c : comp) ++size[static_cast<std::size_t>(c)];
  Index best = -1;
  for (std::size_t c = 0; c < size.size(); ++c)
    if (best < 0 || size[c] > size[static_cast<std::size_t>(best)]) best = static_cast<Index>(c);
  std::vector<Index> nodes;
  for (std::size_t u = 0; u < comp.size(); ++u)
    if (comp[u] == best) nodes.push_back(static_cast<Index>(u));
  return nodes;
}

}  // namespace dcsbm

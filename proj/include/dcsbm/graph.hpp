#pragma once

#include <compare>
#include <span>
#include <vector>

#include "dcsbm/common.hpp"

namespace dcsbm {

struct Edge {
  Index u = 0;
  Index v = 0;
  auto operator<=>(const Edge&) const = default;
};

// Simple undirected graph. Edges are stored once with u < v, sorted.
class Graph {
 public:
  Graph() = default;

  // Throws InvalidArgument on self-loops, out-of-range endpoints, or
  // duplicates (unless dedupe is set, in which case duplicates collapse).
  static Graph from_edges(Index n, std::vector<Edge> edges, bool dedupe = false);

  // Edges already canonical (u < v, sorted, unique). Checked in debug builds.
  static Graph from_sorted_unique(Index n, std::vector<Edge> edges);

  Index n() const noexcept { return n_; }
  Index num_edges() const noexcept { return static_cast<Index>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Index>& degrees() const noexcept { return degrees_; }
  Index degree(Index u) const { return degrees_[static_cast<std::size_t>(u)]; }

  std::span<const Index> neighbors(Index u) const {
    const auto b = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(u)]);
    const auto e = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(u) + 1]);
    return {adj_.data() + b, e - b};
  }
  bool has_edge(Index u, Index v) const;

  double average_degree() const noexcept {
    return n_ == 0 ? 0.0 : 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(n_);
  }
  // Smallest nonzero degree, or 0 when the graph has no edges.
  Index min_nonzero_degree() const noexcept;
  Index max_degree() const noexcept;
  Index isolated_count() const noexcept;

  // Subgraph on `nodes`; node nodes[i] becomes i.
  Graph induced(const std::vector<Index>& nodes) const;

 private:
  void build_adjacency();

  Index n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Index> degrees_;
  std::vector<Index> offsets_{0};
  std::vector<Index> adj_;
};

// Component id per node; ids numbered by smallest member.
std::vector<Index> component_labels(const Graph& g);

// Nodes of the largest connected component, ascending. Ties go to the
// component containing the smaller node.
std::vector<Index> giant_component(const Graph& g);

}  // namespace dcsbm

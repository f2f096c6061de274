#pragma once

// Hot loops in two flavours: OpenMP-parallel (namespace kernels) and a plain
// serial reference (namespace kernels::serial). Both produce bit-identical
// results for any thread count; tests compare them directly.

#include <cstdint>
#include <span>
#include <vector>

#include "dcsbm/graph.hpp"
#include "dcsbm/rng.hpp"

namespace dcsbm::kernels {

struct CsrView {
  Index n = 0;
  const Index* offsets = nullptr;
  const Index* cols = nullptr;
  const double* vals = nullptr;
};

// y = M x for a CSR matrix.
void csr_spmv(const CsrView& m, const double* x, double* y);

// y = M x for a dense symmetric n x n matrix stored column-major.
void dense_symv(Index n, const double* m, const double* x, double* y);

// counts[i] = #{p in pool : |pts[cand[i]] - pts[p]|^2 <= r2}; rows of pts are
// d-dimensional and stored row-major.
void ball_counts(const double* pts, Index d, std::span<const Index> cand,
                 std::span<const Index> pool, double r2, Index* counts);

// Nearest-centre assignment; returns the within-cluster sum of squares.
// Ties go to the lowest centre index.
double assign_nearest(const double* pts, Index n, Index d, const double* centres,
                      Index k, int* labels);

// Bernoulli(prob(u, v)) for every pair u < v, driven by pair_uniform so the
// result is independent of evaluation order.
template <class Prob>
std::vector<Edge> sample_pairs(Index n, std::uint64_t seed, const Prob& prob) {
  std::vector<std::vector<Index>> rows(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 16)
  for (Index u = 0; u < n; ++u) {
    auto& row = rows[static_cast<std::size_t>(u)];
    for (Index v = u + 1; v < n; ++v) {
      const double p = prob(u, v);
      if (p > 0.0 && pair_uniform(seed, static_cast<std::uint64_t>(u),
                                  static_cast<std::uint64_t>(v)) < p)
        row.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (Index u = 0; u < n; ++u)
    for (Index v : rows[static_cast<std::size_t>(u)]) edges.push_back({u, v});
  return edges;
}

namespace serial {

void csr_spmv(const CsrView& m, const double* x, double* y);
void dense_symv(Index n, const double* m, const double* x, double* y);
void ball_counts(const double* pts, Index d, std::span<const Index> cand,
                 std::span<const Index> pool, double r2, Index* counts);
double assign_nearest(const double* pts, Index n, Index d, const double* centres,
                      Index k, int* labels);

template <class Prob>
std::vector<Edge> sample_pairs(Index n, std::uint64_t seed, const Prob& prob) {
  std::vector<Edge> edges;
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v) {
      const double p = prob(u, v);
      if (p > 0.0 && pair_uniform(seed, static_cast<std::uint64_t>(u),
                                  static_cast<std::uint64_t>(v)) < p)
        edges.push_back({u, v});
    }
  return edges;
}

}  // namespace serial
}  // namespace dcsbm::kernels

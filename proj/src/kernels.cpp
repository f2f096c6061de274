#include "dcsbm/kernels.hpp"

#include <limits>

namespace dcsbm::kernels {

namespace {

inline double sqdist(const double* a, const double* b, Index d) {
  double s = 0.0;
  for (Index j = 0; j < d; ++j) {
    const double t = a[j] - b[j];
    s += t * t;
  }
  return s;
}

inline double csr_row(const CsrView& m, Index u, const double* x) {
  double s = 0.0;
  for (Index p = m.offsets[u]; p < m.offsets[u + 1]; ++p) s += m.vals[p] * x[m.cols[p]];
  return s;
}

inline double dense_row(Index n, const double* m, Index u, const double* x) {
  const double* col = m + u * n;  // column u == row u
  double s = 0.0;
  for (Index v = 0; v < n; ++v) s += col[v] * x[v];
  return s;
}

inline Index ball_one(const double* pts, Index d, Index c, std::span<const Index> pool,
                      double r2) {
  const double* pc = pts + c * d;
  Index cnt = 0;
  for (Index p : pool)
    if (sqdist(pc, pts + p * d, d) <= r2) ++cnt;
  return cnt;
}

inline int nearest(const double* p, Index d, const double* centres, Index k, double* best) {
  int arg = 0;
  double b = std::numeric_limits<double>::infinity();
  for (Index c = 0; c < k; ++c) {
    const double s = sqdist(p, centres + c * d, d);
    if (s < b) {
      b = s;
      arg = static_cast<int>(c);
    }
  }
  *best = b;
  return arg;
}

}  // namespace

void csr_spmv(const CsrView& m, const double* x, double* y) {
#pragma omp parallel for schedule(static)
  for (Index u = 0; u < m.n; ++u) y[u] = csr_row(m, u, x);
}

void dense_symv(Index n, const double* m, const double* x, double* y) {
#pragma omp parallel for schedule(static)
  for (Index u = 0; u < n; ++u) y[u] = dense_row(n, m, u, x);
}

void ball_counts(const double* pts, Index d, std::span<const Index> cand,
                 std::span<const Index> pool, double r2, Index* counts) {
  const auto nc = static_cast<Index>(cand.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (Index i = 0; i < nc; ++i) counts[i] = ball_one(pts, d, cand[i], pool, r2);
}

double assign_nearest(const double* pts, Index n, Index d, const double* centres,
                      Index k, int* labels) {
  std::vector<double> dist(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (Index u = 0; u < n; ++u) labels[u] = nearest(pts + u * d, d, centres, k, &dist[u]);
  // Serial reduction keeps the sum order fixed.
  double total = 0.0;
  for (double v : dist) total += v;
  return total;
}

namespace serial {

void csr_spmv(const CsrView& m, const double* x, double* y) {
  for (Index u = 0; u < m.n; ++u) y[u] = csr_row(m, u, x);
}

void dense_symv(Index n, const double* m, const double* x, double* y) {
  for (Index u = 0; u < n; ++u) y[u] = dense_row(n, m, u, x);
}

void ball_counts(const double* pts, Index d, std::span<const Index> cand,
                 std::span<const Index> pool, double r2, Index* counts) {
  for (std::size_t i = 0; i < cand.size(); ++i) counts[i] = ball_one(pts, d, cand[i], pool, r2);
}

double assign_nearest(const double* pts, Index n, Index d, const double* centres,
                      Index k, int* labels) {
  double total = 0.0;
  for (Index u = 0; u < n; ++u) {
    double b;
    labels[u] = nearest(pts + u * d, d, centres, k, &b);
    total += b;
  }
  return total;
}

}  // namespace serial
}  // namespace dcsbm::kernels

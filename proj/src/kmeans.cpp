#include "dcsbm/kmeans.hpp"

#include <limits>
#include <random>

#include "dcsbm/kernels.hpp"
#include "dcsbm/rng.hpp"

namespace dcsbm {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

RowMatrix seed_plus_plus(const RowMatrix& x, Index K, std::mt19937_64& rng) {
  const Index n = x.rows();
  RowMatrix c(K, x.cols());
  std::uniform_int_distribution<Index> pick(0, n - 1);
  c.row(0) = x.row(pick(rng));
  Eigen::VectorXd d2 = (x.rowwise() - c.row(0)).rowwise().squaredNorm();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (Index k = 1; k < K; ++k) {
    const double total = d2.sum();
    Index chosen = 0;
    if (total > 0.0) {
      double r = unif(rng) * total;
      chosen = n - 1;
      for (Index u = 0; u < n; ++u) {
        r -= d2[u];
        if (r < 0.0) {
          chosen = u;
          break;
        }
      }
    } else {
      chosen = pick(rng);
    }
    c.row(k) = x.row(chosen);
    d2 = d2.cwiseMin((x.rowwise() - c.row(k)).rowwise().squaredNorm());
  }
  return c;
}

}  // namespace

KmeansResult kmeans(const Eigen::MatrixXd& points, Index K, const KmeansOptions& opt) {
  const Index n = points.rows(), d = points.cols();
  if (K < 1 || K > n) throw InvalidArgument("kmeans: need 1 <= K <= n");
  const RowMatrix x = points;
  KmeansResult best;
  best.wcss = std::numeric_limits<double>::infinity();

  for (Index rs = 0; rs < std::max<Index>(1, opt.restarts); ++rs) {
    std::mt19937_64 rng(derive_seed(opt.seed, static_cast<std::uint64_t>(rs)));
    RowMatrix c = seed_plus_plus(x, K, rng);
    std::vector<int> labels(n, 0);
    std::vector<double> trace;
    double obj = kernels::assign_nearest(x.data(), n, d, c.data(), K, labels.data());
    trace.push_back(obj);
    for (Index it = 0; it < opt.max_iter; ++it) {
      RowMatrix sum = RowMatrix::Zero(K, d);
      std::vector<Index> cnt(K, 0);
      for (Index u = 0; u < n; ++u) {
        sum.row(labels[u]) += x.row(u);
        ++cnt[labels[u]];
      }
      for (Index k = 0; k < K; ++k)
        if (cnt[k] > 0) c.row(k) = sum.row(k) / static_cast<double>(cnt[k]);
      std::vector<int> next(n);
      const double nobj = kernels::assign_nearest(x.data(), n, d, c.data(), K, next.data());
      const bool same = next == labels;
      labels.swap(next);
      trace.push_back(nobj);
      obj = nobj;
      if (same) break;
    }
    if (obj < best.wcss) {
      best.wcss = obj;
      best.labels = labels;
      best.centres = c;
      best.best_restart = rs;
      best.trace = trace;
    }
  }
  return best;
}

}  // namespace dcsbm

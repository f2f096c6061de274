#include "dcsbm/eigen_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include <lapacke.h>

namespace dcsbm {

namespace {

std::vector<Index> spectrum_order(const Eigen::VectorXd& vals) {
  std::vector<Index> idx(vals.size());
  std::iota(idx.begin(), idx.end(), Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) { return std::abs(vals[a]) > std::abs(vals[b]); });
  // Magnitudes equal up to roundoff count as ties; positive values go first.
  const double tol = 1e-10 * (vals.size() ? vals.cwiseAbs().maxCoeff() : 0.0);
  for (std::size_t s = 0; s < idx.size();) {
    std::size_t e = s + 1;
    while (e < idx.size() && std::abs(vals[idx[e - 1]]) - std::abs(vals[idx[e]]) <= tol) ++e;
    std::stable_sort(idx.begin() + static_cast<std::ptrdiff_t>(s), idx.begin() + static_cast<std::ptrdiff_t>(e),
                     [&](Index a, Index b) { return vals[a] > vals[b] + tol; });
    s = e;
  }
  return idx;
}

Eigen::VectorXd residual_norms(const SymMatrix& m, const Eigen::VectorXd& vals,
                               const Eigen::MatrixXd& vecs) {
  Eigen::VectorXd r(vals.size());
  Eigen::VectorXd y(m.n());
  for (Index i = 0; i < vals.size(); ++i) {
    m.multiply(vecs.col(i).data(), y.data());
    r[i] = (y - vals[i] * vecs.col(i)).norm();
  }
  return r;
}

EigenSystem take_top(const EigenSystem& full, Index k) {
  EigenSystem out;
  out.values = full.values.head(k);
  out.vectors = full.vectors.leftCols(k);
  return out;
}

void orthogonalize(Eigen::VectorXd& w, const std::vector<Eigen::VectorXd>& basis) {
  // Classical Gram-Schmidt applied twice.
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : basis) w -= q.dot(w) * q;
}

Eigen::VectorXd random_unit(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Index i = 0; i < n; ++i) v[i] = nd(rng);
  return v / v.norm();
}

}  // namespace

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  if (v.size() == 0) return;
  const double mx = v.cwiseAbs().maxCoeff();
  if (mx == 0.0) return;
  for (Index i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) >= mx * (1.0 - 1e-9)) {
      if (v[i] < 0) v = -v;
      return;
    }
}

void canonicalize(EigenSystem& es) {
  const auto order = spectrum_order(es.values);
  EigenSystem out;
  out.values.resize(es.values.size());
  out.vectors.resize(es.vectors.rows(), es.vectors.cols());
  const bool has_res = es.residuals.size() == es.values.size();
  if (has_res) out.residuals.resize(es.residuals.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.values[i] = es.values[order[i]];
    out.vectors.col(i) = es.vectors.col(order[i]);
    if (has_res) out.residuals[i] = es.residuals[order[i]];
    fix_sign(out.vectors.col(i));
  }
  out.iterations = es.iterations;
  es = std::move(out);
}

Eigen::VectorXd dense_eigenvalues(const Eigen::MatrixXd& m) {
  const auto n = static_cast<lapack_int>(m.rows());
  Eigen::VectorXd w(n);
  if (n == 0) return w;
  Eigen::MatrixXd a = m;
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'U', n, a.data(), n, w.data());
  if (info != 0) throw ConvergenceError("dsyevd failed with info " + std::to_string(info));
  return w;
}

EigenSystem dense_spectrum(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("dense_spectrum needs a square matrix");
  const auto n = static_cast<lapack_int>(m.rows());
  EigenSystem es;
  es.vectors = m;
  es.values.resize(n);
  if (n > 0) {
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, es.vectors.data(), n, es.values.data());
    if (info != 0) throw ConvergenceError("dsyevd failed with info " + std::to_string(info));
  }
  canonicalize(es);
  return es;
}

EigenSystem lanczos_topk(const SymMatrix& m, Index k, const EigsOptions& opt) {
  const Index n = m.n();
  if (k < 1 || k > n) throw InvalidArgument("eigs_topk: need 1 <= k <= n");
  const Index max_iter = opt.max_iter > 0 ? opt.max_iter : 10 * n;
  const double breakdown = 1e-13;

  std::mt19937_64 rng(opt.seed);
  std::vector<Eigen::VectorXd> basis;
  std::vector<double> alpha, beta;
  Eigen::VectorXd v = random_unit(n, rng);
  Eigen::VectorXd w(n);
  double scale = 0.0;
  Index next_check = std::min<Index>(n, std::max<Index>(k + 5, 10));

  for (Index it = 0; it < max_iter; ++it) {
    basis.push_back(v);
    m.multiply(v.data(), w.data());
    const double a = v.dot(w);
    alpha.push_back(a);
    orthogonalize(w, basis);
    double b = w.norm();
    scale = std::max({scale, std::abs(a), b});
    const Index j = static_cast<Index>(basis.size());
    const bool full = j == n;
    const bool broke = b <= breakdown * std::max(scale, 1e-300);
    if (broke) b = 0.0;

    if (full || broke || j >= next_check) {
      next_check = j + std::max<Index>(5, j / 10);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(alpha.data(), j);
      Eigen::VectorXd e = j > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), j - 1))
                                : Eigen::VectorXd();
      tri.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
      if (j >= k) {
        const auto order = spectrum_order(tri.eigenvalues());
        bool ok = true;
        for (Index i = 0; i < k && ok; ++i) ok = std::abs(b * tri.eigenvectors()(j - 1, order[i])) <= 0.5 * opt.tol;
        if (ok || full) {
          EigenSystem es;
          es.values.resize(k);
          es.vectors = Eigen::MatrixXd::Zero(n, k);
          for (Index i = 0; i < k; ++i) {
            es.values[i] = tri.eigenvalues()[order[i]];
            for (Index q = 0; q < j; ++q) es.vectors.col(i) += tri.eigenvectors()(q, order[i]) * basis[q];
            es.vectors.col(i).normalize();
          }
          es.residuals = residual_norms(m, es.values, es.vectors);
          es.iterations = j;
          if (es.residuals.maxCoeff() <= opt.tol || full) {
            if (es.residuals.maxCoeff() > opt.tol)
              throw ConvergenceError("Lanczos exhausted the space with residual " +
                                     std::to_string(es.residuals.maxCoeff()));
            canonicalize(es);
            return es;
          }
        }
      }
    }
    beta.push_back(b);
    if (broke) {
      // Invariant subspace found; restart from a fresh direction.
      Eigen::VectorXd r = random_unit(n, rng);
      orthogonalize(r, basis);
      v = r / r.norm();
    } else {
      v = w / b;
    }
  }
  throw ConvergenceError("Lanczos did not converge within " + std::to_string(max_iter) + " iterations");
}

EigenSystem eigs_topk(const SymMatrix& m, Index k, const EigsOptions& opt) {
  if (k < 1 || k > m.n()) throw InvalidArgument("eigs_topk: need 1 <= k <= n");
  if (m.n() <= opt.dense_threshold) {
    EigenSystem es = take_top(dense_spectrum(m.to_dense()), k);
    es.residuals = residual_norms(m, es.values, es.vectors);
    return es;
  }
  return lanczos_topk(m, k, opt);
}

double spectral_radius(const SymMatrix& m, const EigsOptions& opt) {
  if (m.n() == 0) return 0.0;
  return std::abs(eigs_topk(m, 1, opt).values[0]);
}

std::optional<double> eigen_gap(std::span<const double> values, double merge_tol) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  std::vector<double> reps;
  for (double x : v)
    if (reps.empty() || x - reps.back() > merge_tol) reps.push_back(x);
  if (reps.size() < 2) return std::nullopt;
  double gap = reps[1] - reps[0];
  for (std::size_t i = 2; i < reps.size(); ++i) gap = std::min(gap, reps[i] - reps[i - 1]);
  return gap;
}

}  // namespace dcsbm

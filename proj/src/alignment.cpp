#include "dcsbm/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dcsbm/eigen_solver.hpp"

namespace dcsbm {

namespace {

struct Descending {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

Descending descending(const Eigen::MatrixXd& m) {
  EigenSystem es = dense_spectrum(m);
  std::vector<Index> idx(es.values.size());
  std::iota(idx.begin(), idx.end(), Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) { return es.values[a] > es.values[b]; });
  Descending d;
  d.values.resize(es.values.size());
  d.vectors.resize(es.vectors.rows(), es.vectors.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    d.values[i] = es.values[idx[i]];
    d.vectors.col(i) = es.vectors.col(idx[i]);
  }
  return d;
}

// Group id per index for a descending spectrum (consecutive values within tol).
std::vector<Index> groups(const Eigen::VectorXd& v, double tol) {
  std::vector<Index> g(v.size());
  Index id = 0;
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0 && v[i - 1] - v[i] > tol) ++id;
    g[i] = id;
  }
  return g;
}

}  // namespace

bool AlignmentReport::weyl_all() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.weyl_ok; });
}
bool AlignmentReport::dims_all() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.dim_ok; });
}
bool AlignmentReport::dots_all() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.dot_ok; });
}

AlignmentReport alignment_report(const SymMatrix& a, const SymMatrix& delta, double merge_tol,
                                 double slack) {
  if (a.n() != delta.n()) throw InvalidArgument("alignment_report: dimension mismatch");
  const Eigen::MatrixXd A = a.to_dense();
  const Eigen::MatrixXd dA = delta.to_dense();
  const Descending mu = descending(A);
  const Descending lam = descending(A + dA);

  AlignmentReport r;
  const Eigen::VectorXd dvals = dense_eigenvalues(dA);
  r.rho_delta = dvals.size() ? dvals.cwiseAbs().maxCoeff() : 0.0;
  std::vector<double> mv(mu.values.data(), mu.values.data() + mu.values.size());
  r.gap = eigen_gap(mv, merge_tol).value_or(0.0);
  r.hypothesis = r.gap > 0.0 && r.rho_delta < r.gap / 2.0;
  if (r.hypothesis) {
    const double q = r.rho_delta / (r.gap / 2.0);
    r.bound = std::sqrt(std::max(0.0, 1.0 - q * q));
  }

  const auto gm = groups(mu.values, merge_tol);
  const auto gl = groups(lam.values, merge_tol);
  const Index n = A.rows();
  for (Index i = 0; i < n; ++i) {
    AlignmentEntry e;
    e.lambda = lam.values[i];
    e.mu = mu.values[i];
    e.abs_diff = std::abs(e.lambda - e.mu);
    e.weyl_ok = e.abs_diff <= r.rho_delta + slack;
    e.dim_perturbed = std::count(gl.begin(), gl.end(), gl[i]);
    e.dim_unperturbed = std::count(gm.begin(), gm.end(), gm[i]);
    e.dim_ok = e.dim_perturbed <= e.dim_unperturbed;
    // Projection of v_i onto the mu_i-eigenspace of A.
    double s = 0.0;
    for (Index j = 0; j < n; ++j)
      if (gm[j] == gm[i]) {
        const double c = lam.vectors.col(i).dot(mu.vectors.col(j));
        s += c * c;
      }
    e.dot = std::sqrt(s);
    e.dot_ok = !r.hypothesis || e.dot >= r.bound - slack;
    r.entries.push_back(e);
  }
  return r;
}

}  // namespace dcsbm

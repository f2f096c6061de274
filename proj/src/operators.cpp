#include "dcsbm/operators.hpp"

#include <cmath>
#include <string>

namespace dcsbm {

namespace {

template <class F>
SymMatrix edge_weighted(const Graph& g, F weight) {
  std::vector<Triplet> t;
  t.reserve(g.edges().size());
  for (const auto& e : g.edges()) t.push_back({e.u, e.v, weight(e.u, e.v)});
  return SymMatrix::sparse(g.n(), std::move(t));
}

}  // namespace

SymMatrix adjacency(const Graph& g) {
  return edge_weighted(g, [](Index, Index) { return 1.0; });
}

SymMatrix normalized_adjacency(const Graph& g) {
  const auto& d = g.degrees();
  return edge_weighted(g, [&](Index u, Index v) {
    return 1.0 / (static_cast<double>(d[u]) * static_cast<double>(d[v]));
  });
}

SymMatrix inflated_normalized_adjacency(const Graph& g, double floor) {
  if (!(floor > 0.0)) throw InvalidArgument("floor must be positive");
  const auto& d = g.degrees();
  return edge_weighted(g, [&](Index u, Index v) {
    return 1.0 / std::max(static_cast<double>(d[u]) * static_cast<double>(d[v]), floor);
  });
}

SymMatrix model_normalized(const Graph& g, const DcsbmParams& p) {
  if (g.n() != p.n) throw InvalidArgument("graph and model sizes differ");
  const auto ed = expected_degrees(p);
  for (const auto& e : g.edges())
    if (!(ed[e.u] > 0.0) || !(ed[e.v] > 0.0))
      throw InvalidModel("zero expected degree at an edge endpoint");
  return edge_weighted(g, [&](Index u, Index v) { return 1.0 / (ed[u] * ed[v]); });
}

SymMatrix expected_model_normalized(const DcsbmParams& p) {
  const auto agg = aggregates(p);
  const auto ed = expected_degrees(p);
  for (double x : ed)
    if (!(x > 0.0)) throw InvalidModel("zero expected degree");
  Eigen::MatrixXd m(p.n, p.n);
  for (Index v = 0; v < p.n; ++v)
    for (Index u = 0; u <= v; ++u) m(u, v) = edge_probability(p, agg, u, v) / (ed[u] * ed[v]);
  return SymMatrix::dense(std::move(m));
}

SymMatrix population_matrix(const DcsbmParams& p) {
  const auto agg = aggregates(p);
  for (int i = 0; i < p.K; ++i)
    if (!(agg.M_bar[i] > 0.0)) throw InvalidModel("M-bar_" + std::to_string(i) + " is zero");
  Eigen::MatrixXd blk(p.K, p.K);
  for (int i = 0; i < p.K; ++i)
    for (int j = 0; j < p.K; ++j) blk(i, j) = p.block(i, j) / (agg.d_sum * agg.M_bar[i] * agg.M_bar[j]);
  Eigen::MatrixXd m(p.n, p.n);
  for (Index v = 0; v < p.n; ++v)
    for (Index u = 0; u <= v; ++u) m(u, v) = blk(p.sigma[u], p.sigma[v]);
  return SymMatrix::dense(std::move(m));
}

Eigen::MatrixXd block_matrix_z(const DcsbmParams& p) {
  const auto agg = aggregates(p);
  Eigen::MatrixXd z(p.K, p.K);
  for (int i = 0; i < p.K; ++i) {
    if (!(agg.M_bar[i] > 0.0)) throw InvalidModel("M-bar_" + std::to_string(i) + " is zero");
    for (int j = 0; j < p.K; ++j) {
      const double a = static_cast<double>(agg.block_size[j]) / static_cast<double>(p.n);
      z(i, j) = a * p.block(i, j) / (agg.M_bar[i] * agg.M_bar[j]);
    }
  }
  return z;
}

LiftedPair lift_z_eigenvector(const DcsbmParams& p, const Eigen::VectorXd& y, double lambda) {
  const Eigen::MatrixXd z = block_matrix_z(p);
  if (y.size() != p.K) throw InvalidArgument("eigenvector length must be K");
  const double zres = (z * y - lambda * y).norm();
  if (zres > 1e-8 * std::max(1.0, y.norm() * std::max(1.0, std::abs(lambda))))
    throw InvalidArgument("y is not an eigenvector of Z (residual " + std::to_string(zres) + ")");

  const auto agg = aggregates(p);
  LiftedPair out;
  out.lambda = lambda / agg.d_bar;
  out.w.resize(p.n);
  for (Index u = 0; u < p.n; ++u) out.w[u] = y[p.sigma[u]];

  // P w evaluated entry by entry, without the block shortcut.
  Eigen::VectorXd pw = Eigen::VectorXd::Zero(p.n);
  for (Index u = 0; u < p.n; ++u) {
    const int su = p.sigma[u];
    double s = 0.0;
    for (Index v = 0; v < p.n; ++v) {
      const int sv = p.sigma[v];
      s += p.block(su, sv) / (agg.d_sum * agg.M_bar[su] * agg.M_bar[sv]) * out.w[v];
    }
    pw[u] = s;
  }
  out.residual = (pw - out.lambda * out.w).norm() / out.w.norm();
  if (out.residual > 1e-8)
    throw ConvergenceError("lifted eigenpair residual " + std::to_string(out.residual) + " exceeds 1e-8");
  return out;
}

SymMatrix laplacian(const Graph& g, double tau, LaplacianForm form) {
  if (tau < 0.0) throw InvalidArgument("tau must be nonnegative");
  if (tau == 0.0 && g.isolated_count() > 0)
    throw InvalidArgument("tau = 0 requires a graph without isolated vertices");
  std::vector<double> s(g.n());
  for (Index u = 0; u < g.n(); ++u) s[u] = 1.0 / std::sqrt(static_cast<double>(g.degree(u)) + tau);
  const double sign = form == LaplacianForm::IdentityMinus ? -1.0 : 1.0;
  std::vector<Triplet> t;
  for (const auto& e : g.edges()) t.push_back({e.u, e.v, sign * s[e.u] * s[e.v]});
  if (form == LaplacianForm::IdentityMinus)
    for (Index u = 0; u < g.n(); ++u) t.push_back({u, u, 1.0});
  return SymMatrix::sparse(g.n(), std::move(t));
}

SymMatrix expected_normalized_laplacian(const DcsbmParams& p) {
  const auto agg = aggregates(p);
  const auto ed = expected_degrees(p);
  std::vector<double> s(p.n);
  for (Index u = 0; u < p.n; ++u) {
    if (!(ed[u] > 0.0)) throw InvalidModel("zero expected degree");
    s[u] = 1.0 / std::sqrt(ed[u]);
  }
  Eigen::MatrixXd m(p.n, p.n);
  for (Index v = 0; v < p.n; ++v)
    for (Index u = 0; u <= v; ++u) m(u, v) = s[u] * edge_probability(p, agg, u, v) * s[v];
  return SymMatrix::dense(std::move(m));
}

}  // namespace dcsbm

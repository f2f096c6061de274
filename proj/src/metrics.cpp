#include "dcsbm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "dcsbm/operators.hpp"

namespace dcsbm {

std::vector<int> hungarian(const Eigen::MatrixXd& cost) {
  const Index n = cost.rows();
  if (cost.cols() != n) throw InvalidArgument("hungarian: cost matrix must be square");
  const double inf = std::numeric_limits<double>::infinity();
  // Potentials formulation, 1-based with a virtual column 0.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<Index> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (Index i = 1; i <= n; ++i) {
    p[0] = i;
    Index j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const Index i0 = p[j0];
      double delta = inf;
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const Index j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (Index j = 1; j <= n; ++j)
    if (p[j] > 0) row_to_col[p[j] - 1] = static_cast<int>(j - 1);
  return row_to_col;
}

Misclassification misclassification(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.size() != truth.size()) throw InvalidArgument("misclassification: length mismatch");
  const auto n = static_cast<Index>(truth.size());
  Misclassification out;
  if (n == 0) return out;
  int C = 0, T = 0;
  for (Index u = 0; u < n; ++u) {
    if (truth[u] < 0) throw InvalidArgument("truth labels must be nonnegative");
    C = std::max(C, predicted[u] + 1);
    T = std::max(T, truth[u] + 1);
  }
  const int s = std::max(C, T);
  Eigen::MatrixXd conf = Eigen::MatrixXd::Zero(s, s);
  for (Index u = 0; u < n; ++u)
    if (predicted[u] >= 0) conf(predicted[u], truth[u]) += 1.0;
  const auto match = hungarian(-conf);
  double hit = 0.0;
  out.matching.assign(C, -1);
  for (int c = 0; c < s; ++c) {
    const int t = match[c];
    hit += conf(c, t);
    if (c < C && t < T) out.matching[c] = t;
  }
  out.errors = n - static_cast<Index>(std::llround(hit));
  out.fraction = static_cast<double>(out.errors) / static_cast<double>(n);
  return out;
}

double population_gap(const DcsbmParams& p) {
  const auto agg = aggregates(p);
  const Eigen::MatrixXd z = block_matrix_z(p);
  // Z = S diag(alpha) with S symmetric; diag(sqrt alpha) S diag(sqrt alpha)
  // shares its spectrum and is symmetric.
  Eigen::VectorXd sa(p.K);
  for (int j = 0; j < p.K; ++j) sa[j] = std::sqrt(static_cast<double>(agg.block_size[j]) / static_cast<double>(p.n));
  Eigen::MatrixXd sym(p.K, p.K);
  for (int i = 0; i < p.K; ++i)
    for (int j = 0; j < p.K; ++j) sym(i, j) = sa[i] * sa[j] * p.block(i, j) / (agg.M_bar[i] * agg.M_bar[j]);
  const Eigen::VectorXd ev = dense_eigenvalues(sym) / agg.d_bar;
  std::vector<double> vals(ev.data(), ev.data() + ev.size());
  if (p.n > p.K) vals.push_back(0.0);
  return eigen_gap(vals).value_or(0.0);
}

ConcentrationReport concentration_report(const Graph& g, const DcsbmParams& p, const EigsOptions& opt) {
  if (g.n() != p.n) throw InvalidArgument("concentration_report: graph and model sizes differ");
  if (p.n > kDenseLimit)
    throw InvalidArgument("concentration_report: n exceeds the dense limit " + std::to_string(kDenseLimit) +
                          "; subsample the graph");
  const SymMatrix hhat = normalized_adjacency(g);
  const SymMatrix h = model_normalized(g, p);
  const Eigen::MatrixXd eh = expected_model_normalized(p).dense_storage();
  const Eigen::MatrixXd pm = population_matrix(p).dense_storage();

  std::vector<Triplet> diff;
  const auto hu = hhat.upper_triplets();
  const auto mu = h.upper_triplets();
  for (std::size_t i = 0; i < hu.size(); ++i) diff.push_back({hu[i].row, hu[i].col, hu[i].value - mu[i].value});

  ConcentrationReport r;
  r.rho_hat_h = spectral_radius(SymMatrix::sparse(p.n, std::move(diff)), opt);
  r.rho_h_eh = spectral_radius(SymMatrix::dense(h.to_dense() - eh), opt);
  r.rho_eh_p = spectral_radius(SymMatrix::dense(eh - pm), opt);
  r.rho_w = spectral_radius(SymMatrix::dense(hhat.to_dense() - pm), opt);
  r.gap_p = population_gap(p);
  r.d_bar = aggregates(p).d_bar;
  r.ratio_hat_h = r.rho_hat_h * r.d_bar;
  r.ratio_h_eh = r.rho_h_eh * r.d_bar;
  r.ratio_eh_p = r.rho_eh_p * r.d_bar;
  r.ratio_w = r.rho_w * r.d_bar;
  r.w_over_gap = r.gap_p > 0.0 ? r.rho_w / r.gap_p : std::numeric_limits<double>::infinity();
  return r;
}

RandomWalkReport random_walk_checks(const Graph& g, Index edge_samples, std::uint64_t seed) {
  RandomWalkReport r;
  if (g.num_edges() == 0) return r;
  const SymMatrix h = normalized_adjacency(g);
  const auto& d = g.degrees();
  Eigen::VectorXd dv(g.n());
  for (Index u = 0; u < g.n(); ++u) dv[u] = static_cast<double>(d[u]);
  // H-hat is symmetric, so D-hat^T H-hat = H-hat D-hat.
  const Eigen::VectorXd lhs = h * dv;
  for (Index u = 0; u < g.n(); ++u)
    r.identity_residual = std::max(r.identity_residual, std::abs(lhs[u] - (d[u] != 0 ? 1.0 : 0.0)));

  const EigenSystem es = eigs_topk(h, std::min<Index>(2, g.n()));
  r.lambda_max = es.values.maxCoeff();
  r.lower = 1.0 / static_cast<double>(g.max_degree());
  r.upper = h.row_sums().maxCoeff();
  r.lower_ok = r.lambda_max >= r.lower - 1e-10;
  r.upper_ok = r.lambda_max <= r.upper + 1e-10;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, g.edges().size() - 1);
  const Index m = std::min<Index>(edge_samples, g.num_edges());
  for (Index t = 0; t < m; ++t) {
    const Edge e = m == g.num_edges() ? g.edges()[t] : g.edges()[pick(rng)];
    const double walk = (1.0 / static_cast<double>(d[e.u])) * (1.0 / static_cast<double>(d[e.v]));
    r.walk_product_error = std::max(r.walk_product_error, std::abs(h.at(e.u, e.v) - walk));
  }
  return r;
}

Eigen::MatrixXd estimate_block_ratios(const Graph& g, const Clustering& c) {
  if (static_cast<Index>(c.labels.size()) != g.n()) throw InvalidArgument("clustering size mismatch");
  const int C = c.count;
  if (C < 1) throw InvalidArgument("estimate_block_ratios: no clusters");
  std::vector<double> size(C, 0.0);
  for (int l : c.labels)
    if (l >= 0) size[l] += 1.0;
  for (int k = 0; k < C; ++k)
    if (size[k] == 0.0) throw InvalidArgument("estimate_block_ratios: empty cluster " + std::to_string(k));
  double dsum = 0.0;
  for (Index d : g.degrees()) dsum += static_cast<double>(d);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(C, C);
  for (const auto& e : g.edges()) {
    const int a = c.labels[e.u], b = c.labels[e.v];
    if (a < 0 || b < 0) continue;
    const double w = 1.0 / (static_cast<double>(g.degree(e.u)) * static_cast<double>(g.degree(e.v)));
    s(a, b) += w;
    s(b, a) += w;
  }
  for (int i = 0; i < C; ++i)
    for (int j = 0; j < C; ++j) s(i, j) *= dsum / (size[i] * size[j]);
  return s;
}

ObservationCheck observation_ratio_check(const DcsbmParams& p, int i, int j, int l) {
  if (std::min({i, j, l}) < 0 || std::max({i, j, l}) >= p.K) throw InvalidArgument("community index out of range");
  const auto agg = aggregates(p);
  // Leading-order expectations: E#edges(a,b) = W_a W_b B_ab / sum D and
  // E total degree(a) = W_a M_a / sum D.
  auto ratio = [&](int a) {
    const double edges = agg.block_weight[a] * agg.block_weight[j] * p.block(a, j) / agg.d_sum;
    const double degree = agg.block_weight[a] * agg.M[a] / agg.d_sum;
    return edges / degree;
  };
  auto close = [](double x, double y) { return std::abs(x - y) <= 1e-9 * std::max({std::abs(x), std::abs(y), 1e-300}); };
  ObservationCheck r;
  r.lhs = ratio(i);
  r.rhs = ratio(l);
  r.premise = close(p.block(i, j) / agg.M[i], p.block(l, j) / agg.M[l]);
  r.equal = close(r.lhs, r.rhs);
  return r;
}

}  // namespace dcsbm

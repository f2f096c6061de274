#include "dcsbm/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dcsbm/kernels.hpp"

namespace dcsbm {

std::vector<Index> community_sizes(const std::vector<double>& alpha, Index n) {
  const std::size_t K = alpha.size();
  std::vector<Index> sizes(K);
  std::vector<double> rem(K);
  Index total = 0;
  for (std::size_t k = 0; k < K; ++k) {
    const double exact = alpha[k] * static_cast<double>(n);
    sizes[k] = static_cast<Index>(std::floor(exact));
    rem[k] = exact - static_cast<double>(sizes[k]);
    total += sizes[k];
  }
  std::vector<std::size_t> order(K);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
  for (std::size_t i = 0; total < n && K > 0; i = (i + 1) % K, ++total) ++sizes[order[i]];
  return sizes;
}

std::vector<int> contiguous_labels(const std::vector<Index>& sizes) {
  std::vector<int> sigma;
  for (std::size_t k = 0; k < sizes.size(); ++k) sigma.insert(sigma.end(), sizes[k], static_cast<int>(k));
  return sigma;
}

DcsbmParams make_params(Index n, Eigen::MatrixXd block, std::vector<double> alpha,
                        std::vector<double> weights, std::vector<int> sigma) {
  DcsbmParams p;
  p.n = n;
  p.K = static_cast<int>(block.rows());
  p.block = std::move(block);
  p.alpha = std::move(alpha);
  p.weights = std::move(weights);
  p.sigma = sigma.empty() ? contiguous_labels(community_sizes(p.alpha, n)) : std::move(sigma);
  return p;
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Structural checks that must pass before aggregates are meaningful.
void structural(const DcsbmParams& p, std::vector<std::string>& out) {
  if (p.n < 1) out.push_back("n must be at least 1");
  if (p.K < 1) out.push_back("K must be at least 1");
  if (p.block.rows() != p.K || p.block.cols() != p.K)
    out.push_back("block must be K x K");
  if (static_cast<int>(p.alpha.size()) != p.K) out.push_back("alpha must have length K");
  if (static_cast<Index>(p.sigma.size()) != p.n) out.push_back("sigma must have length n");
  if (static_cast<Index>(p.weights.size()) != p.n) out.push_back("weights must have length n");
}

}  // namespace

ValidationReport validate(const DcsbmParams& p) {
  ValidationReport r;
  structural(p, r.violations);
  if (!r.violations.empty()) return r;

  const double asum = std::accumulate(p.alpha.begin(), p.alpha.end(), 0.0);
  if (std::abs(asum - 1.0) > 1e-12) r.violations.push_back("alpha sums to " + fmt(asum) + ", not 1");
  for (int k = 0; k < p.K; ++k)
    if (!(p.alpha[k] > 0.0)) r.violations.push_back("alpha[" + std::to_string(k) + "] is not positive");

  std::vector<Index> count(p.K, 0);
  for (Index u = 0; u < p.n; ++u) {
    const int s = p.sigma[u];
    if (s < 0 || s >= p.K) {
      r.violations.push_back("sigma[" + std::to_string(u) + "] out of range");
      return r;
    }
    ++count[s];
  }
  const auto expect = community_sizes(p.alpha, p.n);
  for (int k = 0; k < p.K; ++k)
    if (count[k] != expect[k])
      r.violations.push_back("community " + std::to_string(k) + " has " + std::to_string(count[k]) +
                             " members, expected " + std::to_string(expect[k]));

  for (int i = 0; i < p.K; ++i)
    for (int j = 0; j < p.K; ++j) {
      if (p.block(i, j) < 0.0)
        r.violations.push_back("block(" + std::to_string(i) + "," + std::to_string(j) + ") is negative");
      if (j > i && std::abs(p.block(i, j) - p.block(j, i)) > 1e-12)
        r.violations.push_back("block is not symmetric at (" + std::to_string(i) + "," +
                               std::to_string(j) + ")");
    }
  bool weights_ok = true;
  for (Index u = 0; u < p.n; ++u)
    if (!(p.weights[u] > 0.0) || !std::isfinite(p.weights[u])) {
      r.violations.push_back("weight of node " + std::to_string(u) + " is not positive");
      weights_ok = false;
      break;
    }
  if (!weights_ok || !r.violations.empty()) return r;

  // Largest probability per block pair comes from the two heaviest members.
  const double nd = std::accumulate(p.weights.begin(), p.weights.end(), 0.0);
  std::vector<Index> top1(p.K, -1), top2(p.K, -1);
  for (Index u = 0; u < p.n; ++u) {
    const int s = p.sigma[u];
    const double w = p.weights[u];
    if (top1[s] < 0 || w > p.weights[top1[s]]) {
      top2[s] = top1[s];
      top1[s] = u;
    } else if (top2[s] < 0 || w > p.weights[top2[s]]) {
      top2[s] = u;
    }
  }
  for (int i = 0; i < p.K; ++i)
    for (int j = i; j < p.K; ++j) {
      Index u = top1[i], v = (i == j) ? top2[i] : top1[j];
      if (u < 0 || v < 0) continue;
      const double prob = p.weights[u] * p.weights[v] * p.block(i, j) / nd;
      r.max_edge_probability = std::max(r.max_edge_probability, prob);
      if (prob > 1.0) {
        if (u > v) std::swap(u, v);
        r.violations.push_back("edge probability " + fmt(prob) + " > 1 at (u,v)=(" +
                               std::to_string(u) + "," + std::to_string(v) + ")");
      }
    }

  const double d_min = *std::min_element(p.weights.begin(), p.weights.end());
  const double d_bar = nd / static_cast<double>(p.n);
  const double logn = std::log(static_cast<double>(p.n));
  if (p.n > 1 && d_min * d_min / d_bar < logn)
    r.advisories.push_back("weight condition D_1^2/D-bar >= log n fails: " + fmt(d_min * d_min / d_bar) +
                           " < " + fmt(logn));
  try {
    for (auto [a, b] : identifiability_check(p))
      r.advisories.push_back("identifiability violated for pair (" + std::to_string(a) + "," +
                             std::to_string(b) + ")");
  } catch (const Error& e) {
    r.advisories.push_back(std::string("identifiability not computable: ") + e.what());
  }
  return r;
}

ModelAggregates aggregates(const DcsbmParams& p) {
  ModelAggregates a;
  a.block_size.assign(p.K, 0);
  a.block_weight = Eigen::VectorXd::Zero(p.K);
  for (Index u = 0; u < p.n; ++u) {
    ++a.block_size[p.sigma[u]];
    a.block_weight[p.sigma[u]] += p.weights[u];
  }
  a.d_sum = a.block_weight.sum();
  a.d_bar = a.d_sum / static_cast<double>(p.n);
  a.d_bar_per_block = Eigen::VectorXd::Zero(p.K);
  for (int i = 0; i < p.K; ++i)
    if (a.block_size[i] > 0) a.d_bar_per_block[i] = a.block_weight[i] / static_cast<double>(a.block_size[i]);
  a.M = p.block * a.block_weight;
  a.M_bar = a.M / a.d_sum;
  a.d_ratio = a.d_bar_per_block / a.d_bar;
  return a;
}

double edge_probability(const DcsbmParams& p, const ModelAggregates& agg, Index u, Index v) {
  if (u == v) return 0.0;
  return p.weights[u] * p.weights[v] * p.block(p.sigma[u], p.sigma[v]) / agg.d_sum;
}

double edge_probability(const DcsbmParams& p, Index u, Index v) {
  const double prob = edge_probability(p, aggregates(p), u, v);
  if (prob > 1.0)
    throw InvalidModel("edge probability " + fmt(prob) + " > 1 at (u,v)=(" + std::to_string(u) + "," +
                       std::to_string(v) + ")");
  return prob;
}

namespace {

void require_valid(const DcsbmParams& p) {
  auto r = validate(p);
  if (!r.valid()) {
    std::string msg = "invalid model:";
    for (const auto& v : r.violations) msg += "\n  " + v;
    throw InvalidModel(msg);
  }
}

}  // namespace

Graph sample_graph(const DcsbmParams& p, std::uint64_t seed) {
  require_valid(p);
  const auto agg = aggregates(p);
  auto prob = [&](Index u, Index v) { return edge_probability(p, agg, u, v); };
  return Graph::from_sorted_unique(p.n, kernels::sample_pairs(p.n, seed, prob));
}

Graph sample_graph_serial(const DcsbmParams& p, std::uint64_t seed) {
  require_valid(p);
  const auto agg = aggregates(p);
  auto prob = [&](Index u, Index v) { return edge_probability(p, agg, u, v); };
  return Graph::from_sorted_unique(p.n, kernels::serial::sample_pairs(p.n, seed, prob));
}

std::vector<std::pair<int, int>> identifiability_check(const DcsbmParams& p, double rel_tol) {
  const auto agg = aggregates(p);
  for (int i = 0; i < p.K; ++i)
    if (!(agg.M_bar[i] > 0.0))
      throw InvalidModel("M-bar_" + std::to_string(i) + " is zero");
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < p.K; ++i)
    for (int l = i + 1; l < p.K; ++l) {
      bool same = true;
      for (int j = 0; j < p.K && same; ++j) {
        const double x = p.block(i, j) / agg.M_bar[i];
        const double y = p.block(l, j) / agg.M_bar[l];
        same = std::abs(x - y) <= rel_tol * std::max(std::abs(x), std::abs(y));
      }
      if (same) out.emplace_back(i, l);
    }
  return out;
}

DcsbmParams reparameterize_equivalent(const DcsbmParams& p, int i, int l) {
  require_valid(p);
  if (i < 0 || l < 0 || i >= p.K || l >= p.K) throw InvalidArgument("community index out of range");
  if (i != l) {
    const auto bad = identifiability_check(p);
    auto pr = std::make_pair(std::min(i, l), std::max(i, l));
    if (std::find(bad.begin(), bad.end(), pr) == bad.end())
      throw InvalidArgument("pair (" + std::to_string(i) + "," + std::to_string(l) +
                            ") is identifiable; no equivalent merge exists");
  }
  const auto agg = aggregates(p);
  DcsbmParams q = p;
  for (int a = 0; a < p.K; ++a)
    for (int b = 0; b < p.K; ++b) q.block(a, b) = p.block(a, b) / (agg.M[a] * agg.M[b]);
  double num = 0.0;
  for (Index u = 0; u < p.n; ++u) num += p.weights[u] * agg.M[p.sigma[u]];
  const double f = num / agg.d_sum;
  for (Index u = 0; u < p.n; ++u) q.weights[u] = f * p.weights[u] * agg.M[p.sigma[u]];

  for (int j = 0; j < p.K; ++j) {
    const double x = q.block(i, j), y = q.block(l, j);
    if (std::abs(x - y) > 1e-9 * std::max(std::abs(x), std::abs(y)))
      throw InvalidModel("reparameterization left rows " + std::to_string(i) + "," + std::to_string(l) +
                         " unequal");
  }
  const auto qagg = aggregates(q);
  for (Index u = 0; u < p.n; ++u)
    for (Index v = u + 1; v < p.n; ++v) {
      const double a = edge_probability(p, agg, u, v), b = edge_probability(q, qagg, u, v);
      if (std::abs(a - b) > 1e-10 * std::max(std::abs(a), 1e-300))
        throw InvalidModel("reparameterization changed edge probability at (" + std::to_string(u) + "," +
                           std::to_string(v) + ")");
    }
  return q;
}

double expected_degree(const DcsbmParams& p, const ModelAggregates& agg, Index u) {
  const int s = p.sigma[u];
  return p.weights[u] / agg.d_sum * (agg.M[s] - p.weights[u] * p.block(s, s));
}

std::vector<double> expected_degrees(const DcsbmParams& p) {
  const auto agg = aggregates(p);
  std::vector<double> d(p.n);
  for (Index u = 0; u < p.n; ++u) d[u] = expected_degree(p, agg, u);
  return d;
}

}  // namespace dcsbm

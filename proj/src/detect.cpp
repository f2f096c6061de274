#include "dcsbm/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "dcsbm/kernels.hpp"
#include "dcsbm/operators.hpp"
#include "dcsbm/rng.hpp"

namespace dcsbm {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::vector<Index> all_nodes(Index n) {
  std::vector<Index> v(n);
  for (Index i = 0; i < n; ++i) v[i] = i;
  return v;
}

std::vector<Index> non_isolated(const Graph& g) {
  std::vector<Index> v;
  for (Index u = 0; u < g.n(); ++u)
    if (g.degree(u) > 0) v.push_back(u);
  return v;
}

Index default_pairs(double f, const DetectConfig& cfg) {
  if (cfg.tau > 0) return cfg.tau;
  const auto lit = static_cast<Index>(std::ceil(std::pow(f, -1.0 / 3.0) - 1e-12));
  return std::max(lit, cfg.min_pairs);
}

void assign_leftovers(const Embedding& emb, Clustering& c, const std::vector<Index>& nodes) {
  if (c.count == 0) return;
  for (Index u : nodes) {
    if (c.labels[u] != kUnassigned) continue;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < c.count; ++k) {
      const double d = (emb.rows.row(u) - c.centres.row(k)).squaredNorm();
      if (d < best) {
        best = d;
        c.labels[u] = k;
      }
    }
  }
}

EigenSystem leading_until(const SymMatrix& h, double threshold, const EigsOptions& opt) {
  Index k = std::min<Index>(h.n(), 4);
  for (;;) {
    EigenSystem es = eigs_topk(h, k, opt);
    if (k == h.n() || std::abs(es.values[k - 1]) <= threshold) return es;
    k = std::min<Index>(h.n(), 2 * k);
  }
}

Detection finish(const Graph& g, const DetectConfig& cfg, Detection det, const EigenSystem& es,
                 Index L, const std::optional<BallCriterion>& fixed) {
  const auto eligible = non_isolated(g);
  const Embedding emb = embed(es, L);
  det.pairs = default_pairs(det.f, cfg);
  det.eps = gap_estimate(emb, det.f, det.pairs, derive_seed(cfg.seed, 0x9a9), eligible);
  Clustering c;
  if (!det.eps) {
    c.labels.assign(g.n(), kUnassigned);
    c.count = 1;
    c.centres = Eigen::MatrixXd::Zero(1, emb.dim());
    for (Index u : eligible) {
      c.labels[u] = 0;
      c.centres.row(0) += emb.rows.row(u);
    }
    if (!eligible.empty()) c.centres /= static_cast<double>(eligible.size());
    c.warnings.push_back("single cluster evidence: no sampled distance exceeds f^(2/3)");
  } else {
    BallCriterion crit;
    if (fixed) {
      crit = *fixed;
    } else {
      double frac = std::cbrt(det.f);
      if (cfg.ball_rule == BallRule::Adaptive) frac = std::min(frac, 1.0 / (2.0 * static_cast<double>(L)));
      crit.min_count = frac * static_cast<double>(g.n());
    }
    c = ball_cluster(emb, *det.eps, crit, LeftoverPolicy::Unassigned, eligible);
  }
  if (cfg.leftover == LeftoverPolicy::NearestCentre) assign_leftovers(emb, c, all_nodes(g.n()));
  if (g.isolated_count() > 0 && cfg.leftover == LeftoverPolicy::Unassigned)
    c.warnings.push_back(std::to_string(g.isolated_count()) + " isolated vertices left unassigned");
  det.clustering = std::move(c);
  return det;
}

}  // namespace

double Embedding::distance(Index u, Index v) const {
  return std::sqrt(static_cast<double>(n())) * (rows.row(u) - rows.row(v)).norm();
}

std::vector<Index> Clustering::sizes() const {
  std::vector<Index> s(count, 0);
  for (int l : labels)
    if (l >= 0) ++s[l];
  return s;
}

Index Clustering::unassigned() const {
  return std::count(labels.begin(), labels.end(), kUnassigned);
}

double regime_bound(Regime regime, Index n, Index d1_hat) {
  if (n < 2) throw InvalidArgument("f_value: n must be at least 2");
  if (d1_hat < 1) throw InvalidArgument("f_value: no nonzero degree available");
  const double logn = std::log(static_cast<double>(n));
  const double d1 = static_cast<double>(d1_hat);
  const double common = 1.0 / d1 + 1.0 / std::sqrt(logn);
  return regime == Regime::SuperLog ? common + std::sqrt(logn / d1) : common + 1.0 / std::cbrt(logn);
}

double f_value(const DetectConfig& cfg, Index n, Index d1_hat) {
  if (!(cfg.f_multiplier > 0.0) || !std::isfinite(cfg.f_multiplier))
    throw InvalidArgument("f_multiplier must be finite and positive");
  const double f = cfg.f_multiplier * std::sqrt(regime_bound(cfg.regime, n, d1_hat));
  return std::clamp(f, std::numeric_limits<double>::min(), std::nextafter(1.0, 0.0));
}

Index rank_estimate(const EigenSystem& eigs, double f, double avg_degree) {
  if (!(avg_degree > 0.0)) return 0;
  const double thr = f / avg_degree;
  Index L = 0;
  for (Index i = 0; i < eigs.size(); ++i)
    if (std::abs(eigs.values[i]) > thr) ++L;
  return L;
}

Embedding embed(const EigenSystem& eigs, Index L) {
  if (L < 0 || L > eigs.size()) throw InvalidArgument("embed: L exceeds available eigenpairs");
  return Embedding{eigs.vectors.leftCols(L)};
}

std::optional<double> gap_estimate(const Embedding& emb, double f, Index tau, std::uint64_t seed,
                                   const std::vector<Index>& eligible) {
  const std::vector<Index> nodes = eligible.empty() ? all_nodes(emb.n()) : eligible;
  const auto m = static_cast<Index>(nodes.size());
  if (m < 2) return std::nullopt;
  if (tau <= 0) tau = static_cast<Index>(std::ceil(std::pow(f, -1.0 / 3.0) - 1e-12));
  const double total = 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
  tau = static_cast<Index>(std::min<double>(static_cast<double>(tau), total));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> pick(0, m - 1);
  std::set<std::pair<Index, Index>> seen;
  const double cut = std::pow(f, 2.0 / 3.0);
  std::optional<double> eps;
  while (static_cast<Index>(seen.size()) < tau) {
    Index a = pick(rng), b = pick(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) continue;
    const double d = emb.distance(nodes[a], nodes[b]);
    if (d > cut && (!eps || d < *eps)) eps = d;
  }
  return eps;
}

Clustering ball_cluster(const Embedding& emb, double eps, double f, LeftoverPolicy policy) {
  BallCriterion crit{std::cbrt(f) * static_cast<double>(emb.n()), false};
  Clustering c = ball_cluster(emb, eps, crit, LeftoverPolicy::Unassigned);
  if (policy == LeftoverPolicy::NearestCentre) assign_leftovers(emb, c, all_nodes(emb.n()));
  return c;
}

Clustering ball_cluster(const Embedding& emb, double eps, const BallCriterion& crit,
                        LeftoverPolicy policy, const std::vector<Index>& eligible) {
  if (!(eps > 0.0)) throw InvalidArgument("ball_cluster: eps must be positive");
  const Index n = emb.n(), d = emb.dim();
  const RowMatrix pts = emb.rows * std::sqrt(static_cast<double>(n));
  const double r8 = (eps / 8.0) * (eps / 8.0), r4 = (eps / 4.0) * (eps / 4.0);
  auto qualifies = [&](Index cnt) {
    const double c = static_cast<double>(cnt);
    return crit.inclusive ? c >= crit.min_count : c > crit.min_count;
  };

  Clustering out;
  out.labels.assign(n, kUnassigned);
  std::vector<Index> remaining = eligible.empty() ? all_nodes(n) : eligible;
  std::vector<Eigen::VectorXd> centres;
  constexpr Index chunk = 64;
  std::vector<Index> counts(chunk);

  for (;;) {
    Index m = -1;
    for (std::size_t s = 0; s < remaining.size() && m < 0; s += chunk) {
      const auto len = static_cast<Index>(std::min<std::size_t>(chunk, remaining.size() - s));
      std::span<const Index> cand(remaining.data() + s, len);
      kernels::ball_counts(pts.data(), d, cand, remaining, r8, counts.data());
      for (Index i = 0; i < len; ++i)
        if (qualifies(counts[i])) {
          m = cand[i];
          break;
        }
    }
    if (m < 0) break;
    const int label = out.count++;
    centres.push_back(emb.rows.row(m).transpose());
    std::vector<Index> keep;
    for (Index u : remaining) {
      if ((pts.row(u) - pts.row(m)).squaredNorm() <= r4)
        out.labels[u] = label;
      else
        keep.push_back(u);
    }
    remaining.swap(keep);
    if (remaining.empty()) break;
  }

  if (out.count == 0) {
    out.warnings.push_back("no vertex qualifies as a centre; returning one community");
    out.count = 1;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    for (Index u : remaining) {
      out.labels[u] = 0;
      mean += emb.rows.row(u).transpose();
    }
    if (!remaining.empty()) mean /= static_cast<double>(remaining.size());
    centres.push_back(mean);
  }
  out.centres.resize(out.count, d);
  for (int k = 0; k < out.count; ++k) out.centres.row(k) = centres[k].transpose();
  if (policy == LeftoverPolicy::NearestCentre)
    assign_leftovers(emb, out, eligible.empty() ? all_nodes(n) : eligible);
  return out;
}

Detection detect_communities(const Graph& g, const DetectConfig& cfg) {
  if (g.n() < 2) throw InvalidArgument("detect_communities: graph needs at least two nodes");
  Detection det;
  det.avg_degree = g.average_degree();
  if (g.num_edges() == 0) {
    det.clustering.labels.assign(g.n(), kUnassigned);
    det.clustering.warnings.push_back("graph has no edges; no communities detected");
    return det;
  }
  det.d1_hat = g.min_nonzero_degree();
  det.f = f_value(cfg, g.n(), det.d1_hat);
  det.threshold = det.f / det.avg_degree;
  const SymMatrix h = normalized_adjacency(g);
  const EigenSystem es = leading_until(h, det.threshold, cfg.eigs);
  det.eigenvalues = es.values;
  det.L_hat = rank_estimate(es, det.f, det.avg_degree);
  if (det.L_hat == 0) {
    det.clustering.labels.assign(g.n(), kUnassigned);
    det.clustering.warnings.push_back("no communities detected: threshold exceeds |lambda_1|");
    return det;
  }
  const Index L = det.L_hat;
  return finish(g, cfg, std::move(det), es, L, std::nullopt);
}

Detection detect_with_known_L(const Graph& g, Index L, double alpha_min, const DetectConfig& cfg) {
  if (L < 1 || L > g.n()) throw InvalidArgument("known L must satisfy 1 <= L <= n");
  if (!(alpha_min > 0.0) || alpha_min > 1.0) throw InvalidArgument("alpha_min must lie in (0, 1]");
  if (g.num_edges() == 0) throw InvalidArgument("detect_with_known_L: graph has no edges");
  Detection det;
  det.avg_degree = g.average_degree();
  det.d1_hat = g.min_nonzero_degree();
  det.f = f_value(cfg, g.n(), det.d1_hat);
  det.threshold = det.f / det.avg_degree;
  det.L_hat = L;
  const EigenSystem es = eigs_topk(normalized_adjacency(g), L, cfg.eigs);
  det.eigenvalues = es.values;
  BallCriterion crit{alpha_min * static_cast<double>(g.n()) / 2.0, true};
  return finish(g, cfg, std::move(det), es, L, crit);
}

Regime parse_regime(const std::string& s) {
  if (s == "superlog") return Regime::SuperLog;
  if (s == "logorder") return Regime::LogOrder;
  throw InvalidArgument("unknown regime '" + s + "' (expected superlog or logorder)");
}

LeftoverPolicy parse_leftover(const std::string& s) {
  if (s == "unassigned") return LeftoverPolicy::Unassigned;
  if (s == "nearest") return LeftoverPolicy::NearestCentre;
  throw InvalidArgument("unknown leftover policy '" + s + "' (expected unassigned or nearest)");
}

}  // namespace dcsbm

#include "dcsbm/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "dcsbm/operators.hpp"
#include "dcsbm/rng.hpp"

namespace dcsbm {

namespace {

Clustering from_kmeans(const Eigen::MatrixXd& rows, const std::vector<Index>& nodes, Index n, Index K,
                       const KmeansOptions& opt) {
  Clustering c;
  c.labels.assign(n, kUnassigned);
  if (nodes.empty()) return c;
  Eigen::MatrixXd pts(static_cast<Index>(nodes.size()), rows.cols());
  for (std::size_t i = 0; i < nodes.size(); ++i) pts.row(i) = rows.row(nodes[i]);
  const Index k = std::min<Index>(K, pts.rows());
  const KmeansResult km = kmeans(pts, k, opt);
  for (std::size_t i = 0; i < nodes.size(); ++i) c.labels[nodes[i]] = km.labels[i];
  c.count = static_cast<int>(k);
  c.centres = km.centres;
  return c;
}

std::vector<Index> iota_nodes(Index n) {
  std::vector<Index> v(n);
  std::iota(v.begin(), v.end(), Index{0});
  return v;
}

}  // namespace

Clustering adjacency_spectral(const Graph& g, Index K, const SpectralOptions& opt) {
  if (K < 1) throw InvalidArgument("K must be at least 1");
  const EigenSystem es = eigs_topk(adjacency(g), K, opt.eigs);
  return from_kmeans(es.vectors, iota_nodes(g.n()), g.n(), K, opt.kmeans);
}

double StarDominanceReport::min_cosine() const {
  double m = 1.0;
  for (const auto& s : matches) m = std::min(m, s.cosine);
  return m;
}

StarDominanceReport star_dominance(const Graph& g, Index k, const EigsOptions& opt) {
  if (k < 1 || k > g.n()) throw InvalidArgument("star_dominance: k must lie in [1, n]");
  std::vector<Index> order = iota_nodes(g.n());
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return g.degree(a) > g.degree(b); });
  order.resize(k);

  StarDominanceReport r;
  std::vector<char> taken(g.n(), 0);
  for (Index c : order) taken[c] = 1;
  for (Index c : order) {
    Star s{c, {}};
    for (Index v : g.neighbors(c))
      if (!taken[v]) s.leaves.push_back(v);
    for (Index v : g.neighbors(c)) taken[v] = 1;
    r.stars.push_back(std::move(s));
  }

  std::vector<double> spectrum{0.0};
  std::vector<Eigen::VectorXd> ideal;  // star j: index 2j (+), 2j+1 (-)
  for (const auto& s : r.stars) {
    const double d = static_cast<double>(s.leaves.size());
    spectrum.push_back(std::sqrt(d));
    spectrum.push_back(-std::sqrt(d));
    for (int parity : {1, -1}) {
      Eigen::VectorXd x = Eigen::VectorXd::Zero(g.n());
      x[s.centre] = 1.0 / std::sqrt(2.0);
      for (Index v : s.leaves) x[v] = parity / std::sqrt(2.0 * d);
      if (s.leaves.empty()) x[s.centre] = 1.0;
      ideal.push_back(std::move(x));
    }
  }
  r.gap = eigen_gap(spectrum).value_or(0.0);

  const EigenSystem es = eigs_topk(adjacency(g), k, opt);
  for (Index i = 0; i < k; ++i) {
    StarMatch m;
    m.eigen_index = i;
    m.eigenvalue = es.values[i];
    for (std::size_t q = 0; q < ideal.size(); ++q) {
      const double c = std::abs(es.vectors.col(i).dot(ideal[q]));
      if (c > m.cosine) {
        m.cosine = c;
        m.star = static_cast<Index>(q / 2);
        m.parity = (q % 2 == 0) ? 1 : -1;
      }
    }
    const Star& s = r.stars[m.star];
    double mass = es.vectors(s.centre, i) * es.vectors(s.centre, i);
    for (Index v : s.leaves) mass += es.vectors(v, i) * es.vectors(v, i);
    m.localization = mass;
    r.matches.push_back(m);
  }
  return r;
}

Clustering laplacian_spectral(const Graph& g, Index K, double tau, const LaplacianOptions& opt) {
  if (K < 1) throw InvalidArgument("K must be at least 1");
  const Index dims = opt.dims > 0 ? opt.dims : K;
  const EigenSystem es = eigs_topk(laplacian(g, tau), dims, opt.spectral.eigs);
  Eigen::MatrixXd rows = es.vectors;
  std::vector<Index> nodes;
  for (Index u = 0; u < g.n(); ++u) {
    const double norm = rows.row(u).norm();
    if (norm == 0.0) continue;
    if (opt.project) rows.row(u) /= norm;
    nodes.push_back(u);
  }
  Clustering c = from_kmeans(rows, nodes, g.n(), K, opt.spectral.kmeans);
  if (static_cast<Index>(nodes.size()) < g.n())
    c.warnings.push_back(std::to_string(g.n() - static_cast<Index>(nodes.size())) + " zero rows left unassigned");
  return c;
}

Clustering score_cluster(const Graph& g, Index K, const SpectralOptions& opt) {
  if (K < 2) throw InvalidArgument("score_cluster: K must be at least 2");
  const auto giant = giant_component(g);
  const Graph sub = g.induced(giant);
  const Index m = sub.n();
  if (K > m) throw InvalidArgument("score_cluster: K exceeds the giant component size");
  const EigenSystem es = eigs_topk(adjacency(sub), K, opt.eigs);
  const double clip = std::log(static_cast<double>(g.n()));
  Eigen::MatrixXd ratio(m, K - 1);
  for (Index u = 0; u < m; ++u) {
    const double x1 = es.vectors(u, 0);
    if (x1 == 0.0) throw InvalidArgument("score_cluster: leading eigenvector vanishes at a node");
    for (Index i = 1; i < K; ++i) ratio(u, i - 1) = std::clamp(es.vectors(u, i) / x1, -clip, clip);
  }
  Clustering local = from_kmeans(ratio, iota_nodes(m), m, K, opt.kmeans);
  Clustering c;
  c.labels.assign(g.n(), kUnassigned);
  for (Index u = 0; u < m; ++u) c.labels[giant[u]] = local.labels[u];
  c.count = local.count;
  c.centres = local.centres;
  if (m < g.n()) c.warnings.push_back(std::to_string(g.n() - m) + " nodes outside the giant component");
  return c;
}

ThresholdResult threshold_split(Eigen::VectorXd x, double threshold) {
  fix_sign(x);
  ThresholdResult r;
  r.clustering.labels.assign(x.size(), 0);
  Index ones = 0;
  for (Index u = 0; u < x.size(); ++u)
    if (x[u] > threshold) {
      r.clustering.labels[u] = 1;
      ++ones;
    }
  r.degenerate = ones == 0 || ones == x.size();
  if (r.degenerate) {
    std::fill(r.clustering.labels.begin(), r.clustering.labels.end(), 0);
    r.clustering.count = 1;
    r.clustering.warnings.push_back("degenerate split: one side is empty");
  } else {
    r.clustering.count = 2;
  }
  r.vector = std::move(x);
  return r;
}

ThresholdResult frobenius_threshold(const SymMatrix& m, Index index, double threshold, const EigsOptions& opt) {
  if (index < 1 || index > m.n()) throw InvalidArgument("frobenius_threshold: index must lie in [1, n]");
  const EigenSystem es = eigs_topk(m, index, opt);
  ThresholdResult r = threshold_split(es.vectors.col(index - 1), threshold);
  r.eigenvalue = es.values[index - 1];
  return r;
}

PlantedHubsInstance planted_hubs(const PlantedHubsConfig& cfg, std::uint64_t seed) {
  const Index k = static_cast<Index>(cfg.hub_degrees.size());
  const Index nb = cfg.n - k;
  const Index need = std::accumulate(cfg.hub_degrees.begin(), cfg.hub_degrees.end(), Index{0});
  if (nb < 2 || need > nb) throw InvalidArgument("planted_hubs: hub degrees exceed the bulk size");
  Eigen::MatrixXd block(2, 2);
  block << cfg.a, cfg.b, cfg.b, cfg.a;
  const DcsbmParams bulk = make_params(nb, block, {0.5, 0.5}, std::vector<double>(nb, cfg.bulk_weight));
  const Graph gb = sample_graph(bulk, seed);

  std::vector<Edge> edges = gb.edges();
  std::vector<Index> perm(nb);
  std::iota(perm.begin(), perm.end(), Index{0});
  std::mt19937_64 rng(derive_seed(seed, 0x4855));
  std::shuffle(perm.begin(), perm.end(), rng);
  PlantedHubsInstance inst;
  Index pos = 0;
  for (Index j = 0; j < k; ++j) {
    const Index hub = nb + j;
    inst.hubs.push_back(hub);
    for (Index t = 0; t < cfg.hub_degrees[j]; ++t) edges.push_back({perm[pos++], hub});
  }
  inst.graph = Graph::from_edges(cfg.n, std::move(edges));
  inst.truth = bulk.sigma;
  for (Index j = 0; j < k; ++j) inst.truth.push_back(static_cast<int>(j % 2));
  return inst;
}

DcsbmParams power_law_hub_params(Index n, double d1, double beta, double gamma, const Eigen::MatrixXd& block) {
  if (block.rows() != 2 || block.cols() != 2) throw InvalidArgument("power_law_hub_params: block must be 2 x 2");
  const Index k = std::max<Index>(1, static_cast<Index>(std::llround(std::pow(static_cast<double>(n), beta))));
  const double boost = std::pow(static_cast<double>(n), gamma);
  std::vector<double> w(n);
  for (Index u = 1; u <= n; ++u) w[u - 1] = u < n - k ? d1 : d1 * boost * static_cast<double>(u + 1 - (n - k));
  std::vector<int> sigma(n);
  const Index half = n / 2;
  for (Index u = 1; u <= n; ++u) sigma[u - 1] = u <= half ? 1 : 0;
  const double a1 = static_cast<double>(n - half) / static_cast<double>(n);
  return make_params(n, block, {a1, 1.0 - a1}, std::move(w), std::move(sigma));
}

}  // namespace dcsbm

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "dcsbm/detect.hpp"
#include "dcsbm/eigen_solver.hpp"
#include "dcsbm/graph.hpp"
#include "dcsbm/kmeans.hpp"
#include "dcsbm/model.hpp"
#include "dcsbm/sym_matrix.hpp"

namespace dcsbm {

struct SpectralOptions {
  KmeansOptions kmeans;
  EigsOptions eigs;
};

// Top-K eigenvectors of A, rows clustered by k-means.
Clustering adjacency_spectral(const Graph& g, Index K, const SpectralOptions& opt = {});

struct Star {
  Index centre = 0;
  std::vector<Index> leaves;
};

struct StarMatch {
  Index eigen_index = 0;
  double eigenvalue = 0.0;
  Index star = 0;          // best-matching star
  int parity = 1;          // +1: leaves share the centre's sign
  double cosine = 0.0;     // |<x, ideal star vector>|
  double localization = 0.0;  // l2 mass of x on the star's vertices
};

struct StarDominanceReport {
  std::vector<Star> stars;
  std::vector<StarMatch> matches;  // one per top-k eigenvector of A
  double gap = 0.0;                // Delta of the star system's spectrum
  double min_cosine() const;
};

// Star system built greedily from the k highest-degree nodes; each of the
// top-k adjacency eigenvectors is compared with the +/- star eigenvectors.
StarDominanceReport star_dominance(const Graph& g, Index k, const EigsOptions& opt = {});

struct LaplacianOptions {
  Index dims = 0;        // eigenvectors used; 0 means K
  bool project = true;   // project rows onto the unit sphere
  SpectralOptions spectral;
};

Clustering laplacian_spectral(const Graph& g, Index K, double tau, const LaplacianOptions& opt = {});

// Ratios of the leading adjacency eigenvectors on the giant component.
Clustering score_cluster(const Graph& g, Index K, const SpectralOptions& opt = {});

struct ThresholdResult {
  Clustering clustering;
  Eigen::VectorXd vector;
  double eigenvalue = 0.0;
  bool degenerate = false;  // one side empty
};

// index-th eigenvector (1 = leading, by |lambda|), split at threshold after
// sign fixing: label 1 where x_u > threshold, else 0.
ThresholdResult frobenius_threshold(const SymMatrix& m, Index index, double threshold = 0.0,
                                    const EigsOptions& opt = {});
ThresholdResult threshold_split(Eigen::VectorXd x, double threshold = 0.0);

// Desk-scale hub instance: a two-block EPPM bulk plus k hubs attached to
// disjoint random sets of bulk vertices.
struct PlantedHubsConfig {
  Index n = 4000;
  double bulk_weight = 18.0;
  double a = 1.9;
  double b = 0.1;
  std::vector<Index> hub_degrees{150, 250, 500, 1100, 1950};
};

struct PlantedHubsInstance {
  Graph graph;
  std::vector<int> truth;
  std::vector<Index> hubs;
};

PlantedHubsInstance planted_hubs(const PlantedHubsConfig& cfg, std::uint64_t seed);

// Weights D_1 for u < n-k and D_1 n^gamma (u + 1 - (n-k)) for the top k = n^beta
// nodes (1-based u), first half of the nodes in community 1, second in 0.
DcsbmParams power_law_hub_params(Index n, double d1, double beta, double gamma, const Eigen::MatrixXd& block);

}  // namespace dcsbm

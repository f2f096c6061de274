#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dcsbm/eigen_solver.hpp"
#include "dcsbm/graph.hpp"

namespace dcsbm {

enum class Regime { SuperLog, LogOrder };
enum class LeftoverPolicy { Unassigned, NearestCentre };

// Literal: a centre's eps/8-ball needs more than f^{1/3} n members.
// Adaptive: more than min(f^{1/3}, 1/(2 L)) n members.
enum class BallRule { Literal, Adaptive };

struct DetectConfig {
  Regime regime = Regime::SuperLog;
  double f_multiplier = 1.0;
  std::uint64_t seed = 1;
  LeftoverPolicy leftover = LeftoverPolicy::Unassigned;
  BallRule ball_rule = BallRule::Adaptive;
  Index tau = 0;         // pair count override; 0 uses the rule below
  Index min_pairs = 32;  // tau = max(ceil(f^{-1/3}), min_pairs)
  EigsOptions eigs;
};

// Rows z_u of the leading eigenvectors. Distances use sqrt(n) scaling.
struct Embedding {
  Eigen::MatrixXd rows;  // n x L
  Index n() const noexcept { return rows.rows(); }
  Index dim() const noexcept { return rows.cols(); }
  double distance(Index u, Index v) const;
};

struct Clustering {
  std::vector<int> labels;  // kUnassigned for unassigned nodes
  int count = 0;
  Eigen::MatrixXd centres;  // count x dim
  std::vector<std::string> warnings;
  std::vector<Index> sizes() const;
  Index unassigned() const;
};

struct BallCriterion {
  double min_count = 0.0;
  bool inclusive = false;  // >= instead of >
};

struct Detection {
  Clustering clustering;
  Index L_hat = 0;
  Index d1_hat = 0;
  double f = 0.0;
  double avg_degree = 0.0;
  double threshold = 0.0;  // f / avg_degree
  std::optional<double> eps;
  Index pairs = 0;
  Eigen::VectorXd eigenvalues;
};

// The regime's error bound b(n) before taking the square root.
double regime_bound(Regime regime, Index n, Index d1_hat);
double f_value(const DetectConfig& cfg, Index n, Index d1_hat);

Index rank_estimate(const EigenSystem& eigs, double f, double avg_degree);
Embedding embed(const EigenSystem& eigs, Index L);

// Literal pair count ceil(f^{-1/3}) when tau == 0. Pairs are distinct
// unordered pairs drawn among `eligible` (all nodes when empty). Returns
// nothing when no sampled distance exceeds f^{2/3}.
std::optional<double> gap_estimate(const Embedding& emb, double f, Index tau, std::uint64_t seed,
                                   const std::vector<Index>& eligible = {});

// Literal rule: threshold f^{1/3} n, strict.
Clustering ball_cluster(const Embedding& emb, double eps, double f, LeftoverPolicy policy);
Clustering ball_cluster(const Embedding& emb, double eps, const BallCriterion& crit,
                        LeftoverPolicy policy, const std::vector<Index>& eligible = {});

Detection detect_communities(const Graph& g, const DetectConfig& cfg);
Detection detect_with_known_L(const Graph& g, Index L, double alpha_min, const DetectConfig& cfg);

Regime parse_regime(const std::string& s);
LeftoverPolicy parse_leftover(const std::string& s);

}  // namespace dcsbm

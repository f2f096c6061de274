#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dcsbm/detect.hpp"
#include "dcsbm/eigen_solver.hpp"
#include "dcsbm/graph.hpp"
#include "dcsbm/model.hpp"

namespace dcsbm {

struct Misclassification {
  double fraction = 0.0;
  Index errors = 0;
  std::vector<int> matching;  // predicted cluster -> truth label, -1 if unmatched
};

// Optimal injective matching of predicted clusters to truth labels
// (Hungarian). Unassigned predictions always count as errors.
Misclassification misclassification(const std::vector<int>& predicted, const std::vector<int>& truth);
inline Misclassification misclassification(const Clustering& c, const std::vector<int>& truth) {
  return misclassification(c.labels, truth);
}

// Minimum-cost perfect assignment on a square cost matrix; returns row -> col.
std::vector<int> hungarian(const Eigen::MatrixXd& cost);

struct ConcentrationReport {
  double rho_hat_h = 0.0;  // rho(H-hat - H)
  double rho_h_eh = 0.0;   // rho(H - E[H])
  double rho_eh_p = 0.0;   // rho(E[H] - P)
  double rho_w = 0.0;      // rho(H-hat - P)
  double gap_p = 0.0;      // Delta(P)
  double d_bar = 0.0;
  double ratio_hat_h = 0.0, ratio_h_eh = 0.0, ratio_eh_p = 0.0, ratio_w = 0.0;  // rho * D-bar
  double w_over_gap = 0.0;
  bool triangle_ok(double rel_slack = 1e-12) const {
    return rho_w <= (rho_hat_h + rho_h_eh + rho_eh_p) * (1.0 + rel_slack);
  }
};

inline constexpr Index kDenseLimit = 4096;

ConcentrationReport concentration_report(const Graph& g, const DcsbmParams& p,
                                         const EigsOptions& opt = {});

// Delta(P) from the spectrum of Z scaled by 1/D-bar, with 0 added when P is
// rank deficient.
double population_gap(const DcsbmParams& p);

struct RandomWalkReport {
  double identity_residual = 0.0;  // max_v |sum_u D-hat_u H-hat_uv - 1{D-hat_v != 0}|
  double lambda_max = 0.0;
  double lower = 0.0;              // 1 / max degree
  double upper = 0.0;              // max row sum of H-hat
  bool lower_ok = true;
  bool upper_ok = true;
  double walk_product_error = 0.0; // max |H-hat_uv - P(u->v) P(v->u)| over checked edges
};

RandomWalkReport random_walk_checks(const Graph& g, Index edge_samples = 1000, std::uint64_t seed = 7);

// (sum_u D-hat_u) (sum_{tau_u=i, tau_v=j} H-hat_uv) / (n_i n_j).
Eigen::MatrixXd estimate_block_ratios(const Graph& g, const Clustering& c);

struct ObservationCheck {
  double lhs = 0.0;  // E#edges(i,j) / E total degree(i)
  double rhs = 0.0;  // E#edges(l,j) / E total degree(l)
  bool premise = false;  // B_ij / M_i == B_lj / M_l
  bool equal = false;
  bool implication_holds() const { return !premise || equal; }
};

ObservationCheck observation_ratio_check(const DcsbmParams& p, int i, int j, int l);

}  // namespace dcsbm

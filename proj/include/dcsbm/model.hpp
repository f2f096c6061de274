#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dcsbm/graph.hpp"

namespace dcsbm {

struct DcsbmParams {
  Index n = 0;
  int K = 1;
  std::vector<double> alpha;    // community fractions
  std::vector<int> sigma;       // labels in {0..K-1}
  std::vector<double> weights;  // D_u > 0
  Eigen::MatrixXd block;        // K x K, symmetric, nonnegative
};

struct ModelAggregates {
  double d_sum = 0.0;                 // sum_l D_l
  double d_bar = 0.0;                 // D-bar
  std::vector<Index> block_size;      // n_i
  Eigen::VectorXd block_weight;       // sum_{sigma_l = i} D_l
  Eigen::VectorXd d_bar_per_block;    // D-bar_i
  Eigen::VectorXd M;                  // M_i = sum_l D_l B_{i sigma_l}
  Eigen::VectorXd M_bar;              // M_i / sum_l D_l
  Eigen::VectorXd d_ratio;            // D-bar_i / D-bar
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> advisories;
  double max_edge_probability = 0.0;
  bool valid() const noexcept { return violations.empty(); }
};

// Sizes round(alpha_k n) with largest-remainder correction so they sum to n.
std::vector<Index> community_sizes(const std::vector<double>& alpha, Index n);

// Labels 0..K-1 laid out in contiguous runs of the given sizes.
std::vector<int> contiguous_labels(const std::vector<Index>& sizes);

// Fills alpha-consistent contiguous sigma when sigma is empty.
DcsbmParams make_params(Index n, Eigen::MatrixXd block, std::vector<double> alpha,
                        std::vector<double> weights, std::vector<int> sigma = {});

ValidationReport validate(const DcsbmParams& p);
ModelAggregates aggregates(const DcsbmParams& p);

// Unchecked D_u D_v B / (n D-bar); 0 on the diagonal.
double edge_probability(const DcsbmParams& p, const ModelAggregates& agg, Index u, Index v);
// Checked variant: throws InvalidModel if the value exceeds 1.
double edge_probability(const DcsbmParams& p, Index u, Index v);

Graph sample_graph(const DcsbmParams& p, std::uint64_t seed);
// Serial reference sampler (same output as sample_graph).
Graph sample_graph_serial(const DcsbmParams& p, std::uint64_t seed);

// Community pairs (i, l), i < l, whose normalized rows B_i./M-bar_i agree.
std::vector<std::pair<int, int>> identifiability_check(const DcsbmParams& p,
                                                       double rel_tol = 1e-9);

// Equivalent parameterization with B*_{kl} = B_{kl}/(M_k M_l). Requires the
// pair (i, l) to be non-identifiable; i == l is accepted.
DcsbmParams reparameterize_equivalent(const DcsbmParams& p, int i, int l);

double expected_degree(const DcsbmParams& p, const ModelAggregates& agg, Index u);
std::vector<double> expected_degrees(const DcsbmParams& p);

}  // namespace dcsbm

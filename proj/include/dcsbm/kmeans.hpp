#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "dcsbm/common.hpp"

namespace dcsbm {

struct KmeansOptions {
  Index restarts = 50;
  Index max_iter = 300;
  std::uint64_t seed = 1;
};

struct KmeansResult {
  std::vector<int> labels;
  Eigen::MatrixXd centres;         // K x d
  double wcss = 0.0;
  Index best_restart = 0;
  std::vector<double> trace;       // objective per Lloyd iteration of the best restart
};

// Lloyd iterations from k-means++ seeding; best restart by WCSS (ties: lowest
// restart index). Points are rows. Throws InvalidArgument if K > n or K < 1.
KmeansResult kmeans(const Eigen::MatrixXd& points, Index K, const KmeansOptions& opt = {});

}  // namespace dcsbm

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dcsbm/common.hpp"
#include "dcsbm/kernels.hpp"

namespace dcsbm {

struct Triplet {
  Index row = 0;
  Index col = 0;
  double value = 0.0;
};

// Symmetric real matrix with sparse (CSR, both triangles) or dense storage.
// Sparse entries are written once and mirrored, so (u,v) == (v,u) exactly.
class SymMatrix {
 public:
  SymMatrix() = default;

  // Entries with row <= col; duplicates are summed, zeros dropped.
  static SymMatrix sparse(Index n, std::vector<Triplet> upper);
  // The upper triangle of m is mirrored into the lower triangle.
  static SymMatrix dense(Eigen::MatrixXd m);

  Index n() const noexcept { return n_; }
  bool is_dense() const noexcept { return dense_; }
  Index nonzeros() const noexcept;

  void multiply(const double* x, double* y) const;
  void multiply_serial(const double* x, double* y) const;
  Eigen::VectorXd operator*(const Eigen::VectorXd& x) const;

  double at(Index u, Index v) const;
  Eigen::MatrixXd to_dense() const;
  Eigen::VectorXd row_sums() const;
  // Upper-triangle nonzeros in row-major order.
  std::vector<Triplet> upper_triplets() const;

  const Eigen::MatrixXd& dense_storage() const noexcept { return mat_; }
  kernels::CsrView csr() const noexcept {
    return {n_, offsets_.data(), cols_.data(), vals_.data()};
  }

 private:
  Index n_ = 0;
  bool dense_ = false;
  std::vector<Index> offsets_{0};
  std::vector<Index> cols_;
  std::vector<double> vals_;
  Eigen::MatrixXd mat_;
};

// Entrywise absolute value.
SymMatrix abs(const SymMatrix& m);

}  // namespace dcsbm

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dcsbm/sym_matrix.hpp"

namespace dcsbm {

// Eigenpairs ordered by descending |lambda| (ties: descending lambda, then
// solver order). Each vector's largest-magnitude entry is positive.
struct EigenSystem {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // n x k, orthonormal columns
  Eigen::VectorXd residuals;
  Index iterations = 0;
  Index size() const noexcept { return values.size(); }
};

struct EigsOptions {
  double tol = 1e-10;          // bound on ||M x - lambda x||
  Index max_iter = 0;          // matrix-vector products; 0 means 10 n
  Index dense_threshold = 512; // n at or below this uses the dense solver
  std::uint64_t seed = 0x6c616e637a6f73ULL;
};

EigenSystem eigs_topk(const SymMatrix& m, Index k, const EigsOptions& opt = {});

// Lanczos with full reorthogonalization regardless of size.
EigenSystem lanczos_topk(const SymMatrix& m, Index k, const EigsOptions& opt = {});

// Full spectrum of a dense symmetric matrix (LAPACK dsyevd), same ordering.
EigenSystem dense_spectrum(const Eigen::MatrixXd& m);
// Eigenvalues only, ascending.
Eigen::VectorXd dense_eigenvalues(const Eigen::MatrixXd& m);

double spectral_radius(const SymMatrix& m, const EigsOptions& opt = {});

// Smallest gap between distinct eigenvalues after merging values closer than
// merge_tol. Empty when fewer than two distinct values remain.
std::optional<double> eigen_gap(std::span<const double> values, double merge_tol = 1e-9);

// Sorts pairs by the |lambda| convention and fixes signs, in place.
void canonicalize(EigenSystem& es);
// Makes the largest-magnitude entry positive (ties within 1e-9 relative go to
// the lowest index).
void fix_sign(Eigen::Ref<Eigen::VectorXd> v);

}  // namespace dcsbm

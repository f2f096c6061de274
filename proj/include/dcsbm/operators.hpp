#pragma once

#include <Eigen/Dense>

#include "dcsbm/graph.hpp"
#include "dcsbm/model.hpp"
#include "dcsbm/sym_matrix.hpp"

namespace dcsbm {

SymMatrix adjacency(const Graph& g);

// H-hat: A_uv / (D-hat_u D-hat_v).
SymMatrix normalized_adjacency(const Graph& g);

// A_uv / max(D-hat_u D-hat_v, floor).
SymMatrix inflated_normalized_adjacency(const Graph& g, double floor);

// H: A_uv / (E[D-hat_u] E[D-hat_v]).
SymMatrix model_normalized(const Graph& g, const DcsbmParams& p);

// E[H], dense, zero diagonal.
SymMatrix expected_model_normalized(const DcsbmParams& p);

// P_uv = B_{sigma_u sigma_v} / (n D-bar M-bar_{sigma_u} M-bar_{sigma_v}), dense.
SymMatrix population_matrix(const DcsbmParams& p);

// Z_ij = alpha_j B_ij / (M-bar_i M-bar_j) with alpha_j = n_j / n.
Eigen::MatrixXd block_matrix_z(const DcsbmParams& p);

struct LiftedPair {
  Eigen::VectorXd w;  // w_u = y(sigma_u)
  double lambda = 0.0;  // eigenvalue of P
  double residual = 0.0;  // ||P w - lambda w|| / ||w||
};

// Throws InvalidArgument unless Z y = lambda y within 1e-8, and ConvergenceError
// if the lifted residual exceeds 1e-8.
LiftedPair lift_z_eigenvector(const DcsbmParams& p, const Eigen::VectorXd& y, double lambda);

enum class LaplacianForm { NormalizedAdjacency, IdentityMinus };

// D_tau^{-1/2} A D_tau^{-1/2} (or I minus it), D_tau = D-hat + tau I.
SymMatrix laplacian(const Graph& g, double tau, LaplacianForm form = LaplacianForm::NormalizedAdjacency);

// E[D]^{-1/2} E[A] E[D]^{-1/2} with E[D] the exact expected degrees, dense.
SymMatrix expected_normalized_laplacian(const DcsbmParams& p);

}  // namespace dcsbm

#pragma once

#include <vector>

#include "dcsbm/sym_matrix.hpp"

namespace dcsbm {

// Eigenvalues sorted in descending signed order: mu_i for A, lambda_i for A+dA.
struct AlignmentEntry {
  double lambda = 0.0;
  double mu = 0.0;
  double abs_diff = 0.0;
  bool weyl_ok = false;        // |lambda_i - mu_i| <= rho(dA)
  Index dim_perturbed = 0;     // multiplicity of lambda_i in A + dA
  Index dim_unperturbed = 0;   // multiplicity of mu_i in A
  bool dim_ok = false;
  double dot = 0.0;            // best v_i . v-hat over the mu_i-eigenspace of A
  bool dot_ok = false;
};

struct AlignmentReport {
  std::vector<AlignmentEntry> entries;
  double rho_delta = 0.0;
  double gap = 0.0;            // Delta(A); 0 when A has a single distinct eigenvalue
  bool hypothesis = false;     // rho(dA) < Delta / 2
  double bound = 0.0;          // sqrt(1 - (rho / (Delta/2))^2) when hypothesis holds
  bool weyl_all() const;
  bool dims_all() const;
  bool dots_all() const;
};

// Dense computation; eigenvalues are merged within merge_tol when forming
// eigenspaces. Throws InvalidArgument on dimension mismatch.
AlignmentReport alignment_report(const SymMatrix& a, const SymMatrix& delta,
                                 double merge_tol = 1e-9, double slack = 1e-10);

}  // namespace dcsbm

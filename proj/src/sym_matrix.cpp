#include "dcsbm/sym_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace dcsbm {

SymMatrix SymMatrix::sparse(Index n, std::vector<Triplet> upper) {
  for (auto& t : upper) {
    if (t.row < 0 || t.col < 0 || t.row >= n || t.col >= n)
      throw InvalidArgument("matrix entry out of range");
    if (t.row > t.col) std::swap(t.row, t.col);
  }
  std::sort(upper.begin(), upper.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Triplet> merged;
  for (const auto& t : upper) {
    if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col)
      merged.back().value += t.value;
    else
      merged.push_back(t);
  }
  std::erase_if(merged, [](const Triplet& t) { return t.value == 0.0; });

  SymMatrix m;
  m.n_ = n;
  std::vector<Index> count(n + 1, 0);
  for (const auto& t : merged) {
    ++count[t.row + 1];
    if (t.row != t.col) ++count[t.col + 1];
  }
  m.offsets_.assign(n + 1, 0);
  for (Index u = 0; u < n; ++u) m.offsets_[u + 1] = m.offsets_[u] + count[u + 1];
  m.cols_.assign(m.offsets_[n], 0);
  m.vals_.assign(m.offsets_[n], 0.0);
  std::vector<Index> fill(m.offsets_.begin(), m.offsets_.end() - 1);
  // Lower-triangle copies first keeps each row's columns ascending.
  for (const auto& t : merged)
    if (t.row != t.col) {
      m.cols_[fill[t.col]] = t.row;
      m.vals_[fill[t.col]++] = t.value;
    }
  for (const auto& t : merged) {
    m.cols_[fill[t.row]] = t.col;
    m.vals_[fill[t.row]++] = t.value;
  }
  return m;
}

SymMatrix SymMatrix::dense(Eigen::MatrixXd mat) {
  if (mat.rows() != mat.cols()) throw InvalidArgument("dense matrix must be square");
  SymMatrix m;
  m.n_ = mat.rows();
  m.dense_ = true;
  for (Index j = 0; j < m.n_; ++j)
    for (Index i = j + 1; i < m.n_; ++i) mat(i, j) = mat(j, i);
  m.mat_ = std::move(mat);
  return m;
}

Index SymMatrix::nonzeros() const noexcept {
  if (!dense_) return static_cast<Index>(vals_.size());
  return static_cast<Index>((mat_.array() != 0.0).count());
}

void SymMatrix::multiply(const double* x, double* y) const {
  if (dense_)
    kernels::dense_symv(n_, mat_.data(), x, y);
  else
    kernels::csr_spmv(csr(), x, y);
}

void SymMatrix::multiply_serial(const double* x, double* y) const {
  if (dense_)
    kernels::serial::dense_symv(n_, mat_.data(), x, y);
  else
    kernels::serial::csr_spmv(csr(), x, y);
}

Eigen::VectorXd SymMatrix::operator*(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y(n_);
  multiply(x.data(), y.data());
  return y;
}

double SymMatrix::at(Index u, Index v) const {
  if (dense_) return mat_(u, v);
  auto b = cols_.begin() + offsets_[u], e = cols_.begin() + offsets_[u + 1];
  auto it = std::lower_bound(b, e, v);
  return (it != e && *it == v) ? vals_[it - cols_.begin()] : 0.0;
}

Eigen::MatrixXd SymMatrix::to_dense() const {
  if (dense_) return mat_;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n_, n_);
  for (Index u = 0; u < n_; ++u)
    for (Index p = offsets_[u]; p < offsets_[u + 1]; ++p) d(u, cols_[p]) = vals_[p];
  return d;
}

Eigen::VectorXd SymMatrix::row_sums() const {
  if (dense_) return mat_.rowwise().sum();
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n_);
  for (Index u = 0; u < n_; ++u)
    for (Index p = offsets_[u]; p < offsets_[u + 1]; ++p) s[u] += vals_[p];
  return s;
}

std::vector<Triplet> SymMatrix::upper_triplets() const {
  std::vector<Triplet> out;
  for (Index u = 0; u < n_; ++u) {
    if (dense_) {
      for (Index v = u; v < n_; ++v)
        if (mat_(u, v) != 0.0) out.push_back({u, v, mat_(u, v)});
    } else {
      for (Index p = offsets_[u]; p < offsets_[u + 1]; ++p)
        if (cols_[p] >= u) out.push_back({u, cols_[p], vals_[p]});
    }
  }
  return out;
}

SymMatrix abs(const SymMatrix& m) {
  if (m.is_dense()) return SymMatrix::dense(m.dense_storage().cwiseAbs());
  auto t = m.upper_triplets();
  for (auto& x : t) x.value = std::abs(x.value);
  return SymMatrix::sparse(m.n(), std::move(t));
}

}  // namespace dcsbm

#pragma once

#include <Eigen/Dense>

namespace sib {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Row-major vectorization: stacks the rows of M into one long vector.
// All nd-dimensional quantities in this library use this layout, so the
// d-block starting at i*d always belongs to user i.
inline Vector vec_rows(const Matrix& M) {
  Vector v(M.size());
  for (Index i = 0; i < M.rows(); ++i) v.segment(i * M.cols(), M.cols()) = M.row(i);
  return v;
}

inline Matrix unvec_rows(const Vector& v, Index n, Index d) {
  Matrix M(n, d);
  for (Index i = 0; i < n; ++i) M.row(i) = v.segment(i * d, d);
  return M;
}

/// a ⊗ b for two vectors, as a flat vector of length |a|*|b|.
inline Vector kron_vec(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// Symmetric square root of a symmetric PSD matrix via eigendecomposition.
/// Eigenvalues below `floor` are clamped to `floor` before the sqrt.
inline Matrix sym_sqrt(const Matrix& Z, double floor_ev = 0.0) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(Z);
  Vector ev = es.eigenvalues().cwiseMax(floor_ev);
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

/// Symmetric inverse square root Z^{-1/2}, eigenvalue floor guards round-off.
inline Matrix sym_inv_sqrt(const Matrix& Z, double floor_ev = 1e-12) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(Z);
  Vector ev = es.eigenvalues().cwiseMax(floor_ev);
  return es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

}  // namespace sib

#pragma once

#include "sib/linalg.hpp"

namespace sib {

// Ridge least-squares state for the nd-dimensional inherent-profile vector:
// precision Z(t) = lambda I + sum_rounds X^T X, accumulated right-hand side
// b = sum X^T r, and the current solve u_hat = Z^{-1} b.
class EstimatorState {
 public:
  EstimatorState(Index nd, double lambda);

  /// Adds the round's n rank-one contexts x_i = a_i kron v_i and refreshes
  /// u_hat with a symmetric positive-definite solve.
  void ingest_round(const Matrix& A, const Matrix& V, const Vector& r);

  const Vector& estimate() const { return u_hat_; }
  const Matrix& precision() const { return Z_; }
  const Vector& rhs() const { return b_; }
  Matrix covariance() const;  // Sigma = Z^{-1}
  double lambda() const { return lambda_; }
  Index nd() const { return Z_.rows(); }

  /// X(V, A): the n x nd dense context matrix whose row i is a_i kron v_i.
  static Matrix densify_context(const Matrix& A, const Matrix& V);

 private:
  double lambda_;
  Matrix Z_;
  Vector b_;
  Vector u_hat_;
};

}  // namespace sib

#include "sib/estimator.hpp"

#include <stdexcept>

namespace sib {

EstimatorState::EstimatorState(Index nd, double lambda) : lambda_(lambda) {
  if (nd < 1) throw std::invalid_argument("estimator dimension must be positive");
  if (!(lambda > 0.0)) throw std::invalid_argument("ridge lambda must be positive");
  Z_ = lambda * Matrix::Identity(nd, nd);
  b_ = Vector::Zero(nd);
  u_hat_ = Vector::Zero(nd);
}

Matrix EstimatorState::densify_context(const Matrix& A, const Matrix& V) {
  const Index n = A.rows();
  const Index d = V.cols();
  if (V.rows() != n || A.cols() != n) {
    throw std::invalid_argument("densify_context: shape mismatch");
  }
  Matrix X(n, n * d);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      X.block(i, j * d, 1, d) = A(i, j) * V.row(i);
    }
  }
  return X;
}

void EstimatorState::ingest_round(const Matrix& A, const Matrix& V, const Vector& r) {
  if (!r.allFinite()) throw std::invalid_argument("ingest_round: non-finite rewards");
  if (r.size() != A.rows()) throw std::invalid_argument("ingest_round: reward length mismatch");
  const Matrix X = densify_context(A, V);
  if (X.cols() != Z_.rows()) throw std::invalid_argument("ingest_round: context width mismatch");
  Z_.selfadjointView<Eigen::Lower>().rankUpdate(X.transpose());
  Z_ = Z_.selfadjointView<Eigen::Lower>();  // keep the full symmetric matrix
  b_ += X.transpose() * r;
  u_hat_ = Z_.llt().solve(b_);
}

Matrix EstimatorState::covariance() const {
  return Z_.llt().solve(Matrix::Identity(Z_.rows(), Z_.cols()));
}

}  // namespace sib

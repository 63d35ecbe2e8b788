#include "sib/influence.hpp"

#include <cmath>
#include <string>

namespace sib {

namespace {
constexpr double kRowSumTol = 1e-9;
}

InfluenceGraph InfluenceGraph::from_matrix(Matrix P_raw, double teleport) {
  const Index n = P_raw.rows();
  if (n == 0 || P_raw.cols() != n) {
    throw std::invalid_argument("influence matrix must be square and nonempty");
  }
  if (teleport < 0.0 || teleport >= 1.0) {
    throw std::invalid_argument("teleport must lie in [0,1)");
  }
  for (Index i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (Index j = 0; j < n; ++j) {
      const double p = P_raw(i, j);
      if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw std::invalid_argument("influence entry (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") outside [0,1]");
      }
      row_sum += p;
    }
    if (std::abs(row_sum - 1.0) > kRowSumTol) {
      throw std::invalid_argument("influence row " + std::to_string(i) +
                                  " sums to " + std::to_string(row_sum) + ", not 1");
    }
  }
  InfluenceGraph g;
  g.n = static_cast<int>(n);
  g.teleport = teleport;
  if (teleport > 0.0) {
    g.P = (1.0 - teleport) * P_raw + Matrix::Constant(n, n, teleport / double(n));
  } else {
    g.P = std::move(P_raw);
  }
  return g;
}

SocialState::SocialState(const InfluenceGraph& graph, double alpha, int t)
    : alpha_(alpha), t_(0) {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw std::invalid_argument("alpha must lie in (0,1]");
  }
  if (t < 0) throw std::invalid_argument("round index must be nonnegative");
  const Index n = graph.P.rows();
  P_scaled_ = (1.0 - alpha) * graph.P;
  P_pow_ = Matrix::Identity(n, n);  // ((1-alpha)P)^0
  A_ = alpha * Matrix::Identity(n, n);
  while (t_ < t) advance();
}

void SocialState::advance() {
  P_pow_ = P_pow_ * P_scaled_;
  A_ += alpha_ * P_pow_;
  ++t_;
}

Matrix fixpoint_A(const InfluenceGraph& graph, double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw std::invalid_argument("alpha must lie in (0,1]");
  }
  const Index n = graph.P.rows();
  Matrix M = Matrix::Identity(n, n) - (1.0 - alpha) * graph.P;
  // Spectral radius of (1-alpha)P is at most 1-alpha < 1, so M is invertible.
  Eigen::PartialPivLU<Matrix> lu(M);
  Matrix A_inf = lu.solve(alpha * Matrix::Identity(n, n));
  if (!A_inf.allFinite()) {
    throw std::runtime_error("internal error: singular solve in fixpoint_A");
  }
  return A_inf;
}

Vector apply_L_transpose(const Matrix& A, const Vector& u, Index d) {
  if (u.size() != A.rows() * d) {
    throw std::invalid_argument("apply_L_transpose: vector length does not match n*d");
  }
  return vec_rows(A * unvec_rows(u, A.rows(), d));
}

ProfileMatrix evolve_expected(const ProfileMatrix& U0, const SocialState& state) {
  if (U0.rows() != state.design().rows()) {
    throw std::invalid_argument("evolve_expected: profile row count does not match design");
  }
  return state.design() * U0;
}

ProfileMatrix evolve_stochastic(const ProfileMatrix& prev, const ProfileMatrix& U0,
                                double alpha, const InfluenceGraph& graph, RngStream& rng) {
  if (prev.rows() != U0.rows() || prev.cols() != U0.cols() || prev.rows() != graph.n) {
    throw std::invalid_argument("evolve_stochastic: shape mismatch");
  }
  ProfileMatrix out(prev.rows(), prev.cols());
  for (Index i = 0; i < prev.rows(); ++i) {
    if (rng.uniform() < alpha) {
      out.row(i) = U0.row(i);
    } else {
      // draw neighbor j ~ row i of P
      double x = rng.uniform();
      double acc = 0.0;
      Index j = prev.rows() - 1;
      for (Index k = 0; k < prev.rows(); ++k) {
        acc += graph.P(i, k);
        if (x < acc) {
          j = k;
          break;
        }
      }
      out.row(i) = prev.row(j);
    }
  }
  return out;
}

}  // namespace sib

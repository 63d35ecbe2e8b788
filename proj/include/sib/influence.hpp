#pragma once

#include <stdexcept>

#include "sib/linalg.hpp"
#include "sib/rng.hpp"

namespace sib {

/// n x d matrix of user interest vectors, one row per user.
using ProfileMatrix = Matrix;

// Row-stochastic influence matrix over n users. P(i,j) is the probability
// that user i adopts user j's profile when acting socially. An optional
// teleport mass tau is blended uniformly at construction to enforce
// ergodicity: P_eff = (1-tau) P + (tau/n) 11^T.
struct InfluenceGraph {
  int n = 0;
  Matrix P;            // effective (post-blend) matrix
  double teleport = 0.0;

  static InfluenceGraph from_matrix(Matrix P_raw, double teleport = 0.0);
};

// The time-varying design of the bandit: holds alpha, the round index t and
// A(t) = alpha * sum_{k=0..t} ((1-alpha) P)^k, advanced incrementally with
// one n x n multiply per step.
class SocialState {
 public:
  SocialState(const InfluenceGraph& graph, double alpha, int t = 0);

  void advance();  // t -> t+1

  const Matrix& design() const { return A_; }
  int round() const { return t_; }
  double alpha() const { return alpha_; }

 private:
  double alpha_;
  int t_;
  Matrix A_;         // A(t)
  Matrix P_scaled_;  // (1-alpha) P
  Matrix P_pow_;     // ((1-alpha) P)^t
};

inline SocialState build_A(const InfluenceGraph& graph, double alpha, int t) {
  return SocialState(graph, alpha, t);
}

/// Fixed point A_inf = alpha (I - (1-alpha) P)^{-1}; rows sum to 1.
Matrix fixpoint_A(const InfluenceGraph& graph, double alpha);

// L(t) = A(t)^T kron I_d is never materialized: L^T u = vec(A * mat(u))
// where mat reshapes u row-major into n x d.
Vector apply_L_transpose(const Matrix& A, const Vector& u, Index d);

/// U(t) = A(t) U0, the expected profiles at the state's round.
ProfileMatrix evolve_expected(const ProfileMatrix& U0, const SocialState& state);

// One step of the realized interest dynamics: independently per user, with
// probability alpha the row resets to u_i^0, otherwise the user copies the
// previous-round profile of a neighbor j drawn from row i of P.
ProfileMatrix evolve_stochastic(const ProfileMatrix& prev, const ProfileMatrix& U0,
                                double alpha, const InfluenceGraph& graph, RngStream& rng);

}  // namespace sib

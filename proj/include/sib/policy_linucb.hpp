#pragma once

#include "sib/estimator.hpp"
#include "sib/simulation.hpp"

namespace sib {

// Lifted quadratic for the UCB-style selection objective
//   max_v  u_hat^T L v + c v^T L^T Sigma L v
// after absorbing the linear term into y = (v, t'):
//   H0 = [[c L^T Sigma L, L^T u_hat / 2], [u_hat^T L / 2, 0]].
struct SdpProblem {
  Matrix H0;  // (nd+1) x (nd+1), symmetric
  int n = 0;
  int d = 0;
  double c = 1.0;
};

SdpProblem build_H0(const Vector& u_hat, const Matrix& Sigma, const Matrix& A, double c);

struct SdpResult {
  Matrix Y;       // PSD, diagonal feasible
  double value;   // tr(H0 Y)
  int iterations;
  bool converged;
};

// Relaxation of max y^T H0 y over feasible squares: maximize tr(H0 Y)
// subject to Y >= 0 and diag(Y) in D (per-user diagonal block sums <= 1,
// last diagonal entry <= 1). Solved best-effort by projected gradient ascent
// alternating eigenvalue-clipping PSD projection with per-block diagonal
// scaling; no optimality certificate is attached.
SdpResult sdp_solve(const SdpProblem& prob, int max_iter = 2000, double tol = 1e-7);

/// Deterministic rounding: top eigenvector of Y, leading nd entries split
/// into n blocks, each projected onto the unit ball.
Matrix round_Y(const Matrix& Y, int n, int d);

struct LinUcbConfig {
  double c = 1.0;  // exploration constant
  int max_iter = 2000;
  double tol = 1e-7;
};

/// Unit-ball catalogs only; finite catalogs are rejected as unsupported.
RunResult run_linucb(const SimConfig& cfg, const LinUcbConfig& policy = {});

}  // namespace sib

#pragma once

#include <vector>

#include "sib/bounds.hpp"
#include "sib/estimator.hpp"
#include "sib/simulation.hpp"

namespace sib {

struct LinRelConfig {
  double delta = 0.1;       // confidence parameter in beta_t
  double beta_scale = 1e-5; // multiplier on beta_t
};

// The 2nd extreme points of the L1 confidence polytope
// { u : |Z^{1/2}(u - u_hat)|_1 <= radius }: u_hat +/- radius * (Z^{-1/2} e_j),
// minus before plus for each j. Linear objectives over the polytope attain
// their maximum at one of these points, which is what makes the arm
// selection tractable.
std::vector<Vector> extreme_points(const Vector& u_hat, const Matrix& Z, double radius);

/// Membership predicates for the two confidence sets (C2 is never used for
/// selection; it exists so the regret-bound assumptions can be tested).
bool c1_contains(const Vector& u, const Vector& u_hat, const Matrix& Z, double radius,
                 double tol = 1e-9);
bool c2_contains(const Vector& u, const Vector& u_hat, const Matrix& Z, double radius,
                 double tol = 1e-9);

// Arm selection: for each extreme point u, run the separable per-user linmax
// on the blocks of L^T u and keep the V of the best u. Ties across extreme
// points go to the first enumerated. For finite catalogs this costs exactly
// 2 n^2 d |B| candidate evaluations, tallied into `stats` when given.
Recommendation select_arms(const EstimatorState& est, const Matrix& A, const Catalog& catalog,
                           double radius, SelectionStats* stats = nullptr);

RunResult run_linrel(const SimConfig& cfg, const LinRelConfig& policy = {});

}  // namespace sib

#pragma once

#include <string>

#include "sib/catalog.hpp"
#include "sib/influence.hpp"

namespace sib {

struct NoiseModel {
  double sigma = 0.0;  // standard deviation of the rating noise
};

/// One item profile per user plus the name of the policy that produced it.
struct Recommendation {
  Matrix V;  // n x d
  std::string origin;
};

struct RoundRecord {
  int t = 0;
  Vector rewards;              // realized per-user ratings
  double expected_total = 0.0; // u0^T L(t) v for the played arms
  double inst_regret = 0.0;    // rho(t)
  double cum_regret = 0.0;     // running prefix sum
  long long wall_ns = 0;
};

/// r_i = <u_i, v_i> + eps_i with eps_i iid Gaussian(0, sigma^2).
Vector observe_rewards(const ProfileMatrix& U, const Matrix& V, const NoiseModel& noise,
                       RngStream& rng);

// The per-user context x_i = (row i of A) kron v_i, kept as the factor pair;
// densify() materializes the nd-vector when a test or an estimator wants it.
struct ContextRow {
  Vector a;  // row i of A
  Vector v;  // item recommended to user i
  Vector densify() const { return kron_vec(a, v); }
};

ContextRow context_row(const Matrix& A, const Vector& v_i, Index i);

/// <U0, A^T V> Frobenius — the total expected reward under recommendations V.
double expected_total_reward(const ProfileMatrix& U0, const Matrix& A, const Matrix& V);

// Clairvoyant oracle: the total reward separates per user, so row i is the
// linmax of (A U0) row i over the catalog.
Recommendation oracle_best(const ProfileMatrix& U0, const Matrix& A, const Catalog& catalog);

// Regret bookkeeping against the oracle. Regret uses expected rewards
// (the realized noise cancels nothing and is not part of the definition).
class RegretTracker {
 public:
  RoundRecord record_round(int t, const ProfileMatrix& U0, const Matrix& A, const Matrix& V,
                           const Catalog& catalog, const Vector& rewards, long long wall_ns);

  double cumulative() const { return cum_; }

 private:
  double cum_ = 0.0;
};

}  // namespace sib

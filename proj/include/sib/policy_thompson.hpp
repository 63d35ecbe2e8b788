#pragma once

#include "sib/estimator.hpp"
#include "sib/simulation.hpp"

namespace sib {

struct ThompsonConfig {
  enum class Mode { Recompute, Incremental };
  double kappa = 1.0;  // prior N(0, kappa I) on the inherent-profile vector
  Mode mode = Mode::Recompute;
};

// Gaussian posterior over the nd-dimensional inherent-profile vector, stored
// as a precision matrix plus the accumulated (noise-weighted) right-hand
// side. With prior N(0, kappa I) the posterior mean coincides with the ridge
// estimate at lambda = sigma^2 / kappa.
class ThompsonState {
 public:
  ThompsonState(Index nd, double kappa, double sigma2,
                ThompsonConfig::Mode mode = ThompsonConfig::Mode::Recompute);

  /// Sigma(t+1)^{-1} = Sigma(t)^{-1} + X^T X / sigma^2.
  void update_covariance(const Matrix& A, const Matrix& V);

  /// Covariance update plus right-hand-side accumulation (posterior mean moves).
  void ingest_round(const Matrix& A, const Matrix& V, const Vector& r);

  /// Draw from N(mean, Sigma) through a Cholesky factor of Sigma; a diagonal
  /// jitter of 1e-10 is added if the factorization fails.
  Vector sample_u(RngStream& rng) const;

  /// Draw and store the maintained sample (Incremental mode bootstrap).
  void seed_sample(RngStream& rng);

  // Maintains the posterior sample without re-sampling from scratch:
  // u(t+1) = Sigma(t+1) (Sigma(t)^{-1} u(t) + X^T (r + w) / sigma^2)
  // with perturbation w ~ N(0, sigma^2 I_n).
  void incremental_sample_update(const Matrix& A, const Matrix& V, const Vector& r,
                                 RngStream& rng);

  Vector mean() const;          // posterior mean (solved on demand)
  Matrix covariance() const;    // Sigma = precision^{-1}
  const Matrix& precision() const { return prec_; }
  const Vector& current_sample() const;
  bool has_sample() const { return sample_init_; }
  ThompsonConfig::Mode mode() const { return mode_; }

 private:
  double sigma2_;
  ThompsonConfig::Mode mode_;
  Matrix prec_;   // Sigma(t)^{-1}
  Vector rhs_;    // sum X^T r / sigma^2
  Vector sample_;
  bool sample_init_ = false;
};

/// Exact argmax of u^T L v over B^(n) for the sampled parameter vector.
Recommendation select_arms_ts(const Vector& u_sample, const Matrix& A, const Catalog& catalog);

RunResult run_thompson(const SimConfig& cfg, const ThompsonConfig& policy = {});

}  // namespace sib

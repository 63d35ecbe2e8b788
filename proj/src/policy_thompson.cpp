#include "sib/policy_thompson.hpp"

#include <stdexcept>

namespace sib {

ThompsonState::ThompsonState(Index nd, double kappa, double sigma2, ThompsonConfig::Mode mode)
    : sigma2_(sigma2), mode_(mode) {
  if (nd < 1) throw std::invalid_argument("ThompsonState: dimension must be positive");
  if (!(kappa > 0.0)) throw std::invalid_argument("ThompsonState: prior scale must be positive");
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument(
        "ThompsonState: sigma = 0 gives a degenerate posterior; Thompson mode needs sigma > 0");
  }
  prec_ = (1.0 / kappa) * Matrix::Identity(nd, nd);
  rhs_ = Vector::Zero(nd);
}

void ThompsonState::update_covariance(const Matrix& A, const Matrix& V) {
  const Matrix X = EstimatorState::densify_context(A, V);
  prec_.selfadjointView<Eigen::Lower>().rankUpdate(X.transpose(), 1.0 / sigma2_);
  prec_ = prec_.selfadjointView<Eigen::Lower>();
}

void ThompsonState::ingest_round(const Matrix& A, const Matrix& V, const Vector& r) {
  if (!r.allFinite()) throw std::invalid_argument("ThompsonState: non-finite rewards");
  const Matrix X = EstimatorState::densify_context(A, V);
  prec_.selfadjointView<Eigen::Lower>().rankUpdate(X.transpose(), 1.0 / sigma2_);
  prec_ = prec_.selfadjointView<Eigen::Lower>();
  rhs_ += X.transpose() * r / sigma2_;
}

Vector ThompsonState::mean() const { return prec_.llt().solve(rhs_); }

Matrix ThompsonState::covariance() const {
  return prec_.llt().solve(Matrix::Identity(prec_.rows(), prec_.cols()));
}

Vector ThompsonState::sample_u(RngStream& rng) const {
  Matrix Sigma = covariance();
  Eigen::LLT<Matrix> llt(Sigma);
  if (llt.info() != Eigen::Success) {
    Sigma.diagonal().array() += 1e-10;
    llt.compute(Sigma);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error("ThompsonState: covariance factorization failed");
    }
  }
  Vector z(Sigma.rows());
  for (Index i = 0; i < z.size(); ++i) z(i) = rng.gaussian();
  return mean() + Matrix(llt.matrixL()) * z;
}

void ThompsonState::seed_sample(RngStream& rng) {
  sample_ = sample_u(rng);
  sample_init_ = true;
}

const Vector& ThompsonState::current_sample() const {
  if (!sample_init_) throw std::logic_error("ThompsonState: no maintained sample");
  return sample_;
}

void ThompsonState::incremental_sample_update(const Matrix& A, const Matrix& V, const Vector& r,
                                              RngStream& rng) {
  if (mode_ != ThompsonConfig::Mode::Incremental) {
    throw std::logic_error("incremental_sample_update requires Incremental mode");
  }
  if (!sample_init_) throw std::logic_error("incremental_sample_update: seed the sample first");
  const Matrix X = EstimatorState::densify_context(A, V);
  Vector perturbed = r;
  const double sigma = std::sqrt(sigma2_);
  for (Index i = 0; i < perturbed.size(); ++i) perturbed(i) += sigma * rng.gaussian();

  const Vector carry = prec_ * sample_ + X.transpose() * perturbed / sigma2_;
  prec_.selfadjointView<Eigen::Lower>().rankUpdate(X.transpose(), 1.0 / sigma2_);
  prec_ = prec_.selfadjointView<Eigen::Lower>();
  rhs_ += X.transpose() * r / sigma2_;
  sample_ = prec_.llt().solve(carry);
}

Recommendation select_arms_ts(const Vector& u_sample, const Matrix& A, const Catalog& catalog) {
  return Recommendation{greedy_select(A, u_sample, catalog), "ts"};
}

RunResult run_thompson(const SimConfig& cfg, const ThompsonConfig& policy) {
  const Index nd = static_cast<Index>(cfg.graph.n) * cfg.catalog.dim();
  ThompsonState ts(nd, policy.kappa, cfg.sigma * cfg.sigma, policy.mode);
  RngStream policy_rng(hash_tag(cfg.seed, "thompson"));
  const bool incremental = policy.mode == ThompsonConfig::Mode::Incremental;

  PolicyHooks hooks;
  hooks.name = "ts";
  hooks.select = [&](int, const Matrix& A) {
    if (incremental) {
      if (!ts.has_sample()) ts.seed_sample(policy_rng);
      return select_arms_ts(ts.current_sample(), A, cfg.catalog).V;
    }
    return select_arms_ts(ts.sample_u(policy_rng), A, cfg.catalog).V;
  };
  hooks.observe = [&](int t, const Matrix& A, const Matrix& V, const Vector& r) {
    if (incremental && t > 0) {
      ts.incremental_sample_update(A, V, r, policy_rng);
    } else {
      ts.ingest_round(A, V, r);
    }
  };
  return run_simulation(cfg, hooks);
}

}  // namespace sib

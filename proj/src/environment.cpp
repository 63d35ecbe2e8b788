#include "sib/environment.hpp"

#include <stdexcept>

namespace sib {

Vector observe_rewards(const ProfileMatrix& U, const Matrix& V, const NoiseModel& noise,
                       RngStream& rng) {
  if (U.rows() != V.rows() || U.cols() != V.cols()) {
    throw std::invalid_argument("observe_rewards: shape mismatch");
  }
  Vector r(U.rows());
  for (Index i = 0; i < U.rows(); ++i) {
    r(i) = U.row(i).dot(V.row(i));
    if (noise.sigma > 0.0) r(i) += noise.sigma * rng.gaussian();
  }
  return r;
}

ContextRow context_row(const Matrix& A, const Vector& v_i, Index i) {
  if (i < 0 || i >= A.rows()) throw std::out_of_range("context_row: user index out of range");
  return ContextRow{A.row(i).transpose(), v_i};
}

double expected_total_reward(const ProfileMatrix& U0, const Matrix& A, const Matrix& V) {
  if (U0.rows() != A.cols() || V.rows() != A.rows() || U0.cols() != V.cols()) {
    throw std::invalid_argument("expected_total_reward: shape mismatch");
  }
  return (A * U0).cwiseProduct(V).sum();
}

Recommendation oracle_best(const ProfileMatrix& U0, const Matrix& A, const Catalog& catalog) {
  const Matrix Z = A * U0;  // row i is the weight vector of user i's subproblem
  Recommendation rec;
  rec.origin = "oracle";
  rec.V.resize(Z.rows(), Z.cols());
  for (Index i = 0; i < Z.rows(); ++i) {
    rec.V.row(i) = catalog.linmax(Z.row(i).transpose()).v;
  }
  return rec;
}

RoundRecord RegretTracker::record_round(int t, const ProfileMatrix& U0, const Matrix& A,
                                        const Matrix& V, const Catalog& catalog,
                                        const Vector& rewards, long long wall_ns) {
  RoundRecord rec;
  rec.t = t;
  rec.rewards = rewards;
  rec.expected_total = expected_total_reward(U0, A, V);
  const Recommendation best = oracle_best(U0, A, catalog);
  rec.inst_regret = expected_total_reward(U0, A, best.V) - rec.expected_total;
  cum_ += rec.inst_regret;
  rec.cum_regret = cum_;
  rec.wall_ns = wall_ns;
  return rec;
}

}  // namespace sib

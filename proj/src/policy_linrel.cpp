#include "sib/policy_linrel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sib {

std::vector<Vector> extreme_points(const Vector& u_hat, const Matrix& Z, double radius) {
  if (radius < 0.0) throw std::invalid_argument("extreme_points: negative radius");
  if (Z.rows() != Z.cols() || Z.rows() != u_hat.size()) {
    throw std::invalid_argument("extreme_points: shape mismatch");
  }
  if ((Z - Z.transpose()).lpNorm<Eigen::Infinity>() > 1e-8) {
    throw std::invalid_argument("extreme_points: precision matrix not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(Z);
  const double max_ev = es.eigenvalues().maxCoeff();
  if (es.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, max_ev)) {
    throw std::invalid_argument("extreme_points: precision matrix not positive definite");
  }
  const Vector ev = es.eigenvalues().cwiseMax(1e-12);
  const Matrix S =
      es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();

  std::vector<Vector> points;
  points.reserve(static_cast<size_t>(2 * u_hat.size()));
  for (Index j = 0; j < u_hat.size(); ++j) {
    points.push_back(u_hat - radius * S.col(j));
    points.push_back(u_hat + radius * S.col(j));
  }
  return points;
}

bool c1_contains(const Vector& u, const Vector& u_hat, const Matrix& Z, double radius,
                 double tol) {
  const Matrix S = sym_sqrt(Z, 0.0);
  return (S * (u - u_hat)).lpNorm<1>() <= radius + tol;
}

bool c2_contains(const Vector& u, const Vector& u_hat, const Matrix& Z, double radius,
                 double tol) {
  const Vector diff = u - u_hat;
  return std::sqrt(diff.dot(Z * diff)) <= radius + tol;
}

Recommendation select_arms(const EstimatorState& est, const Matrix& A, const Catalog& catalog,
                           double radius, SelectionStats* stats) {
  const Index n = A.rows();
  const Index d = catalog.dim();
  const auto points = extreme_points(est.estimate(), est.precision(), radius);
  if (stats) stats->extreme_points += static_cast<long>(points.size());

  double best_value = -std::numeric_limits<double>::infinity();
  Matrix best_V;
  long* counter = stats ? &stats->candidate_evals : nullptr;
  for (const Vector& u : points) {
    const Vector z = apply_L_transpose(A, u, d);
    double total = 0.0;
    Matrix V(n, d);
    for (Index i = 0; i < n; ++i) {
      const auto res = catalog.linmax(z.segment(i * d, d), counter);
      total += res.value;
      V.row(i) = res.v;
    }
    if (total > best_value) {  // strict: ties keep the first enumerated point
      best_value = total;
      best_V = std::move(V);
    }
  }
  return Recommendation{std::move(best_V), "linrel"};
}

RunResult run_linrel(const SimConfig& cfg, const LinRelConfig& policy) {
  const int n = cfg.graph.n;
  const int d = cfg.catalog.dim();
  const Index nd = static_cast<Index>(n) * d;
  EstimatorState est(nd, cfg.ridge_lambda);

  std::vector<double> radii;
  SelectionStats stats;
  PolicyHooks hooks;
  hooks.name = "linrel";
  hooks.select = [&](int t, const Matrix& A) {
    const double bt = beta_t(t, n, d, policy.delta, policy.beta_scale);
    const double radius = std::sqrt(static_cast<double>(nd) * bt);
    radii.push_back(radius);
    return select_arms(est, A, cfg.catalog, radius, &stats).V;
  };
  hooks.observe = [&](int, const Matrix& A, const Matrix& V, const Vector& r) {
    est.ingest_round(A, V, r);
  };

  RunResult res = run_simulation(cfg, hooks);
  res.radii = std::move(radii);
  res.stats = stats;
  return res;
}

}  // namespace sib

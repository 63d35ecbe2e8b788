#include "sib/baselines.hpp"

#include "sib/estimator.hpp"

namespace sib {

Matrix random_arms(const Catalog& catalog, int n, RngStream& rng) {
  const int d = catalog.dim();
  Matrix V(n, d);
  for (int i = 0; i < n; ++i) {
    if (catalog.is_finite()) {
      V.row(i) = catalog.items()[static_cast<size_t>(rng.uniform_int(0, catalog.size() - 1))];
    } else {
      Vector g(d);
      do {
        for (int j = 0; j < d; ++j) g(j) = rng.gaussian();
      } while (g.norm() == 0.0);
      V.row(i) = g / g.norm();
    }
  }
  return V;
}

RunResult run_rand(const SimConfig& cfg) {
  RngStream rng(hash_tag(cfg.seed, "rand"));
  PolicyHooks hooks;
  hooks.name = "rand";
  hooks.spanning_init = false;
  hooks.select = [&](int, const Matrix&) { return random_arms(cfg.catalog, cfg.graph.n, rng); };
  return run_simulation(cfg, hooks);
}

RunResult run_regression(const SimConfig& cfg) {
  const Index nd = static_cast<Index>(cfg.graph.n) * cfg.catalog.dim();
  EstimatorState est(nd, cfg.ridge_lambda);

  PolicyHooks hooks;
  hooks.name = "regression";
  hooks.select = [&](int, const Matrix& A) {
    return greedy_select(A, est.estimate(), cfg.catalog);
  };
  hooks.observe = [&](int, const Matrix& A, const Matrix& V, const Vector& r) {
    est.ingest_round(A, V, r);
  };
  return run_simulation(cfg, hooks);
}

}  // namespace sib

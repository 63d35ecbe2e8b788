#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sib/catalog.hpp"
#include "sib/environment.hpp"
#include "sib/influence.hpp"

namespace sib {

// How the environment's interest dynamics are computed and what design
// matrix the policy is handed:
//   Expected   — profiles follow U(t) = A(t) U0; policy sees A(t).
//   Stochastic — profiles evolve by per-user sampling; policy sees A(t),
//                which now only captures the dynamics in expectation.
//   Fixpoint   — profiles follow U(t) = A(t) U0 but the policy is handed the
//                steady-state A_inf every round (classic linear bandit).
// Regret is always measured against the oracle under the true A(t).
enum class DynamicsMode { Expected, Stochastic, Fixpoint };

struct SimConfig {
  InfluenceGraph graph;
  double alpha = 0.05;
  ProfileMatrix U0;
  Catalog catalog = Catalog::unit_ball(1);
  double sigma = 1.0;
  int horizon = 100;
  DynamicsMode dynamics = DynamicsMode::Expected;
  double ridge_lambda = 1e-6;
  uint64_t seed = 0;
};

struct SelectionStats {
  long extreme_points = 0;
  long candidate_evals = 0;
};

struct RunResult {
  std::vector<RoundRecord> records;
  std::vector<double> radii;  // per-round confidence radius (confidence-set policy only)
  SelectionStats stats;       // accumulated selection counters (confidence-set policy only)

  double total_regret() const { return records.empty() ? 0.0 : records.back().cum_regret; }
};

struct PolicyHooks {
  std::string name;
  bool spanning_init = true;
  // Called once per selection round with the policy-side design matrix.
  std::function<Matrix(int t, const Matrix& A_policy)> select;
  // Called after rewards are observed (init rounds pass t = 0). May be empty.
  std::function<void(int t, const Matrix& A_policy, const Matrix& V, const Vector& r)> observe;
};

// Shared driver: optional spanning-initialization phase (d batched pulls at
// the initial design A(0) = alpha I, not recorded), then `horizon` recorded
// rounds t = 1..T with the social state advanced before each round.
RunResult run_simulation(const SimConfig& cfg, const PolicyHooks& hooks);

/// Exact joint argmax of u^T L v over B^(n): separable per-user linmax on
/// the d-blocks of L^T u. The workhorse behind every greedy selection.
Matrix greedy_select(const Matrix& A, const Vector& u, const Catalog& catalog,
                     long* eval_counter = nullptr);

}  // namespace sib

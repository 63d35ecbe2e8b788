#include "sib/simulation.hpp"

#include <chrono>
#include <stdexcept>

namespace sib {

Matrix greedy_select(const Matrix& A, const Vector& u, const Catalog& catalog,
                     long* eval_counter) {
  const Index n = A.rows();
  const Index d = catalog.dim();
  const Vector z = apply_L_transpose(A, u, d);
  Matrix V(n, d);
  for (Index i = 0; i < n; ++i) {
    V.row(i) = catalog.linmax(z.segment(i * d, d), eval_counter).v;
  }
  return V;
}

RunResult run_simulation(const SimConfig& cfg, const PolicyHooks& hooks) {
  const int n = cfg.graph.n;
  const int d = cfg.catalog.dim();
  if (cfg.U0.rows() != n || cfg.U0.cols() != d) {
    throw std::invalid_argument("run_simulation: U0 must be n x d");
  }
  if (cfg.horizon < 0) throw std::invalid_argument("run_simulation: negative horizon");

  SocialState social(cfg.graph, cfg.alpha, 0);
  const bool stochastic = cfg.dynamics == DynamicsMode::Stochastic;
  const bool fixpoint = cfg.dynamics == DynamicsMode::Fixpoint;
  Matrix A_fix;
  if (fixpoint) A_fix = fixpoint_A(cfg.graph, cfg.alpha);

  RngStream noise_rng(hash_tag(cfg.seed, "noise"));
  RngStream dyn_rng(hash_tag(cfg.seed, "dynamics"));
  const NoiseModel noise{cfg.sigma};

  ProfileMatrix U_real;
  if (stochastic) {
    U_real = evolve_stochastic(ProfileMatrix::Zero(n, d), cfg.U0, cfg.alpha, cfg.graph, dyn_rng);
  }

  // Warmup: d batched pulls for all users at the initial design, fed to the
  // policy but excluded from the regret horizon.
  if (hooks.spanning_init) {
    const auto items = cfg.catalog.spanning_init();
    const ProfileMatrix U_env0 = stochastic ? U_real : evolve_expected(cfg.U0, social);
    for (const Vector& w : items) {
      Matrix V = w.transpose().replicate(n, 1);
      const Vector r = observe_rewards(U_env0, V, noise, noise_rng);
      if (hooks.observe) hooks.observe(0, fixpoint ? A_fix : social.design(), V, r);
    }
  }

  RegretTracker tracker;
  RunResult out;
  out.records.reserve(static_cast<size_t>(cfg.horizon));
  for (int t = 1; t <= cfg.horizon; ++t) {
    social.advance();
    if (stochastic) U_real = evolve_stochastic(U_real, cfg.U0, cfg.alpha, cfg.graph, dyn_rng);
    const Matrix& A_true = social.design();
    const Matrix& A_pol = fixpoint ? A_fix : A_true;

    const auto tic = std::chrono::steady_clock::now();
    const Matrix V = hooks.select(t, A_pol);
    const ProfileMatrix U_env = stochastic ? U_real : evolve_expected(cfg.U0, social);
    const Vector r = observe_rewards(U_env, V, noise, noise_rng);
    if (hooks.observe) hooks.observe(t, A_pol, V, r);
    const auto toc = std::chrono::steady_clock::now();
    const long long wall_ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(toc - tic).count();

    out.records.push_back(tracker.record_round(t, cfg.U0, A_true, V, cfg.catalog, r, wall_ns));
  }
  return out;
}

}  // namespace sib

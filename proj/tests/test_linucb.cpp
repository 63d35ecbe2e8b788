#include "sib/policy_linucb.hpp"

#include <chrono>

#include "doctest.h"
#include "sib/baselines.hpp"
#include "sib/graph_gen.hpp"
#include "test_util.hpp"

using namespace sib;
using test::kron;
using test::random_matrix;
using test::random_stochastic;
using test::random_vector;

namespace {

/// Random SPD covariance.
Matrix random_spd(Index n, RngStream& rng) {
  const Matrix M = random_matrix(n, n, rng);
  return M * M.transpose() + 0.2 * Matrix::Identity(n, n);
}

/// Quadratic value of a rank-one feasible point.
double quad(const Matrix& H0, const Vector& y) { return y.dot(H0 * y); }

/// Uniform feasible y = (v_1..v_n, t'): per-user ball blocks, |t'| <= 1.
Vector sample_feasible(int n, int d, RngStream& rng) {
  Vector y(static_cast<Index>(n) * d + 1);
  for (int i = 0; i < n; ++i) {
    Vector g = random_vector(d, rng);
    const double norm = g.norm();
    if (norm > 0) g *= std::pow(rng.uniform(), 1.0 / d) / norm;
    y.segment(static_cast<Index>(i) * d, d) = g;
  }
  y(y.size() - 1) = 2.0 * rng.uniform() - 1.0;
  return y;
}

}  // namespace

TEST_CASE("build_H0") {
  SUBCASE("scalar substitution") {
    Matrix A(1, 1), Sigma(1, 1);
    A << 1;
    Sigma << 2;
    Vector u(1);
    u << 3;
    const SdpProblem prob = build_H0(u, Sigma, A, 1.0);
    Matrix want(2, 2);
    want << 2, 1.5, 1.5, 0;
    CHECK((prob.H0 - want).lpNorm<Eigen::Infinity>() < 1e-12);
  }
  SUBCASE("zero center and zero exploration give the zero matrix") {
    RngStream rng(3);
    const Matrix A = random_stochastic(2, rng);
    const SdpProblem prob = build_H0(Vector::Zero(4), random_spd(4, rng), A, 0.0);
    CHECK(prob.H0.lpNorm<Eigen::Infinity>() < 1e-15);
  }
  SUBCASE("symmetry, zero corner and the linear block") {
    RngStream rng(5);
    for (int rep = 0; rep < 10; ++rep) {
      const Matrix A = random_stochastic(2, rng);
      const Matrix Sigma = random_spd(4, rng);
      const Vector u = random_vector(4, rng);
      const SdpProblem prob = build_H0(u, Sigma, A, 0.7);
      CHECK((prob.H0 - prob.H0.transpose()).lpNorm<Eigen::Infinity>() < 1e-10);
      CHECK(prob.H0(4, 4) == 0.0);
      const Vector ell = apply_L_transpose(A, u, 2);
      CHECK((prob.H0.topRightCorner(4, 1) - ell / 2.0).lpNorm<Eigen::Infinity>() < 1e-12);
    }
  }
  SUBCASE("quadratic block matches the materialized operator") {
    RngStream rng(7);
    const Matrix A = random_stochastic(2, rng);
    const Matrix Sigma = random_spd(4, rng);
    const Vector u = random_vector(4, rng);
    const SdpProblem prob = build_H0(u, Sigma, A, 1.3);
    const Matrix L = kron(A.transpose(), Matrix::Identity(2, 2));
    const Matrix want = 1.3 * L.transpose() * Sigma * L;
    CHECK((prob.H0.topLeftCorner(4, 4) - want).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("sdp_solve closed forms") {
  SUBCASE("single diagonal block") {
    SdpProblem prob;
    prob.n = 1;
    prob.d = 1;
    prob.H0 = Matrix::Zero(2, 2);
    prob.H0(0, 0) = 1.0;
    const SdpResult res = sdp_solve(prob, 500, 1e-9);
    CHECK(res.value == doctest::Approx(1.0).epsilon(1e-6));
    Eigen::SelfAdjointEigenSolver<Matrix> es(res.Y);
    CHECK(es.eigenvalues().minCoeff() >= -1e-8);
    CHECK(res.Y(0, 0) <= 1.0 + 1e-6);
    CHECK(res.Y(1, 1) <= 1.0 + 1e-6);
  }
  SUBCASE("negative semidefinite objective caps at zero") {
    SdpProblem prob;
    prob.n = 1;
    prob.d = 1;
    prob.H0 = -Matrix::Identity(2, 2);
    const SdpResult res = sdp_solve(prob, 500, 1e-9);
    CHECK(res.value <= 1e-9);
    Eigen::SelfAdjointEigenSolver<Matrix> es(res.Y);
    CHECK(es.eigenvalues().minCoeff() >= -1e-8);
  }
}

TEST_CASE("relaxation dominates grid-sampled feasible values") {
  RngStream rng(11);
  for (int rep = 0; rep < 5; ++rep) {
    const Matrix A = random_stochastic(2, rng);
    const Matrix Sigma = random_spd(4, rng);
    const Vector u = random_vector(4, rng);
    const SdpProblem prob = build_H0(u, Sigma, A, 1.0);
    const SdpResult res = sdp_solve(prob, 3000, 1e-9);

    double grid_best = -1e300;
    for (int s = 0; s < 10000; ++s) {
      grid_best = std::max(grid_best, quad(prob.H0, sample_feasible(2, 2, rng)));
    }
    CHECK(res.value >= grid_best - 1e-3);

    // the rounded arm is feasible and cannot beat the relaxation value
    const Matrix V = round_Y(res.Y, 2, 2);
    for (int i = 0; i < 2; ++i) CHECK(V.row(i).norm() <= 1.0 + 1e-9);
    Vector y(5);
    y << V.row(0).transpose(), V.row(1).transpose(), 1.0;
    CHECK(quad(prob.H0, y) <= res.value + 1e-6);
  }
}

TEST_CASE("round_Y") {
  SUBCASE("rank-one feasible input is recovered exactly") {
    RngStream rng(13);
    Vector y(5);
    for (int i = 0; i < 2; ++i) {
      Vector g = random_vector(2, rng);
      y.segment(i * 2, 2) = g / std::max(1.0, g.norm());
    }
    y(4) = 1.0;
    const Matrix V = round_Y(y * y.transpose(), 2, 2);
    for (int i = 0; i < 2; ++i) {
      CHECK((V.row(i).transpose() - y.segment(i * 2, 2)).lpNorm<Eigen::Infinity>() < 1e-9);
    }
  }
  SUBCASE("all-zero input falls back to e1 rows") {
    const Matrix V = round_Y(Matrix::Zero(5, 5), 2, 2);
    for (int i = 0; i < 2; ++i) {
      CHECK(V(i, 0) == 1.0);
      CHECK(V(i, 1) == 0.0);
    }
  }
}

TEST_CASE("zero exploration reduces to the greedy ball arm") {
  RngStream rng(17);
  for (int rep = 0; rep < 5; ++rep) {
    EstimatorState est(4, 1e-3);
    for (int t = 0; t < 3; ++t) {
      const Matrix A = random_stochastic(2, rng);
      const Matrix V = random_matrix(2, 2, rng);
      Vector r(2);
      r << rng.gaussian(), rng.gaussian();
      est.ingest_round(A, V, r);
    }
    const Matrix A = random_stochastic(2, rng);
    const SdpProblem prob = build_H0(est.estimate(), est.covariance(), A, 0.0);
    const SdpResult res = sdp_solve(prob, 2000, 1e-9);
    const Matrix V = round_Y(res.Y, 2, 2);
    const Matrix G = greedy_select(A, est.estimate(), Catalog::unit_ball(2));
    CHECK((V - G).lpNorm<Eigen::Infinity>() < 1e-5);
  }
}

TEST_CASE("run_linucb") {
  SimConfig cfg;
  cfg.graph = complete_graph(2);
  cfg.alpha = 0.2;
  RngStream rng(19);
  cfg.U0 = random_matrix(2, 2, rng, 0.0, 1.0);
  cfg.catalog = Catalog::unit_ball(2);
  cfg.sigma = 0.5;
  cfg.horizon = 20;
  cfg.seed = 3;

  SUBCASE("finite catalogs are rejected") {
    SimConfig bad = cfg;
    Vector e1(2);
    e1 << 1, 0;
    bad.catalog = Catalog::finite({e1});
    CHECK_THROWS_AS(run_linucb(bad), std::invalid_argument);
  }
  SUBCASE("deterministic under a fixed seed") {
    const RunResult a = run_linucb(cfg);
    const RunResult b = run_linucb(cfg);
    REQUIRE(a.records.size() == 20);
    for (size_t k = 0; k < 20; ++k) CHECK(a.records[k].inst_regret == b.records[k].inst_regret);
  }
  SUBCASE("a tiny run completes 100 rounds in reasonable time") {
    SimConfig longer = cfg;
    longer.horizon = 100;
    const auto tic = std::chrono::steady_clock::now();
    const RunResult res = run_linucb(longer);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count();
    CHECK(res.records.size() == 100);
    CHECK(secs < 60.0);
  }
}

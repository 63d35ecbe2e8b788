#include "sib/policy_linrel.hpp"

#include <tuple>

#include "doctest.h"
#include "sib/baselines.hpp"
#include "sib/graph_gen.hpp"
#include "test_util.hpp"

using namespace sib;
using test::materialize_L;
using test::random_matrix;
using test::random_stochastic;
using test::random_vector;

namespace {

/// Feed an estimator state so its precision/estimate are nontrivial.
EstimatorState seeded_estimator(int n, int d, double lambda, RngStream& rng, int rounds = 3) {
  EstimatorState est(static_cast<Index>(n) * d, lambda);
  for (int t = 0; t < rounds; ++t) {
    const Matrix A = random_stochastic(n, rng);
    const Matrix V = random_matrix(n, d, rng);
    Vector r(n);
    for (int i = 0; i < n; ++i) r(i) = rng.gaussian();
    est.ingest_round(A, V, r);
  }
  return est;
}

}  // namespace

TEST_CASE("extreme_points basic shapes") {
  SUBCASE("identity precision gives signed basis vectors") {
    const auto pts = extreme_points(Vector::Zero(2), Matrix::Identity(2, 2), 1.0);
    REQUIRE(pts.size() == 4);
    CHECK((pts[0] + Vector::Unit(2, 0)).norm() < 1e-12);  // minus first
    CHECK((pts[1] - Vector::Unit(2, 0)).norm() < 1e-12);
    CHECK((pts[2] + Vector::Unit(2, 1)).norm() < 1e-12);
    CHECK((pts[3] - Vector::Unit(2, 1)).norm() < 1e-12);
  }
  SUBCASE("scalar square root by hand") {
    Matrix Z(1, 1);
    Z << 4;
    const auto pts = extreme_points(Vector::Zero(1), Z, 1.0);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0](0) == doctest::Approx(-0.5));
    CHECK(pts[1](0) == doctest::Approx(0.5));
  }
  SUBCASE("points sit on the C1 boundary") {
    RngStream rng(3);
    for (int rep = 0; rep < 10; ++rep) {
      const Matrix M = random_matrix(4, 4, rng);
      const Matrix Z = M * M.transpose() + 0.1 * Matrix::Identity(4, 4);
      const Vector u_hat = random_vector(4, rng);
      const double radius = 0.5 + rng.uniform();
      const Matrix S = sym_sqrt(Z);
      for (const auto& u : extreme_points(u_hat, Z, radius)) {
        CHECK(std::abs((S * (u - u_hat)).lpNorm<1>() - radius) < 1e-8);
        CHECK(c1_contains(u, u_hat, Z, radius, 1e-8));
      }
    }
  }
  SUBCASE("non-PD precision rejected") {
    Matrix Z(2, 2);
    Z << 1, 0, 0, -1;
    CHECK_THROWS_AS(extreme_points(Vector::Zero(2), Z, 1.0), std::invalid_argument);
  }
}

TEST_CASE("membership predicates") {
  Matrix Z(2, 2);
  Z << 2, 0, 0, 2;
  Vector u_hat = Vector::Zero(2);
  Vector inside(2), outside(2);
  inside << 0.1, 0.1;
  outside << 3.0, 3.0;
  CHECK(c2_contains(inside, u_hat, Z, 1.0));
  CHECK(!c2_contains(outside, u_hat, Z, 1.0));
  CHECK(c1_contains(inside, u_hat, Z, 1.0));
  CHECK(!c1_contains(outside, u_hat, Z, 1.0));
}

TEST_CASE("select_arms tie-break in the scalar case") {
  // n = d = 1, Z = I, u_hat = 0, radius 1, B = {-1, +1}: both extreme points
  // score 1; the first enumerated (-1) wins, so v = -1 is played.
  EstimatorState est(1, 1.0);
  Matrix A(1, 1);
  A << 1;
  Vector minus(1), plus(1);
  minus << -1;
  plus << 1;
  auto cat = Catalog::finite({minus, plus});
  SelectionStats stats;
  const Recommendation rec = select_arms(est, A, cat, 1.0, &stats);
  CHECK(rec.V(0, 0) == doctest::Approx(-1.0));
  CHECK(rec.origin == "linrel");
  CHECK(cat.contains(rec.V.row(0).transpose()));
  CHECK(stats.extreme_points == 2);
  CHECK(stats.candidate_evals == 4);  // 2 n^2 d |B| = 2*1*1*2
}

TEST_CASE("radius zero reduces to the greedy arm") {
  RngStream rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    auto est = seeded_estimator(2, 2, 1e-3, rng);
    const Matrix A = random_stochastic(2, rng);
    std::vector<Vector> items;
    for (int k = 0; k < 5; ++k) items.push_back(random_vector(2, rng));
    auto cat = Catalog::finite(items);
    const Matrix V = select_arms(est, A, cat, 0.0).V;
    const Matrix G = greedy_select(A, est.estimate(), cat);
    CHECK((V - G).lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("select_arms matches the joint brute force") {
  RngStream rng(11);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 2, d = 2;
    auto est = seeded_estimator(n, d, 1e-2, rng);
    const Matrix A = random_stochastic(n, rng);
    std::vector<Vector> items;
    for (int k = 0; k < 3; ++k) items.push_back(random_vector(d, rng));
    auto cat = Catalog::finite(items);
    const double radius = 0.25 + rng.uniform();

    const Matrix V = select_arms(est, A, cat, radius).V;

    // brute force: all 2nd extreme points x all |B|^n joint recommendations,
    // objective evaluated through the materialized operator
    const Matrix L = materialize_L(A, d);
    const auto pts = extreme_points(est.estimate(), est.precision(), radius);
    double best = -1e300;
    Matrix best_V;
    for (const auto& u : pts) {
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          Matrix W(n, d);
          W.row(0) = items[static_cast<size_t>(a)];
          W.row(1) = items[static_cast<size_t>(b)];
          const double val = u.dot(L * vec_rows(W));
          if (val > best) {
            best = val;
            best_V = W;
          }
        }
      }
    }
    // objective equality (the argmax may differ only on exact ties)
    double got = -1e300;
    for (const auto& u : pts) got = std::max(got, u.dot(L * vec_rows(V)));
    CHECK(got == doctest::Approx(best).epsilon(1e-9));
  }
}

TEST_CASE("optimism: polytope max dominates the center value") {
  RngStream rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2, d = 2;
    auto est = seeded_estimator(n, d, 1e-2, rng);
    const Matrix A = random_stochastic(n, rng);
    std::vector<Vector> items;
    for (int k = 0; k < 4; ++k) items.push_back(random_vector(d, rng));
    auto cat = Catalog::finite(items);
    const double radius = 0.5;

    // value achieved by the selection at its own maximizing extreme point
    const auto pts = extreme_points(est.estimate(), est.precision(), radius);
    double best = -1e300;
    for (const auto& u : pts) {
      const Vector z = apply_L_transpose(A, u, d);
      double tot = 0.0;
      for (int i = 0; i < n; ++i) tot += cat.linmax(z.segment(i * d, d)).value;
      best = std::max(best, tot);
    }
    // greedy value at the center
    const Vector zc = apply_L_transpose(A, est.estimate(), d);
    double center = 0.0;
    for (int i = 0; i < n; ++i) center += cat.linmax(zc.segment(i * d, d)).value;
    CHECK(best >= center - 1e-12);
  }
}

TEST_CASE("evaluation-count law") {
  RngStream rng(17);
  for (auto [n, d, M] : {std::tuple{1, 1, 2}, {2, 2, 3}, {3, 2, 5}, {2, 3, 4}}) {
    auto est = seeded_estimator(n, d, 1e-2, rng);
    const Matrix A = random_stochastic(n, rng);
    std::vector<Vector> items;
    for (int k = 0; k < M; ++k) items.push_back(random_vector(d, rng));
    auto cat = Catalog::finite(items);
    SelectionStats stats;
    select_arms(est, A, cat, 0.7, &stats);
    CHECK(stats.extreme_points == 2L * n * d);
    CHECK(stats.candidate_evals == 2L * n * d * n * M);
  }
}

TEST_CASE("run_linrel determinism and per-round radii") {
  SimConfig cfg;
  cfg.graph = complete_graph(3);
  cfg.alpha = 0.2;
  RngStream rng(23);
  cfg.U0 = random_matrix(3, 2, rng, 0.0, 1.0);
  std::vector<Vector> items;
  for (int k = 0; k < 4; ++k) items.push_back(random_vector(2, rng, 0.0, 1.0));
  cfg.catalog = Catalog::finite(items);
  cfg.sigma = 0.5;
  cfg.horizon = 15;
  cfg.seed = 42;

  const RunResult a = run_linrel(cfg);
  const RunResult b = run_linrel(cfg);
  REQUIRE(a.records.size() == 15);
  REQUIRE(a.radii.size() == 15);
  for (size_t k = 0; k < a.records.size(); ++k) {
    CHECK(a.records[k].inst_regret == b.records[k].inst_regret);
    CHECK((a.records[k].rewards - b.records[k].rewards).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK(a.radii[k] == b.radii[k]);
    CHECK(a.radii[k] > 0.0);
  }
  // per-selection counters accumulate exactly over the horizon
  CHECK(a.stats.extreme_points == 15L * 2 * 3 * 2);
  CHECK(a.stats.candidate_evals == 15L * 2 * 3 * 2 * 3 * 4);
}

TEST_CASE("noiseless scalar run locks onto the best item") {
  // sigma = 0, alpha = 1, n = 1, |B| = 2: once the estimate pins the better
  // item the regret tail is identically zero.
  SimConfig cfg;
  cfg.graph = complete_graph(1);
  cfg.alpha = 1.0;
  cfg.U0 = Matrix::Constant(1, 1, 0.7);
  Vector lo(1), hi(1);
  lo << 0.4;
  hi << 1.0;
  cfg.catalog = Catalog::finite({lo, hi});
  cfg.sigma = 0.0;
  cfg.horizon = 60;
  cfg.seed = 5;

  const RunResult res = run_linrel(cfg);
  for (size_t k = 20; k < res.records.size(); ++k) {
    CHECK(std::abs(res.records[k].inst_regret) < 1e-9);
  }
  const double tail = res.records.back().cum_regret - res.records[19].cum_regret;
  CHECK(std::abs(tail) < 1e-9);
}

TEST_CASE("beats the random baseline on the ball") {
  SimConfig cfg;
  cfg.graph = complete_graph(6);
  cfg.alpha = 0.1;
  cfg.catalog = Catalog::unit_ball(3);
  cfg.sigma = 1.0;
  cfg.horizon = 60;

  double linrel_total = 0.0, rand_total = 0.0;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    RngStream rng(hash_tag(seed, "env"));
    cfg.U0 = random_matrix(6, 3, rng, 0.0, 1.0);
    cfg.seed = seed;
    linrel_total += run_linrel(cfg).total_regret();
    rand_total += run_rand(cfg).total_regret();
  }
  CHECK(linrel_total < rand_total);
}

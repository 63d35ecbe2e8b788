#include "sib/bounds.hpp"

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <utility>

#include "doctest.h"

using namespace sib;

TEST_CASE("beta_t scalar arithmetic") {
  // t=1: ln t = 0 kills the first term; ((8/3) ln 10)^2
  CHECK(beta_t(1, 3, 4, 0.1) == doctest::Approx(37.70238656340195).epsilon(1e-12));
  // t=2, n=d=1: max{128 ln2 ln40, ((8/3) ln40)^2} = 327.28785...
  CHECK(beta_t(2, 1, 1, 0.1) == doctest::Approx(327.28785830970685).epsilon(1e-12));
  CHECK(beta_t(7, 3, 2, 0.3, 0.0) == 0.0);
  CHECK(beta_t(5, 2, 2, 0.2, 1e-5) ==
        doctest::Approx(1e-5 * beta_t(5, 2, 2, 0.2)).epsilon(1e-12));
  CHECK_THROWS_AS(beta_t(0, 1, 1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(beta_t(1, 1, 1, 1.5), std::invalid_argument);
}

TEST_CASE("confidence-set regret bounds") {
  SUBCASE("finite positive at the default grid point") {
    const double c1 = linrel_regret_bound(100, 10, 5, 0.1, ConfidenceSet::C1);
    const double c2 = linrel_regret_bound(100, 10, 5, 0.1, ConfidenceSet::C2);
    CHECK(std::isfinite(c1));
    CHECK(std::isfinite(c2));
    CHECK(c1 > 0.0);
    CHECK(c2 > 0.0);
  }
  SUBCASE("C1/C2 ratio equals the closed-form n^2 d / (n sqrt(nd))") {
    for (auto [n, d] : {std::pair{10, 5}, {2, 2}, {100, 20}, {3, 7}}) {
      const double ratio = linrel_regret_bound(50, n, d, 0.1, ConfidenceSet::C1) /
                           linrel_regret_bound(50, n, d, 0.1, ConfidenceSet::C2);
      const double want = (static_cast<double>(n) * n * d) /
                          (n * std::sqrt(static_cast<double>(n) * d));
      CHECK(std::abs(ratio - want) <= 1e-12 * want);
    }
  }
  SUBCASE("nondecreasing in T for T >= 3") {
    double prev1 = linrel_regret_bound(3, 10, 5, 0.1, ConfidenceSet::C1);
    double prev2 = linrel_regret_bound(3, 10, 5, 0.1, ConfidenceSet::C2);
    for (int T = 4; T <= 300; ++T) {
      const double b1 = linrel_regret_bound(T, 10, 5, 0.1, ConfidenceSet::C1);
      const double b2 = linrel_regret_bound(T, 10, 5, 0.1, ConfidenceSet::C2);
      CHECK(b1 >= prev1);
      CHECK(b2 >= prev2);
      prev1 = b1;
      prev2 = b2;
    }
  }
}

TEST_CASE("posterior-sampling Bayes bound") {
  SUBCASE("finite positive at a degenerate point") {
    const double b = ts_bayes_regret_bound(1, 1, 1, 0.5);
    CHECK(std::isfinite(b));
    CHECK(b > 0.0);
  }
  SUBCASE("monotone nondecreasing in T") {
    double prev = ts_bayes_regret_bound(1, 10, 5, 0.1);
    for (int T = 2; T <= 200; ++T) {
      const double b = ts_bayes_regret_bound(T, 10, 5, 0.1);
      CHECK(b >= prev);
      prev = b;
    }
  }
  SUBCASE("grows like T^{3/2} as printed") {
    // log-ratio exponent across decades stays near 1.5 (polylog drift above)
    const double b2 = ts_bayes_regret_bound(100, 1, 1, 0.5);
    const double b3 = ts_bayes_regret_bound(1000, 1, 1, 0.5);
    const double b4 = ts_bayes_regret_bound(10000, 1, 1, 0.5);
    const double e1 = std::log(b3 / b2) / std::log(10.0);
    const double e2 = std::log(b4 / b3) / std::log(10.0);
    CHECK(e1 > 1.45);
    CHECK(e1 < 1.75);
    CHECK(e2 > 1.45);
    CHECK(e2 < 1.75);
  }
}

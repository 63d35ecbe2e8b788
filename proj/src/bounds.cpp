#include "sib/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace sib {

double beta_t(int t, int n, int d, double delta, double scale) {
  if (t < 1) throw std::invalid_argument("beta_t requires t >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
  const double nd = static_cast<double>(n) * d;
  const double log_ratio = std::log(static_cast<double>(t) * t / delta);
  const double term1 = 128.0 * nd * std::log(static_cast<double>(t)) * log_ratio;
  const double term2 = std::pow((8.0 / 3.0) * log_ratio, 2.0);
  return scale * std::max(term1, term2);
}

double linrel_regret_bound(int T, int n, int d, double delta, ConfidenceSet set) {
  const double nd = static_cast<double>(n) * d;
  const double bT = beta_t(T, n, d, delta);
  const double log_term = std::log(1.0 + (static_cast<double>(n) / d) * T);
  switch (set) {
    case ConfidenceSet::C2:
      return n * std::sqrt(8.0 * nd * bT * T * log_term);
    case ConfidenceSet::C1:
      return static_cast<double>(n) * n * d * std::sqrt(8.0 * bT * T * log_term);
  }
  throw std::invalid_argument("unknown confidence set");
}

double ts_beta(int T, int n, int d, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
  const double nd = static_cast<double>(n) * d;
  const double log_term = std::log(1.0 + (static_cast<double>(n) / d) * T);
  return 1.0 + std::sqrt(2.0 * std::log(1.0 / delta) + nd * log_term);
}

double ts_bayes_regret_bound(int T, int n, int d, double delta) {
  const double nd = static_cast<double>(n) * d;
  const double bT = ts_beta(T, n, d, delta);
  const double log_term = std::log(1.0 + (static_cast<double>(n) / d) * T);
  return 2.0 + 2.0 * n * bT * T * std::sqrt(2.0 * nd * T * log_term);
}

}  // namespace sib

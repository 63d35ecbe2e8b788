#pragma once

namespace sib {

enum class ConfidenceSet { C1, C2 };

/// beta_t = max{128 nd ln t ln(t^2/delta), ((8/3) ln(t^2/delta))^2}, times scale.
double beta_t(int t, int n, int d, double delta, double scale = 1.0);

// High-probability cumulative regret bounds for the confidence-set policy:
//   C2: n  sqrt(8 nd beta_T T ln(1 + (n/d) T))
//   C1: n^2 d sqrt(8 beta_T T ln(1 + (n/d) T))
double linrel_regret_bound(int T, int n, int d, double delta, ConfidenceSet set);

/// beta_T = 1 + sqrt(2 log(1/delta) + nd log(1 + (n/d) T)).
double ts_beta(int T, int n, int d, double delta);

/// Bayesian regret bound 2 + 2 n beta_T T sqrt(2 nd T ln(1 + (n/d) T)),
/// reported verbatim as stated (superlinear in T as printed).
double ts_bayes_regret_bound(int T, int n, int d, double delta);

}  // namespace sib

#include "sib/policy_linucb.hpp"

#include <cmath>
#include <stdexcept>

namespace sib {

namespace {

/// (A kron I_d) * M, applied column by column so L is never materialized.
Matrix apply_AI(const Matrix& A, const Matrix& M, Index d) {
  Matrix out(M.rows(), M.cols());
  for (Index j = 0; j < M.cols(); ++j) {
    out.col(j) = vec_rows(A * unvec_rows(M.col(j), A.rows(), d));
  }
  return out;
}

Matrix psd_project(const Matrix& Y) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (Y + Y.transpose()));
  const Vector ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

// Congruence scaling into D: shrink any user block whose diagonal sum
// exceeds 1, and the last row/column if the corner exceeds 1. Keeps PSD.
void scale_into_D(Matrix& Y, int n, int d) {
  for (int i = 0; i < n; ++i) {
    const double s = Y.diagonal().segment(static_cast<Index>(i) * d, d).sum();
    if (s > 1.0) {
      const double g = 1.0 / std::sqrt(s);
      Y.middleRows(static_cast<Index>(i) * d, d) *= g;
      Y.middleCols(static_cast<Index>(i) * d, d) *= g;
    }
  }
  const Index last = Y.rows() - 1;
  if (Y(last, last) > 1.0) {
    const double g = 1.0 / std::sqrt(Y(last, last));
    Y.row(last) *= g;
    Y.col(last) *= g;
  }
}

double objective(const Matrix& H0, const Matrix& Y) { return H0.cwiseProduct(Y).sum(); }

/// Feasible rank-one candidate y = (v_1..v_n, t') from per-block content of
/// `lead`, with t' chosen to make the linear term nonnegative.
Vector rank_one_candidate(const Vector& lead, const Vector& ell, int n, int d) {
  Vector y(static_cast<Index>(n) * d + 1);
  for (int i = 0; i < n; ++i) {
    Vector block = lead.segment(static_cast<Index>(i) * d, d);
    const double norm = block.norm();
    if (norm > 1.0) block /= norm;
    y.segment(static_cast<Index>(i) * d, d) = block;
  }
  const double lin = ell.dot(y.head(ell.size()));
  y(y.size() - 1) = lin >= 0.0 ? 1.0 : -1.0;
  return y;
}

// With t' pinned, v -> c v^T Q v + t' ell^T v is convex (Q is PSD), so the
// conditional-gradient step v_i <- g_i/|g_i| is monotone and lands on a
// block-sphere stationary point. Used to generate rank-one candidates the
// lifted iterate must at least match.
Vector rank_one_ascent(const Matrix& quad, const Vector& ell, Vector v, double t_sign,
                       int n, int d) {
  for (int it = 0; it < 200; ++it) {
    const Vector g = 2.0 * (quad * v) + t_sign * ell;
    Vector next(v.size());
    for (int i = 0; i < n; ++i) {
      const Vector gi = g.segment(static_cast<Index>(i) * d, d);
      const double norm = gi.norm();
      next.segment(static_cast<Index>(i) * d, d) =
          norm > 1e-15 ? Vector(gi / norm) : Vector(v.segment(static_cast<Index>(i) * d, d));
    }
    if ((next - v).lpNorm<Eigen::Infinity>() < 1e-13) {
      v = next;
      break;
    }
    v = next;
  }
  return v;
}

}  // namespace

SdpProblem build_H0(const Vector& u_hat, const Matrix& Sigma, const Matrix& A, double c) {
  const Index n = A.rows();
  if (Sigma.rows() != Sigma.cols() || Sigma.rows() != u_hat.size() ||
      u_hat.size() % n != 0) {
    throw std::invalid_argument("build_H0: shape mismatch");
  }
  const Index d = u_hat.size() / n;
  const Index nd = u_hat.size();

  // L^T Sigma L = (A kron I) Sigma (A kron I)^T
  const Matrix W = apply_AI(A, Sigma, d);
  Matrix quad = apply_AI(A, W.transpose(), d).transpose();
  quad = 0.5 * (quad + quad.transpose());
  const Vector ell = apply_L_transpose(A, u_hat, d);

  SdpProblem prob;
  prob.n = static_cast<int>(n);
  prob.d = static_cast<int>(d);
  prob.c = c;
  prob.H0.setZero(nd + 1, nd + 1);
  prob.H0.topLeftCorner(nd, nd) = c * quad;
  prob.H0.topRightCorner(nd, 1) = ell / 2.0;
  prob.H0.bottomLeftCorner(1, nd) = ell.transpose() / 2.0;
  return prob;
}

SdpResult sdp_solve(const SdpProblem& prob, int max_iter, double tol) {
  const int n = prob.n;
  const int d = prob.d;
  const Index nd = static_cast<Index>(n) * d;
  if (prob.H0.rows() != nd + 1) throw std::invalid_argument("sdp_solve: malformed problem");

  const Vector ell = 2.0 * prob.H0.topRightCorner(nd, 1);

  // Warm start at the rank-one point of the greedy center arm.
  Vector lead(nd);
  for (int i = 0; i < n; ++i) {
    Vector g = ell.segment(static_cast<Index>(i) * d, d);
    const double norm = g.norm();
    if (norm > 0.0) {
      g /= norm;
    } else {
      g.setZero();
      g(0) = 1.0;
    }
    lead.segment(static_cast<Index>(i) * d, d) = g;
  }
  Vector y0 = rank_one_candidate(lead, ell, n, d);
  Matrix Y = y0 * y0.transpose();

  double value = objective(prob.H0, Y);
  Matrix best_Y = Y;
  double best_value = value;

  const double h_norm = prob.H0.norm();
  double step = h_norm > 0.0 ? 1.0 / h_norm : 1.0;
  double prev = value;
  bool converged = false;
  int it = 0;
  for (; it < max_iter; ++it) {
    Matrix Ynext = Y + step * prob.H0;
    Ynext = psd_project(Ynext);
    scale_into_D(Ynext, n, d);
    const double v = objective(prob.H0, Ynext);
    if (v > best_value) {
      best_value = v;
      best_Y = Ynext;
    }
    step *= (v >= prev) ? 1.1 : 0.5;
    const bool small_change = std::abs(v - prev) < tol;
    prev = v;
    Y = std::move(Ynext);
    if (small_change && it > 0) {
      converged = true;
      ++it;
      break;
    }
  }

  // Rank-one polish: ascend from several deterministic starts and from the
  // best iterate's top eigenvector; every candidate is feasible, keep the
  // best-scoring one.
  const Matrix quad = prob.H0.topLeftCorner(nd, nd);
  std::vector<Vector> starts;
  starts.push_back(lead);
  {
    Eigen::SelfAdjointEigenSolver<Matrix> es(best_Y);
    starts.push_back(es.eigenvectors().col(es.eigenvectors().cols() - 1).head(nd));
    Eigen::SelfAdjointEigenSolver<Matrix> eq(quad);
    starts.push_back(eq.eigenvectors().col(eq.eigenvectors().cols() - 1));
  }
  RngStream restart_rng(0x5d9u);
  for (int k = 0; k < 6; ++k) {
    Vector g(nd);
    for (Index j = 0; j < nd; ++j) g(j) = restart_rng.gaussian();
    starts.push_back(std::move(g));
  }
  auto consider = [&](const Vector& y) {
    const Matrix Y_r = y * y.transpose();
    const double v_r = objective(prob.H0, Y_r);
    if (v_r > best_value) {
      best_value = v_r;
      best_Y = Y_r;
    }
  };
  for (const Vector& raw : starts) {
    Vector v0(nd);
    for (int i = 0; i < n; ++i) {
      Vector block = raw.segment(static_cast<Index>(i) * d, d);
      const double norm = block.norm();
      if (norm > 1e-15) {
        block /= norm;
      } else {
        block.setZero();
        block(0) = 1.0;
      }
      v0.segment(static_cast<Index>(i) * d, d) = block;
    }
    for (double t_sign : {1.0, -1.0}) {
      const Vector v = rank_one_ascent(quad, ell, v0, t_sign, n, d);
      Vector y(nd + 1);
      y << v, t_sign;
      consider(y);
    }
  }
  consider(rank_one_candidate(lead, ell, n, d));

  return SdpResult{std::move(best_Y), best_value, it, converged};
}

Matrix round_Y(const Matrix& Y, int n, int d) {
  const Index nd = static_cast<Index>(n) * d;
  if (Y.rows() != nd + 1 || Y.cols() != nd + 1) {
    throw std::invalid_argument("round_Y: shape mismatch");
  }
  Matrix V(n, d);
  Eigen::SelfAdjointEigenSolver<Matrix> es(Y);
  const double top_ev = es.eigenvalues()(es.eigenvalues().size() - 1);
  if (!(top_ev > 1e-14)) {
    V.setZero();
    V.col(0).setOnes();
    return V;
  }
  Vector y = std::sqrt(top_ev) * es.eigenvectors().col(es.eigenvectors().cols() - 1);
  // Fix the eigenvector sign: last entry positive, falling back to the
  // first nonzero entry, so the rounding is deterministic.
  double pivot = y(y.size() - 1);
  if (pivot == 0.0) {
    for (Index i = 0; i < y.size(); ++i) {
      if (y(i) != 0.0) {
        pivot = y(i);
        break;
      }
    }
  }
  if (pivot < 0.0) y = -y;

  for (int i = 0; i < n; ++i) {
    Vector block = y.segment(static_cast<Index>(i) * d, d);
    const double norm = block.norm();
    if (norm > 1.0) block /= norm;
    V.row(i) = block;
  }
  return V;
}

RunResult run_linucb(const SimConfig& cfg, const LinUcbConfig& policy) {
  if (cfg.catalog.is_finite()) {
    throw std::invalid_argument(
        "run_linucb: finite catalogs are unsupported; the selection relaxation needs the unit ball");
  }
  const Index nd = static_cast<Index>(cfg.graph.n) * cfg.catalog.dim();
  EstimatorState est(nd, cfg.ridge_lambda);

  PolicyHooks hooks;
  hooks.name = "linucb";
  hooks.select = [&](int, const Matrix& A) {
    const SdpProblem prob = build_H0(est.estimate(), est.covariance(), A, policy.c);
    const SdpResult res = sdp_solve(prob, policy.max_iter, policy.tol);
    return round_Y(res.Y, cfg.graph.n, cfg.catalog.dim());
  };
  hooks.observe = [&](int, const Matrix& A, const Matrix& V, const Vector& r) {
    est.ingest_round(A, V, r);
  };
  return run_simulation(cfg, hooks);
}

}  // namespace sib

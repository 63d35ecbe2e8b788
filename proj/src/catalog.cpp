#include "sib/catalog.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sib {

Catalog Catalog::finite(std::vector<Vector> items) {
  if (items.empty()) throw std::invalid_argument("finite catalog must contain at least one item");
  Catalog c;
  c.finite_ = true;
  c.d_ = static_cast<int>(items.front().size());
  for (const auto& v : items) {
    if (v.size() != c.d_) throw std::invalid_argument("catalog items must share one dimension");
    if (!v.allFinite()) throw std::invalid_argument("catalog items must be finite");
  }
  c.items_ = std::move(items);
  return c;
}

Catalog Catalog::unit_ball(int d) {
  if (d < 1) throw std::invalid_argument("ball dimension must be at least 1");
  Catalog c;
  c.finite_ = false;
  c.d_ = d;
  return c;
}

Catalog Catalog::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog file: " + path);
  std::vector<Vector> items;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    Vector v(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) v(static_cast<Index>(i)) = vals[i];
    items.push_back(std::move(v));
  }
  return finite(std::move(items));
}

LinmaxResult Catalog::linmax(const Vector& z, long* eval_counter) const {
  if (z.size() != d_) throw std::invalid_argument("linmax: dimension mismatch");
  if (!z.allFinite()) throw std::invalid_argument("linmax: non-finite input");
  LinmaxResult res;
  if (finite_) {
    double best = -std::numeric_limits<double>::infinity();
    int best_idx = 0;
    for (int k = 0; k < size(); ++k) {
      if (eval_counter) ++*eval_counter;
      const double val = z.dot(items_[static_cast<size_t>(k)]);
      if (val > best) {  // strict: ties keep the lowest index
        best = val;
        best_idx = k;
      }
    }
    res.v = items_[static_cast<size_t>(best_idx)];
    res.value = best;
    res.index = best_idx;
  } else {
    const double norm = z.norm();
    if (norm == 0.0) {
      res.v = Vector::Zero(d_);
      res.v(0) = 1.0;
      res.value = 0.0;
    } else {
      res.v = z / norm;
      res.value = norm;
    }
  }
  return res;
}

std::vector<Vector> Catalog::spanning_init() const {
  std::vector<Vector> picks;
  if (!finite_) {
    for (int j = 0; j < d_; ++j) {
      Vector e = Vector::Zero(d_);
      e(j) = 1.0;
      picks.push_back(std::move(e));
    }
    return picks;
  }
  // Greedy max-volume: iteratively add the item maximizing the Gram
  // determinant of the selected set.
  std::vector<int> chosen;
  Matrix G;  // Gram matrix of chosen items
  for (int step = 0; step < d_; ++step) {
    double best_det = 0.0;
    int best_idx = -1;
    for (int k = 0; k < size(); ++k) {
      Matrix G2(step + 1, step + 1);
      if (step > 0) G2.topLeftCorner(step, step) = G;
      for (int c = 0; c < step; ++c) {
        const double g = items_[static_cast<size_t>(k)].dot(items_[static_cast<size_t>(chosen[static_cast<size_t>(c)])]);
        G2(step, c) = g;
        G2(c, step) = g;
      }
      G2(step, step) = items_[static_cast<size_t>(k)].squaredNorm();
      const double det = G2.determinant();
      if (det > best_det + 1e-15) {
        best_det = det;
        best_idx = k;
      }
    }
    if (best_idx < 0) {
      throw std::invalid_argument("catalog spans only rank " + std::to_string(step) +
                                  " of R^" + std::to_string(d_) +
                                  "; spanning initialization needs full rank");
    }
    chosen.push_back(best_idx);
    Matrix G2(step + 1, step + 1);
    if (step > 0) G2.topLeftCorner(step, step) = G;
    for (int c = 0; c < step; ++c) {
      const double g = items_[static_cast<size_t>(best_idx)].dot(items_[static_cast<size_t>(chosen[static_cast<size_t>(c)])]);
      G2(step, c) = g;
      G2(c, step) = g;
    }
    G2(step, step) = items_[static_cast<size_t>(best_idx)].squaredNorm();
    G = std::move(G2);
  }
  for (int idx : chosen) picks.push_back(items_[static_cast<size_t>(idx)]);
  return picks;
}

bool Catalog::contains(const Vector& v, double tol) const {
  if (v.size() != d_) return false;
  if (!finite_) return v.norm() <= 1.0 + tol;
  for (const auto& item : items_) {
    if ((item - v).lpNorm<Eigen::Infinity>() <= tol) return true;
  }
  return false;
}

}  // namespace sib

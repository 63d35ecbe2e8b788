#pragma once

#include <string>
#include <vector>

#include "sib/linalg.hpp"

namespace sib {

struct LinmaxResult {
  Vector v;
  double value = 0.0;
  int index = -1;  // catalog index for finite catalogs, -1 for the ball
};

// The recommendation set B: either a finite item list or the unit L2 ball.
// Every policy's arm selection bottoms out in linmax() over this set.
class Catalog {
 public:
  static Catalog finite(std::vector<Vector> items);
  static Catalog unit_ball(int d);

  /// One item per line, d comma-separated decimals.
  static Catalog load_csv(const std::string& path);

  bool is_finite() const { return finite_; }
  int dim() const { return d_; }
  int size() const { return static_cast<int>(items_.size()); }  // 0 for the ball
  const std::vector<Vector>& items() const { return items_; }

  /// max_{v in B} z^T v. Finite: exact scan, ties to the lowest index.
  /// Ball: v = z/|z| for z != 0, else e_1. `eval_counter`, when given,
  /// is incremented once per scanned finite candidate.
  LinmaxResult linmax(const Vector& z, long* eval_counter = nullptr) const;

  // d items whose span is R^d: the standard basis for the ball, greedy
  // max-Gram-volume selection for finite catalogs. Throws (reporting the
  // achieved rank) if the catalog does not span R^d.
  std::vector<Vector> spanning_init() const;

  bool contains(const Vector& v, double tol = 1e-9) const;

 private:
  bool finite_ = false;
  int d_ = 0;
  std::vector<Vector> items_;
};

}  // namespace sib

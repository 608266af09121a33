#pragma once

#include <Eigen/Dense>

#include "curvem/curve.hpp"

namespace curvem {

/// Scaled monomials m_a(x) = ((x-xb)/h)^a for |a| <= degree, ordered by total
/// degree then by the y-exponent: 1, X, Y, X^2, XY, Y^2, ...
struct MonomialBasis {
  Vec2 xb = Vec2::Zero();
  double h = 1.0;
  int degree = 0;

  static int dim(int d) { return d < 0 ? 0 : (d + 1) * (d + 2) / 2; }
  static int index(int a, int b) {
    const int d = a + b;
    return d * (d + 1) / 2 + b;
  }
  static std::pair<int, int> exponent(int idx);

  int size() const { return dim(degree); }
  Eigen::VectorXd eval(const Vec2& x) const;
  // d/dx and d/dy of every monomial at x.
  void eval_grad(const Vec2& x, Eigen::VectorXd& gx, Eigen::VectorXd& gy) const;
};

}  // namespace curvem

#pragma once

#include <Eigen/Dense>

namespace curvem {

enum class RuleKind { Legendre, Lobatto };

/// 1D rule on the reference interval [-1,1].
struct Rule1D {
  Eigen::VectorXd points;
  Eigen::VectorXd weights;
  int exactness = 0;  // exact for polynomials up to this degree
};

// Gauss-Legendre: npts >= 1, exact to degree 2*npts-1.
Rule1D gauss_legendre(int npts);

// Gauss-Lobatto: npts >= 2, exact to degree 2*npts-3, includes both endpoints.
Rule1D gauss_lobatto(int npts);

Rule1D gauss_rule_1d(int npts, RuleKind kind);

}  // namespace curvem

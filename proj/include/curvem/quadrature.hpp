#pragma once

#include "curvem/mesh.hpp"
#include "curvem/rules1d.hpp"

namespace curvem {

/// Physical quadrature rule: 2D points with weights. Element rules declare
/// the polynomial degree they integrate exactly.
struct QuadratureRule {
  Eigen::Matrix2Xd points;
  Eigen::VectorXd weights;
  int exactness = 0;
  bool compression_stalled = false;
};

/// Rule along an edge: points gamma(t_i) with arclength weights
/// w_i * |gamma'(t_i)| * (tb-ta)/2, in the edge's own direction.
QuadratureRule edge_rule(const CurvedMesh& mesh, const Edge& edge, int npts,
                         RuleKind kind = RuleKind::Lobatto);

/// Divergence-theorem moments m_ab = int_E ((x-x0)/s)^a ((y-y0)/s)^b for
/// a+b <= deg (indexed per MonomialBasis). Straight edges are integrated
/// exactly; arcs adaptively to 1e-13 relative stagnation.
Eigen::VectorXd boundary_moments(const CurvedMesh& mesh, const Element& element,
                                 int deg, const Vec2& x0 = Vec2::Zero(),
                                 double s = 1.0);

/// Volume rule on a (possibly curved) element, exact to the requested order
/// for polynomials: fan of cone maps from a star point with tensor Gauss
/// rules, positive weights and interior points by construction.
QuadratureRule element_rule(const CurvedMesh& mesh, const Element& element,
                            int order);

/// Caratheodory-style node elimination down to (n+1)(n+2)/2 points while
/// keeping weights positive and moments up to degree n. Flags stall instead
/// of throwing when it cannot reach the target.
QuadratureRule compress_rule(const CurvedMesh& mesh, const Element& element,
                             const QuadratureRule& rule, int order);

/// Winding-number point location against a sampled element boundary.
bool point_in_element(const CurvedMesh& mesh, const Element& element,
                      const Vec2& p);

}  // namespace curvem

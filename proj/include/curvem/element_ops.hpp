#pragma once

#include <functional>
#include <vector>

#include "curvem/edge_space.hpp"
#include "curvem/monomials.hpp"
#include "curvem/quadrature.hpp"

namespace curvem {

struct SpaceConfig {
  enum class QuadratureMode { Minimal, Higher };
  int k = 1;
  SpaceVariant variant = SpaceVariant::Co;
  QuadratureMode quadrature = QuadratureMode::Minimal;
  int edge_point_boost = 0;   // extra edge quadrature points beyond the mode
  int volume_order_boost = 0; // extra volume exactness beyond the mode
  bool compress = true;

  int n_edge_points() const {
    return k + 1 + (quadrature == QuadratureMode::Higher ? 1 : 0) +
           edge_point_boost;
  }
  int volume_order() const {
    const int base = quadrature == QuadratureMode::Higher ? 2 * k : 2 * k - 2;
    return std::max(0, base) + volume_order_boost;
  }
};

/// Global numbering: scalar nodes (vertices, then k-1 interior nodes per edge
/// in ta->tb order), two dofs per node interleaved; element moment dofs
/// (against scaled monomials of degree <= k-2) appended per element.
struct DofMap {
  int k = 1;
  int n_vertices = 0;
  int n_edges = 0;
  int n_elements = 0;
  int n_moment = 0;  // dim P_{k-2}
  std::vector<Vec2> node_pos;
  int total = 0;

  DofMap() = default;
  DofMap(const CurvedMesh& mesh, int order);

  int n_nodes() const { return n_vertices + n_edges * (k - 1); }
  int vertex_node(int v) const { return v; }
  int edge_node(int e, int i) const { return n_vertices + e * (k - 1) + i; }
  int node_dof(int node, int comp) const { return 2 * node + comp; }
  int moment_dof(int elem, int alpha, int comp) const {
    return 2 * n_nodes() + elem * 2 * n_moment + 2 * alpha + comp;
  }
};

/// Per-point boundary evaluation table along one traversed element edge.
struct ElementEdgeTable {
  int edge = -1;
  bool flipped = false;
  Eigen::VectorXd t;        // native edge parameters of the quadrature points
  Eigen::Matrix2Xd x;       // physical points
  Eigen::VectorXd w;        // arclength weights (positive)
  Eigen::Matrix2Xd normal;  // outward unit normals
  std::vector<Eigen::Matrix<double, 2, Eigen::Dynamic>> shape;  // 2 x 2(k+1)
  std::vector<int> cols;    // local dof index of each shape column
};

struct ElementOperators {
  int elem = -1;
  int ndof = 0;
  std::vector<int> gdofs;   // local -> global dof ids
  MonomialBasis basis_k, basis_km1;
  double area = 0.0;

  Eigen::MatrixXd pi_eps;   // (3*dim P_{k-1}) x ndof, rows slot-major
  Eigen::MatrixXd dof_poly; // (2*dim P_k) x ndof, rows 2*alpha+comp
  Eigen::MatrixXd pi_dof;   // ndof x ndof dof-projector
  Eigen::MatrixXd stab;     // I - pi_dof

  QuadratureRule rule;               // volume rule
  std::vector<Eigen::Matrix3Xd> B;   // per qp: 3 x ndof (Voigt exx, eyy, gamma)
  Eigen::Matrix3Xd B_centroid;       // strain evaluation at the centroid

  /// Voigt strain of the projected field at an arbitrary point.
  Eigen::Matrix3Xd strain_matrix(const Vec2& x) const;
  /// Projected displacement (degree-k polynomial from the dof projector).
  Vec2 poly_displacement(const Eigen::VectorXd& local_u, const Vec2& x) const;

  std::vector<ElementEdgeTable> edge_tables;
};

ElementOperators build_element_operators(const CurvedMesh& mesh,
                                         const DofMap& dofs, int elem,
                                         const SpaceConfig& config);

/// Dof interpolation of an analytic field (moments by high-order quadrature).
Eigen::VectorXd interpolate(const std::function<Vec2(const Vec2&)>& u,
                            const CurvedMesh& mesh, const DofMap& dofs);

}  // namespace curvem

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "curvem/element_ops.hpp"

namespace curvem {

/// Relative l-infinity displacement error over the skeleton dof points.
/// Falls back to the absolute error (flag set) when the exact field vanishes
/// on the skeleton.
double error_displacement_skeleton(const std::function<Vec2(const Vec2&)>& u,
                                   const Eigen::VectorXd& uh,
                                   const DofMap& dofs,
                                   bool* absolute_fallback = nullptr);

/// Relative L2 strain error via the Pi^eps projection, element quadrature of
/// order >= 2k. exact_strain returns Voigt (e_xx, e_yy, gamma).
double error_strain_l2(
    const std::function<Eigen::Vector3d(const Vec2&)>& exact_strain,
    const Eigen::VectorXd& uh, const CurvedMesh& mesh,
    const std::vector<ElementOperators>& ops, int k,
    bool* absolute_fallback = nullptr);

struct ErrorReport {
  std::string mesh_id;
  int n_elements = 0;
  double h = 0.0;
  int dofs = 0;
  double e_u = 0.0;
  double e_eps = 0.0;
  double runtime_s = 0.0;
};

struct ConvergenceTable {
  std::vector<ErrorReport> rows;
  double slope_u = 0.0;
  double slope_eps = 0.0;
  // least-squares slope of log(err) vs log(h) over the last (up to) 3 rows
  void compute_slopes();
};

}  // namespace curvem

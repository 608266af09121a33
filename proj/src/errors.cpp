#include "curvem/errors.hpp"

#include <cmath>

namespace curvem {

double error_displacement_skeleton(const std::function<Vec2(const Vec2&)>& u,
                                   const Eigen::VectorXd& uh,
                                   const DofMap& dofs,
                                   bool* absolute_fallback) {
  double num = 0.0, den = 0.0;
  for (int n = 0; n < dofs.n_nodes(); ++n) {
    const Vec2 ex = u(dofs.node_pos[std::size_t(n)]);
    const Vec2 ap(uh[dofs.node_dof(n, 0)], uh[dofs.node_dof(n, 1)]);
    num = std::max(num, (ex - ap).norm());
    den = std::max(den, ex.norm());
  }
  const bool fallback = den <= 1e-14;
  if (absolute_fallback) *absolute_fallback = fallback;
  return fallback ? num : num / den;
}

double error_strain_l2(
    const std::function<Eigen::Vector3d(const Vec2&)>& exact_strain,
    const Eigen::VectorXd& uh, const CurvedMesh& mesh,
    const std::vector<ElementOperators>& ops, int k,
    bool* absolute_fallback) {
  double num = 0.0, den = 0.0;
  for (int el = 0; el < mesh.num_elements(); ++el) {
    const ElementOperators& op = ops[std::size_t(el)];
    Eigen::VectorXd lu(op.ndof);
    for (int i = 0; i < op.ndof; ++i) lu[i] = uh[op.gdofs[std::size_t(i)]];
    const QuadratureRule rule =
        element_rule(mesh, mesh.elements[std::size_t(el)], 2 * k);
    for (int q = 0; q < rule.points.cols(); ++q) {
      const Eigen::Vector3d ex = exact_strain(rule.points.col(q));
      const Eigen::Vector3d ap = op.strain_matrix(rule.points.col(q)) * lu;
      // tensor norm: gamma carries weight 1/2 on the off-diagonal pair
      Eigen::Vector3d d = ex - ap;
      const double w = rule.weights[q];
      num += w * (d[0] * d[0] + d[1] * d[1] + 0.5 * d[2] * d[2]);
      den += w * (ex[0] * ex[0] + ex[1] * ex[1] + 0.5 * ex[2] * ex[2]);
    }
  }
  const bool fallback = den <= 1e-28;
  if (absolute_fallback) *absolute_fallback = fallback;
  return fallback ? std::sqrt(num) : std::sqrt(num / den);
}

void ConvergenceTable::compute_slopes() {
  const int n = int(rows.size());
  const int m = std::min(3, n);
  if (m < 2) {
    slope_u = slope_eps = 0.0;
    return;
  }
  auto slope = [&](auto get) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = n - m; i < n; ++i) {
      const double x = std::log(rows[std::size_t(i)].h);
      const double y = std::log(std::max(get(rows[std::size_t(i)]), 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
  };
  slope_u = slope([](const ErrorReport& r) { return r.e_u; });
  slope_eps = slope([](const ErrorReport& r) { return r.e_eps; });
}

}  // namespace curvem

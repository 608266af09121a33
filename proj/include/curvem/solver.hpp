#pragma once

#include <functional>
#include <memory>
#include <string>

#include "curvem/element_ops.hpp"
#include "curvem/materials.hpp"

namespace curvem {

struct DirichletBC {
  std::string group;
  bool fix_x = true, fix_y = true;
  std::function<Vec2(const Vec2&)> value = [](const Vec2&) {
    return Vec2::Zero();
  };
};

struct TractionBC {
  std::string group;
  // applied traction at full load, given the point and outward unit normal
  std::function<Vec2(const Vec2&, const Vec2&)> traction;
};

struct AnalysisConfig {
  SpaceConfig space;
  std::shared_ptr<Material> material;
  int steps = 1;
  double newton_tol = 1e-8;
  int max_newton = 25;
  std::vector<double> times;         // steps+1 instants; default 0,1,...,M
  std::vector<double> load_factors;  // per step; default i/M
  std::vector<DirichletBC> dirichlet;
  std::vector<TractionBC> tractions;
  std::function<Vec2(const Vec2&)> body_force;  // optional

  double factor(int i) const {  // i = 1..steps
    return load_factors.empty() ? double(i) / steps
                                : load_factors[std::size_t(i - 1)];
  }
  double time_at(int i) const {
    return times.empty() ? double(i) : times[std::size_t(i)];
  }
};

/// Committed history: one state per volume quadrature point plus a trailing
/// slot for the element centroid (feeds the stabilization weights).
using ElementStates = std::vector<Eigen::VectorXd>;

struct AnalysisResult {
  DofMap dofs;
  std::vector<ElementOperators> ops;
  Eigen::VectorXd u;
  std::vector<Eigen::VectorXd> u_history;         // per converged step
  std::vector<Eigen::VectorXd> residual_history;  // f_int - f_ext (reactions)
  std::vector<int> newton_iters;
  std::vector<ElementStates> states;  // committed at the final step
};

/// Internal force and consistent tangent of one element: consistency part by
/// quadrature of the material response at Pi^eps strains, stability part
/// stab^T diag(alpha) stab acting on dof values.
void element_force_and_tangent(const ElementOperators& ops,
                               const Material& material,
                               const Eigen::VectorXd& local_u,
                               const ElementStates& states_old,
                               ElementStates& states_new, double dt,
                               const Eigen::VectorXd& stab_weights,
                               Eigen::VectorXd& force, Eigen::MatrixXd& tangent);

/// D-recipe weights alpha_i = max{ |C(x_b)|_F , M_ii } from a committed state.
Eigen::VectorXd stabilization_weights(const ElementOperators& ops,
                                      const Material& material,
                                      const Eigen::VectorXd& local_u,
                                      const ElementStates& states, double dt);

/// Full-load external force vector (body force + tractions), unscaled.
Eigen::VectorXd external_load(const CurvedMesh& mesh, const DofMap& dofs,
                              const std::vector<ElementOperators>& ops,
                              const AnalysisConfig& config);

AnalysisResult run_analysis(const CurvedMesh& mesh,
                            const AnalysisConfig& config);

}  // namespace curvem

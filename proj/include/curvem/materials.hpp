#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

namespace curvem {

using Voigt = Eigen::Vector3d;     // (e_xx, e_yy, gamma_xy) / (s_xx, s_yy, s_xy)
using Tangent = Eigen::Matrix3d;   // d sigma / d eps in the same convention

/// Plane-strain constitutive law with per-quadrature-point history. evaluate()
/// is a pure trial: the committed state passed in is never modified.
class Material {
 public:
  virtual ~Material() = default;
  virtual int state_size() const { return 0; }
  virtual void initial_state(Eigen::VectorXd& state) const {
    state.setZero(state_size());
  }
  /// strain -> (stress, consistent tangent, trial state); dt only matters for
  /// rate-dependent models.
  virtual void evaluate(const Voigt& strain, const Eigen::VectorXd& state_old,
                        Eigen::VectorXd& state_new, double dt, Voigt& stress,
                        Tangent& tangent) const = 0;
};

class LinearElastic : public Material {
 public:
  LinearElastic(double E, double nu);
  void evaluate(const Voigt& strain, const Eigen::VectorXd& state_old,
                Eigen::VectorXd& state_new, double dt, Voigt& stress,
                Tangent& tangent) const override;
  double lambda() const { return lambda_; }
  double mu() const { return mu_; }

 private:
  double lambda_, mu_;
};

/// sigma = lt(rho) tr(eps) I + mt(rho) eps with rho = |dev2 eps|_F,
/// mt(rho) = (3/4)(1 + (1+rho^2)^{-1/2}) 1e4, lt(rho) = (3/4)(1 - (1+rho^2)^{-1/2}) 1e4
/// (lt + mt constant, so the volumetric response stays positive).
class HenckyVonMises : public Material {
 public:
  explicit HenckyVonMises(double scale = 1e4) : scale_(scale) {}
  void evaluate(const Voigt& strain, const Eigen::VectorXd& state_old,
                Eigen::VectorXd& state_new, double dt, Voigt& stress,
                Tangent& tangent) const override;

 private:
  double scale_;
};

/// Generalized Maxwell (Prony series) deviatoric relaxation, elastic bulk.
/// State: per term the internal deviatoric stress (xx, yy, zz, xy), then the
/// previous deviatoric strain (xx, yy, zz, xy).
class MaxwellViscoelastic : public Material {
 public:
  MaxwellViscoelastic(double E, double nu, double mu0,
                      std::vector<double> mu_m, std::vector<double> lambda_m);
  int state_size() const override { return 4 * int(mu_.size()) + 4; }
  void evaluate(const Voigt& strain, const Eigen::VectorXd& state_old,
                Eigen::VectorXd& state_new, double dt, Voigt& stress,
                Tangent& tangent) const override;
  double bulk() const { return K_; }
  double shear0() const { return G_; }
  double relaxation(double t) const;  // G(t)

 private:
  double K_, G_, mu0_;
  std::vector<double> mu_, lambda_;
};

/// J2 perfect plasticity, plane strain, radial return with consistent tangent.
/// State: plastic strain (xx, yy, zz, xy tensor component), then accumulated
/// equivalent plastic strain.
class J2Plasticity : public Material {
 public:
  J2Plasticity(double E, double nu, double sigma_y);
  int state_size() const override { return 5; }
  void evaluate(const Voigt& strain, const Eigen::VectorXd& state_old,
                Eigen::VectorXd& state_new, double dt, Voigt& stress,
                Tangent& tangent) const override;

 private:
  double K_, G_, sigma_y_;
};

/// Frobenius norm of the Voigt tangent (the alpha scale of the stabilization).
double tangent_norm(const Tangent& C);

}  // namespace curvem

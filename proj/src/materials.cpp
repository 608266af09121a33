#include "curvem/materials.hpp"

#include <cmath>
#include <stdexcept>

namespace curvem {

namespace {

// 3D deviatoric projection of a plane-strain Voigt strain increment:
// returns (e_xx, e_yy, e_zz, e_xy) tensor components.
Eigen::Vector4d deviatoric3(const Voigt& eps) {
  const double tr3 = (eps[0] + eps[1]) / 3.0;
  return {eps[0] - tr3, eps[1] - tr3, -tr3, 0.5 * eps[2]};
}

double tensor_dot(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + 2.0 * a[3] * b[3];
}

const Tangent kVolumetric = (Tangent() << 1, 1, 0, 1, 1, 0, 0, 0, 0).finished();

// Voigt form of 2G_eff * I_dev restricted to plane-strain components.
Tangent deviatoric_tangent(double two_g) {
  Tangent C;
  C << 2.0 / 3.0, -1.0 / 3.0, 0, -1.0 / 3.0, 2.0 / 3.0, 0, 0, 0, 0.5;
  return two_g * C;
}

}  // namespace

LinearElastic::LinearElastic(double E, double nu) {
  if (!(nu < 0.5)) throw std::invalid_argument("LinearElastic: nu must be < 0.5");
  lambda_ = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
  mu_ = E / (2.0 * (1.0 + nu));
}

void LinearElastic::evaluate(const Voigt& strain, const Eigen::VectorXd&,
                             Eigen::VectorXd& state_new, double, Voigt& stress,
                             Tangent& tangent) const {
  state_new.resize(0);
  tangent = lambda_ * kVolumetric;
  tangent(0, 0) += 2.0 * mu_;
  tangent(1, 1) += 2.0 * mu_;
  tangent(2, 2) += mu_;
  stress = tangent * strain;
}

void HenckyVonMises::evaluate(const Voigt& strain, const Eigen::VectorXd&,
                              Eigen::VectorXd& state_new, double, Voigt& stress,
                              Tangent& tangent) const {
  state_new.resize(0);
  const double d = strain[0] - strain[1], g = strain[2];
  const double rho2 = 0.5 * (d * d + g * g);
  const double tr = strain[0] + strain[1];
  const double w = 1.0 / std::sqrt(1.0 + rho2);
  const double mh = 0.75 * (1.0 + w);          // dimensionless mu factor
  const double mt = mh * scale_;               // mu~(rho)
  const double lt = 0.75 * (1.0 - w) * scale_;
  const Voigt half_eps(strain[0], strain[1], 0.5 * g);
  stress = lt * tr * Voigt(1, 1, 0) + mt * half_eps;
  tangent = lt * kVolumetric;
  tangent(0, 0) += mt;
  tangent(1, 1) += mt;
  tangent(2, 2) += 0.5 * mt;
  // rank-one part from dw/deps = -(w^3/2)(d, -d, g); la~ and mu~ move
  // oppositely, so the direction is (eps - tr I) against the strain probe.
  const double psi = -0.75 * w * w * w * scale_;
  const Voigt left = 0.5 * psi * (half_eps - tr * Voigt(1, 1, 0));
  tangent += left * Voigt(d, -d, g).transpose();
}

MaxwellViscoelastic::MaxwellViscoelastic(double E, double nu, double mu0,
                                         std::vector<double> mu_m,
                                         std::vector<double> lambda_m)
    : mu0_(mu0), mu_(std::move(mu_m)), lambda_(std::move(lambda_m)) {
  if (mu_.size() != lambda_.size())
    throw std::invalid_argument("MaxwellViscoelastic: Prony size mismatch");
  double sum = mu0_;
  for (double m : mu_) sum += m;
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("MaxwellViscoelastic: Prony weights must sum to 1");
  K_ = E / (3.0 * (1.0 - 2.0 * nu));
  G_ = E / (2.0 * (1.0 + nu));
}

double MaxwellViscoelastic::relaxation(double t) const {
  double f = mu0_;
  for (std::size_t m = 0; m < mu_.size(); ++m)
    f += mu_[m] * std::exp(-t / lambda_[m]);
  return G_ * f;
}

void MaxwellViscoelastic::evaluate(const Voigt& strain,
                                   const Eigen::VectorXd& state_old,
                                   Eigen::VectorXd& state_new, double dt,
                                   Voigt& stress, Tangent& tangent) const {
  const int M = int(mu_.size());
  const Eigen::Vector4d e = deviatoric3(strain);
  const Eigen::Vector4d e_old = state_old.segment<4>(4 * M);
  const Eigen::Vector4d de = e - e_old;
  state_new = state_old;
  state_new.segment<4>(4 * M) = e;
  Eigen::Vector4d s = 2.0 * G_ * mu0_ * e;
  double geff_factor = mu0_;
  for (int m = 0; m < M; ++m) {
    const double ef = std::exp(-dt / lambda_[std::size_t(m)]);
    const double eh = std::exp(-0.5 * dt / lambda_[std::size_t(m)]);
    state_new.segment<4>(4 * m) =
        ef * state_old.segment<4>(4 * m) +
        mu_[std::size_t(m)] * eh * 2.0 * G_ * de;
    s += state_new.segment<4>(4 * m);
    geff_factor += mu_[std::size_t(m)] * eh;
  }
  const double tr = strain[0] + strain[1];
  stress = Voigt(K_ * tr + s[0], K_ * tr + s[1], s[3]);
  tangent = K_ * kVolumetric + deviatoric_tangent(2.0 * G_ * geff_factor);
}

J2Plasticity::J2Plasticity(double E, double nu, double sigma_y)
    : sigma_y_(sigma_y) {
  if (!(sigma_y > 0.0)) throw std::invalid_argument("J2Plasticity: sigma_y <= 0");
  K_ = E / (3.0 * (1.0 - 2.0 * nu));
  G_ = E / (2.0 * (1.0 + nu));
}

void J2Plasticity::evaluate(const Voigt& strain,
                            const Eigen::VectorXd& state_old,
                            Eigen::VectorXd& state_new, double, Voigt& stress,
                            Tangent& tangent) const {
  state_new = state_old;
  const Eigen::Vector4d ep = state_old.head<4>();
  const Eigen::Vector4d s_tr = 2.0 * G_ * (deviatoric3(strain) - ep);
  const double norm_tr = std::sqrt(tensor_dot(s_tr, s_tr));
  const double radius = std::sqrt(2.0 / 3.0) * sigma_y_;
  const double tr = strain[0] + strain[1];
  if (norm_tr <= radius) {
    stress = Voigt(K_ * tr + s_tr[0], K_ * tr + s_tr[1], s_tr[3]);
    tangent = K_ * kVolumetric + deviatoric_tangent(2.0 * G_);
    return;
  }
  const Eigen::Vector4d n = s_tr / norm_tr;
  const double dgamma = (norm_tr - radius) / (2.0 * G_);
  const Eigen::Vector4d s = radius * n;
  state_new.head<4>() = ep + dgamma * n;
  state_new[4] += std::sqrt(2.0 / 3.0) * dgamma;
  stress = Voigt(K_ * tr + s[0], K_ * tr + s[1], s[3]);
  // consistent tangent: beta (I_dev - n x n) on the deviator
  const double beta = radius / norm_tr;
  for (int j = 0; j < 3; ++j) {
    Voigt de = Voigt::Zero();
    de[j] = 1.0;
    const Eigen::Vector4d ed = deviatoric3(de);
    const Eigen::Vector4d ds =
        2.0 * G_ * beta * (ed - n * tensor_dot(n, ed));
    const double dtr = (j < 2) ? 1.0 : 0.0;
    tangent.col(j) = Voigt(K_ * dtr + ds[0], K_ * dtr + ds[1], ds[3]);
  }
}

double tangent_norm(const Tangent& C) { return C.norm(); }

}  // namespace curvem

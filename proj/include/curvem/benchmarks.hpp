#pragma once

#include <string>
#include <vector>

#include "curvem/errors.hpp"
#include "curvem/mesh_gen.hpp"
#include "curvem/solver.hpp"

namespace curvem {

struct StudyOptions {
  int example = 1;
  SpaceVariant variant = SpaceVariant::Co;
  int k = 2;
  SpaceConfig::QuadratureMode quadrature = SpaceConfig::QuadratureMode::Minimal;
  std::string out_dir = ".";
  std::string family = "quad";
  int elements = 0;  // 0: per-example default
  int steps = 0;     // 0: per-example default
  unsigned seed = 1;
  int viscoelastic_set = 1;  // 1: (mu0,mu1)=(0.01,0.99); 2: (0.3,0.7)
};

/// Runs one benchmark and writes its CSV artifacts into out_dir.
void run_study(const StudyOptions& opt);

// -- Example 1: manufactured Hencky-von Mises solution on the unit disk ------
Vec2 example1_solution(const Vec2& x);
Eigen::Vector3d example1_strain(const Vec2& x);
Vec2 example1_forcing(const Vec2& x);  // -div sigma, 4th-order FD of the law

ConvergenceTable example1_convergence(SpaceVariant variant, int k,
                                      SpaceConfig::QuadratureMode quadrature,
                                      MeshFamily family,
                                      const std::vector<int>& sizes,
                                      unsigned seed = 1);

// -- Example 2: rigid-rotation Dirichlet data on curved disk meshes ----------
double example2_error(SpaceVariant variant, int k, MeshFamily family,
                      int elements, unsigned seed = 1);

// -- Example 3: viscoelastic thick-walled cylinder under inner pressure -----
struct Example3Result {
  std::vector<double> time;           // per step
  std::vector<Vec2> u_inner, u_outer; // displacement at points A and B
  std::vector<std::pair<double, double>> sigma_rho;  // (r, sigma_rr) final
};
Example3Result run_example3(SpaceVariant variant, int k, int elements,
                            int viscoelastic_set);
double example3_lame_radial(double r);  // instantaneous Lame displacement

// -- Example 4: perforated plate, J2 plasticity, prescribed top displacement -
struct Example4Result {
  std::vector<double> reaction;  // top reaction sum per increment
  std::vector<int> newton_iters;
};
Example4Result run_example4(SpaceVariant variant, int k, MeshFamily family,
                            int elements, int increments, unsigned seed = 1);

void write_errors_csv(const std::string& path, const ConvergenceTable& table);

}  // namespace curvem

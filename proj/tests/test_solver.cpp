#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "curvem/errors.hpp"
#include "curvem/mesh_gen.hpp"
#include "curvem/solver.hpp"

using namespace curvem;

namespace {

CurvedMesh disk_mesh(MeshFamily fam, int n, bool straight) {
  MeshSpec spec;
  spec.family = fam;
  spec.target_elements = n;
  CurvedMesh m = generate_benchmark_mesh(spec);
  return straight ? straighten(m) : m;
}

// polynomial patch solution of degree k with the matching linear-elastic
// body force (constant only for k = 2 terms; higher terms contribute too)
Vec2 patch_u(int k, const Vec2& x) {
  const double X = x.x(), Y = x.y();
  Vec2 u(0.2 + 0.3 * X - 0.1 * Y, -0.4 + 0.1 * X + 0.25 * Y);
  if (k >= 2) u += Vec2(0.05 * X * X + 0.1 * X * Y, -0.07 * Y * Y + 0.02 * X * X);
  if (k >= 3) u += Vec2(0.01 * X * X * X - 0.03 * X * Y * Y, 0.02 * Y * Y * Y);
  return u;
}

Eigen::Vector3d patch_strain(int k, const Vec2& x) {
  const double X = x.x(), Y = x.y();
  Eigen::Vector3d e(0.3, 0.25, 0.0);
  e[2] = -0.1 + 0.1;
  if (k >= 2) {
    e[0] += 0.1 * X + 0.1 * Y;
    e[1] += -0.14 * Y;
    e[2] += 0.1 * X + 0.04 * X;
  }
  if (k >= 3) {
    e[0] += 0.03 * X * X - 0.03 * Y * Y;
    e[1] += 0.06 * Y * Y;
    e[2] += -0.06 * X * Y;
  }
  return e;
}

Vec2 patch_force(int k, const LinearElastic& mat, const Vec2& x) {
  // -div sigma via second derivatives of patch_u
  const double la = mat.lambda(), mu = mat.mu();
  const double X = x.x(), Y = x.y();
  // ux_xx, ux_yy, ux_xy ; uy_xx, uy_yy, uy_xy
  double uxx = 0, uxy = 0, uxyy = 0, vxx = 0, vyy = 0, vxy = 0;
  if (k >= 2) {
    uxx += 0.1;
    uxy += 0.1;
    vxx += 0.04;
    vyy += -0.14;
  }
  if (k >= 3) {
    uxx += 0.06 * X;
    uxyy += -0.06 * X;
    uxy += -0.06 * Y;
    vyy += 0.12 * Y;
  }
  const double fx = (la + 2 * mu) * uxx + mu * uxyy + (la + mu) * vxy;
  const double fy = (la + 2 * mu) * vyy + mu * vxx + (la + mu) * uxy;
  return Vec2(-fx, -fy);
}

}  // namespace

TEST_CASE("linear elastic patch tests are exact on straight meshes") {
  auto mat = std::make_shared<LinearElastic>(1000.0, 0.3);
  for (MeshFamily fam : {MeshFamily::Quad, MeshFamily::Voro}) {
    CurvedMesh mesh = disk_mesh(fam, 48, true);
    for (int k = 1; k <= 3; ++k) {
      AnalysisConfig cfg;
      cfg.space.k = k;
      cfg.space.variant = SpaceVariant::Straight;
      cfg.material = mat;
      cfg.dirichlet.push_back(
          {"boundary", true, true, [k](const Vec2& x) { return patch_u(k, x); }});
      cfg.body_force = [k, &mat](const Vec2& x) {
        return patch_force(k, *mat, x);
      };
      AnalysisResult res = run_analysis(mesh, cfg);
      const double eu =
          error_displacement_skeleton([k](const Vec2& x) { return patch_u(k, x); },
                                      res.u, res.dofs);
      const double ee = error_strain_l2(
          [k](const Vec2& x) { return patch_strain(k, x); }, res.u, mesh,
          res.ops, k);
      CAPTURE(int(fam));
      CAPTURE(k);
      CHECK(eu < 1e-9);
      CHECK(ee < 1e-9);
      CHECK(res.newton_iters.back() <= 2);  // linear problem
    }
  }
}

TEST_CASE("rigid body motion produces zero strain energy and zero reactions") {
  CurvedMesh mesh = disk_mesh(MeshFamily::Rhex, 48, false);
  AnalysisConfig cfg;
  cfg.space.k = 2;
  cfg.space.variant = SpaceVariant::Cv;
  cfg.space.edge_point_boost = 12;  // rigid data is trig along the arcs
  cfg.material = std::make_shared<LinearElastic>(1000.0, 0.3);
  cfg.dirichlet.push_back({"boundary", true, true, [](const Vec2& x) {
                             return Vec2(0.3 - 0.2 * x.y(), -0.1 + 0.2 * x.x());
                           }});
  AnalysisResult res = run_analysis(mesh, cfg);
  const double eu = error_displacement_skeleton(
      [](const Vec2& x) { return Vec2(0.3 - 0.2 * x.y(), -0.1 + 0.2 * x.x()); },
      res.u, res.dofs);
  CHECK(eu < 1e-10);
  CHECK(res.residual_history.back().norm() < 1e-8);
}

TEST_CASE("uniform pressure on the disk gives the uniform-compression state") {
  // sigma = -p I everywhere; u = -p/(2(lambda+mu)) x
  const double p = 5.0, E = 1000.0, nu = 0.3;
  LinearElastic ref(E, nu);
  const double c = -p / (2.0 * (ref.lambda() + ref.mu()));
  CurvedMesh mesh = disk_mesh(MeshFamily::Quad, 64, false);
  AnalysisConfig cfg;
  cfg.space.k = 2;
  cfg.space.variant = SpaceVariant::Cv;
  cfg.material = std::make_shared<LinearElastic>(E, nu);
  cfg.space.edge_point_boost = 8;  // the traction is trig along the arcs
  cfg.tractions.push_back({"boundary", [p](const Vec2&, const Vec2& n) {
                             return Vec2(-p * n.x(), -p * n.y());
                           }});
  // prescribe the exact displacement on the boundary; the residual then
  // measures how well the assembled traction matches the internal force of
  // the homogeneous state
  cfg.dirichlet.push_back({"boundary", true, true, [c](const Vec2& x) {
                             return Vec2(c * x.x(), c * x.y());
                           }});
  AnalysisResult res = run_analysis(mesh, cfg);
  const double eu = error_displacement_skeleton(
      [c](const Vec2& x) { return Vec2(c * x.x(), c * x.y()); }, res.u,
      res.dofs);
  CHECK(eu < 1e-10);
  // boundary reactions should balance the applied pressure: the residual on
  // free dofs is ~0 and the constrained-dof reactions sum to zero force
  const Eigen::VectorXd& r = res.residual_history.back();
  Vec2 total = Vec2::Zero();
  for (int n = 0; n < res.dofs.n_nodes(); ++n)
    total += Vec2(r[2 * n], r[2 * n + 1]);
  CHECK(total.norm() < 1e-8 * p);
}

TEST_CASE("external_load assembles a constant body force consistently") {
  // f = const: the total load must equal area * f for any k
  CurvedMesh mesh = disk_mesh(MeshFamily::Voro, 40, false);
  for (int k = 1; k <= 3; ++k) {
    AnalysisConfig cfg;
    cfg.space.k = k;
    cfg.space.variant = SpaceVariant::Cv;
    cfg.material = std::make_shared<LinearElastic>(1.0, 0.2);
    cfg.body_force = [](const Vec2&) { return Vec2(2.0, -3.0); };
    DofMap dofs(mesh, k);
    std::vector<ElementOperators> ops;
    for (int e = 0; e < int(mesh.elements.size()); ++e)
      ops.push_back(build_element_operators(mesh, dofs, e, cfg.space));
    const Eigen::VectorXd f = external_load(mesh, dofs, ops, cfg);
    // pair with the interpolated constant fields: <f_h, 1> = area * f
    double area = 0;
    for (const auto& el : mesh.elements) area += el.area;
    const Eigen::VectorXd one_x =
        interpolate([](const Vec2&) { return Vec2(1.0, 0.0); }, mesh, dofs);
    const Eigen::VectorXd one_y =
        interpolate([](const Vec2&) { return Vec2(0.0, 1.0); }, mesh, dofs);
    CHECK(f.dot(one_x) == doctest::Approx(2.0 * area).epsilon(1e-9));
    CHECK(f.dot(one_y) == doctest::Approx(-3.0 * area).epsilon(1e-9));
  }
}

TEST_CASE("load stepping honours prescribed factors and times") {
  CurvedMesh mesh = disk_mesh(MeshFamily::Quad, 24, true);
  AnalysisConfig cfg;
  cfg.space.k = 1;
  cfg.material = std::make_shared<LinearElastic>(100.0, 0.25);
  cfg.steps = 3;
  cfg.load_factors = {0.5, 0.5, 1.0};
  cfg.times = {0.0, 1.0, 2.0, 3.0};
  cfg.dirichlet.push_back({"boundary", true, true, [](const Vec2& x) {
                             return Vec2(0.01 * x.x(), 0.0);
                           }});
  AnalysisResult res = run_analysis(mesh, cfg);
  REQUIRE(res.u_history.size() == 3);
  // steps 1 and 2 share the factor, so the converged states coincide
  CHECK((res.u_history[0] - res.u_history[1]).norm() < 1e-12);
  CHECK((res.u_history[2] - 2.0 * res.u_history[1]).norm() <
        1e-10 * res.u.norm());
  CHECK(res.u_history.back() == res.u);
}

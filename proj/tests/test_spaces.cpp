#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "curvem/element_ops.hpp"
#include "curvem/mesh_gen.hpp"

using namespace curvem;

namespace {

CurvedMesh disk(MeshFamily fam = MeshFamily::Quad, int n = 32) {
  MeshSpec spec;
  spec.family = fam;
  spec.target_elements = n;
  return generate_benchmark_mesh(spec);
}

int first_curved_edge(const CurvedMesh& mesh) {
  for (int e = 0; e < mesh.num_edges(); ++e)
    if (mesh.edges[std::size_t(e)].is_curved()) return e;
  return -1;
}

}  // namespace

TEST_CASE("rigid map hits prescribed endpoint values") {
  Vec2 n0(0.2, -0.1), n1(1.1, 0.4), u0(0.3, 0.7), u1(-0.2, 0.5);
  RigidMap f = rigid_map_from_endpoints(n0, n1, u0, u1);
  CHECK((f.eval(n0) - u0).norm() == doctest::Approx(0.0));
  CHECK((f.eval(n1) - u1).norm() == doctest::Approx(0.0));
  // rigid maps have zero symmetric gradient: check the rotation structure
  Vec2 mid = 0.5 * (n0 + n1) + Vec2(0.05, -0.3);
  Vec2 dx = f.eval(mid + Vec2(1e-6, 0)) - f.eval(mid);
  Vec2 dy = f.eval(mid + Vec2(0, 1e-6)) - f.eval(mid);
  CHECK(dx.x() == doctest::Approx(dy.y()).epsilon(1e-9));
  CHECK(dx.y() == doctest::Approx(-dy.x()).epsilon(1e-9));
}

TEST_CASE("edge shapes interpolate nodal data") {
  CurvedMesh mesh = disk();
  const int e = first_curved_edge(mesh);
  for (auto variant : {SpaceVariant::Co, SpaceVariant::Cv}) {
    for (int k : {1, 2, 3}) {
      EdgeShape shape(mesh, e, k, variant);
      REQUIRE(int(shape.nodes().size()) == k + 1);
      for (int i = 0; i <= k; ++i) {
        auto N = shape.eval(shape.nodes()[std::size_t(i)]);
        for (int j = 0; j < 2 * (k + 1); ++j) {
          const double want = (j == 2 * i) ? 1.0 : 0.0;
          CHECK(N(0, j) == doctest::Approx(want).epsilon(1e-12));
          const double want2 = (j == 2 * i + 1) ? 1.0 : 0.0;
          CHECK(N(1, j) == doctest::Approx(want2).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("cv edge space represents rigid motions exactly along arcs") {
  CurvedMesh mesh = disk();
  const int e = first_curved_edge(mesh);
  const Edge& ed = mesh.edges[std::size_t(e)];
  auto rigid = [](const Vec2& p) { return Vec2(0.3 - p.y(), -0.1 + p.x()); };
  for (int k : {1, 2, 3}) {
    EdgeShape shape(mesh, e, k, SpaceVariant::Cv);
    Eigen::VectorXd d(2 * (k + 1));
    for (int i = 0; i <= k; ++i) {
      const Vec2 u = rigid(shape.node_point(i));
      d[2 * i] = u.x();
      d[2 * i + 1] = u.y();
    }
    for (double s : {0.13, 0.41, 0.77, 0.95}) {
      const double t = ed.ta + s * (ed.tb - ed.ta);
      const Vec2 got = shape.eval(t) * d;
      const Vec2 want = rigid(mesh.edge_point(ed, t));
      CHECK((got - want).norm() == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("co edge space cannot represent rotations along arcs") {
  CurvedMesh mesh = disk();
  const int e = first_curved_edge(mesh);
  const Edge& ed = mesh.edges[std::size_t(e)];
  auto rot = [](const Vec2& p) { return Vec2(-p.y(), p.x()); };
  EdgeShape shape(mesh, e, 1, SpaceVariant::Co);
  Eigen::VectorXd d(4);
  for (int i = 0; i <= 1; ++i) {
    const Vec2 u = rot(shape.node_point(i));
    d[2 * i] = u.x();
    d[2 * i + 1] = u.y();
  }
  const double t = 0.5 * (ed.ta + ed.tb);
  const Vec2 got = shape.eval(t) * d;
  const Vec2 want = rot(mesh.edge_point(ed, t));
  CHECK((got - want).norm() > 1e-5);
}

TEST_CASE("dof map counts") {
  CurvedMesh mesh = disk();
  for (int k : {1, 2, 3}) {
    DofMap dofs(mesh, k);
    CHECK(dofs.n_nodes() ==
          mesh.num_vertices() + (k - 1) * mesh.num_edges());
    const int nmom = k >= 2 ? k * (k - 1) / 2 : 0;
    CHECK(dofs.n_moment == nmom);
    CHECK(dofs.total ==
          2 * dofs.n_nodes() + 2 * nmom * mesh.num_elements());
  }
}

TEST_CASE("dof projector reproduces degree-k polynomials") {
  CurvedMesh mesh = disk(MeshFamily::Voro, 48);
  for (int k : {1, 2, 3}) {
    SpaceConfig sc;
    sc.k = k;
    DofMap dofs(mesh, k);
    auto poly = [k](const Vec2& p) {
      double v = 0.3 + p.x() - 0.5 * p.y();
      if (k >= 2) v += 0.25 * p.x() * p.y();
      if (k >= 3) v += 0.1 * p.x() * p.x() * p.y();
      return Vec2(v, -2.0 * v);
    };
    Eigen::VectorXd u = interpolate(poly, mesh, dofs);
    for (int el : {0, mesh.num_elements() / 2}) {
      ElementOperators op = build_element_operators(mesh, dofs, el, sc);
      Eigen::VectorXd lu(op.ndof);
      for (int i = 0; i < op.ndof; ++i) lu[i] = u[op.gdofs[std::size_t(i)]];
      const Vec2 x = mesh.elements[std::size_t(el)].centroid + Vec2(0.01, 0.02);
      CHECK((op.poly_displacement(lu, x) - poly(x)).norm() ==
            doctest::Approx(0.0).epsilon(1e-11));
      // and the stabilization annihilates it
      CHECK((op.stab * lu).norm() == doctest::Approx(0.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("strain projector is exact on polynomial strains") {
  // straightened mesh: on arcs a linear field is not in the edge spaces, so
  // exactness is a polygonal-consistency statement
  CurvedMesh mesh = straighten(disk(MeshFamily::Quad, 32));
  for (int k : {1, 2, 3}) {
    SpaceConfig sc;
    sc.k = k;
    DofMap dofs(mesh, k);
    auto poly = [](const Vec2& p) {
      return Vec2(0.4 * p.x() + 0.1 * p.y(), -0.3 * p.x() + 0.2 * p.y());
    };
    const Eigen::Vector3d eps(0.4, 0.2, 0.1 - 0.3);
    Eigen::VectorXd u = interpolate(poly, mesh, dofs);
    for (int el = 0; el < mesh.num_elements(); el += 5) {
      ElementOperators op = build_element_operators(mesh, dofs, el, sc);
      Eigen::VectorXd lu(op.ndof);
      for (int i = 0; i < op.ndof; ++i) lu[i] = u[op.gdofs[std::size_t(i)]];
      const Eigen::Vector3d got =
          op.strain_matrix(mesh.elements[std::size_t(el)].centroid) * lu;
      CHECK((got - eps).norm() == doctest::Approx(0.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("rigid motions: dof-projector kernel for every variant") {
  CurvedMesh mesh = disk(MeshFamily::Quad, 32);
  auto rigid = [](const Vec2& p) { return Vec2(0.2 - 0.7 * p.y(), -0.5 + 0.7 * p.x()); };
  for (auto variant : {SpaceVariant::Straight, SpaceVariant::Co, SpaceVariant::Cv}) {
    CurvedMesh m = variant == SpaceVariant::Straight ? straighten(mesh) : mesh;
    SpaceConfig sc;
    sc.k = 2;
    sc.variant = variant;
    DofMap dofs(m, sc.k);
    Eigen::VectorXd u = interpolate(rigid, m, dofs);
    for (int el = 0; el < m.num_elements(); el += 7) {
      ElementOperators op = build_element_operators(m, dofs, el, sc);
      Eigen::VectorXd lu(op.ndof);
      for (int i = 0; i < op.ndof; ++i) lu[i] = u[op.gdofs[std::size_t(i)]];
      CHECK((op.stab * lu).norm() == doctest::Approx(0.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("rigid motions lie in the cv strain kernel but not the co one") {
  CurvedMesh mesh = disk(MeshFamily::Quad, 32);
  auto rigid = [](const Vec2& p) { return Vec2(-p.y(), p.x()); };
  double worst_cv = 0.0, worst_co = 0.0;
  for (auto variant : {SpaceVariant::Co, SpaceVariant::Cv}) {
    SpaceConfig sc;
    sc.k = 2;
    sc.variant = variant;
    sc.edge_point_boost = 25;
    DofMap dofs(mesh, sc.k);
    Eigen::VectorXd u = interpolate(rigid, mesh, dofs);
    double worst = 0.0;
    for (int el = 0; el < mesh.num_elements(); ++el) {
      ElementOperators op = build_element_operators(mesh, dofs, el, sc);
      Eigen::VectorXd lu(op.ndof);
      for (int i = 0; i < op.ndof; ++i) lu[i] = u[op.gdofs[std::size_t(i)]];
      worst = std::max(worst, (op.pi_eps * lu).norm());
    }
    (variant == SpaceVariant::Cv ? worst_cv : worst_co) = worst;
  }
  CHECK(worst_cv < 1e-11);
  CHECK(worst_co > 1e-4);
}

TEST_CASE("boundary tables close the divergence theorem") {
  // sum of w * n over the whole element boundary must vanish
  CurvedMesh mesh = disk(MeshFamily::Voro, 48);
  SpaceConfig sc;
  sc.k = 2;
  DofMap dofs(mesh, sc.k);
  for (int el = 0; el < mesh.num_elements(); el += 3) {
    ElementOperators op = build_element_operators(mesh, dofs, el, sc);
    Vec2 s = Vec2::Zero();
    double len = 0.0;
    for (const auto& tab : op.edge_tables)
      for (int q = 0; q < tab.w.size(); ++q) {
        s += tab.w[q] * tab.normal.col(q);
        len += tab.w[q];
      }
    CHECK(s.norm() == doctest::Approx(0.0).epsilon(1e-3).scale(len));
  }
}

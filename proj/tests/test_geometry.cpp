#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "curvem/mesh_gen.hpp"
#include "curvem/mesh_io.hpp"

using namespace curvem;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("circle arc evaluation") {
  auto c = ParametrizedCurve::circle_arc({1.0, 2.0}, 0.5, 0.0, kPi / 2);
  Vec2 p = c.point(0.0);
  CHECK(p.x() == doctest::Approx(1.5));
  CHECK(p.y() == doctest::Approx(2.0));
  Vec2 d = c.derivative(0.0);
  CHECK(d.x() == doctest::Approx(0.0));
  CHECK(d.y() == doctest::Approx(0.5));
  CHECK_THROWS(c.point(3.0));
}

TEST_CASE("segment evaluation") {
  auto s = ParametrizedCurve::segment({0, 0}, {2, 1});
  Vec2 p = s.point(0.5);
  CHECK(p.x() == doctest::Approx(1.0));
  CHECK(p.y() == doctest::Approx(0.5));
}

TEST_CASE("disk meshes are valid and cover the disk") {
  for (auto fam : {MeshFamily::Quad, MeshFamily::Rhex, MeshFamily::Voro}) {
    MeshSpec spec;
    spec.family = fam;
    spec.target_elements = 64;
    CurvedMesh mesh = generate_benchmark_mesh(spec);
    double area = 0.0;
    for (const auto& el : mesh.elements) {
      CHECK(el.area > 0.0);
      CHECK(el.diameter > 0.0);
      area += el.area;
    }
    CHECK(area == doctest::Approx(kPi).epsilon(1e-10));
    CHECK(mesh.boundary_groups.count("boundary") == 1);
    // boundary edges are arcs on the unit circle
    for (int e : mesh.boundary_groups.at("boundary")) {
      const Edge& ed = mesh.edges[std::size_t(e)];
      CHECK(ed.is_curved());
      CHECK(mesh.vertices[std::size_t(ed.v0)].norm() == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("voronoi generation is deterministic in the seed") {
  MeshSpec spec;
  spec.family = MeshFamily::Voro;
  spec.target_elements = 80;
  spec.seed = 7;
  CurvedMesh a = generate_benchmark_mesh(spec);
  CurvedMesh b = generate_benchmark_mesh(spec);
  REQUIRE(a.num_vertices() == b.num_vertices());
  for (int v = 0; v < a.num_vertices(); ++v)
    CHECK((a.vertices[std::size_t(v)] - b.vertices[std::size_t(v)]).norm() ==
          doctest::Approx(0.0));
}

TEST_CASE("quarter annulus mesh: exact area and groups") {
  MeshSpec spec;
  spec.domain = MeshSpec::Domain::QuarterAnnulus;
  spec.target_elements = 64;
  CurvedMesh mesh = generate_benchmark_mesh(spec);
  double area = 0.0;
  for (const auto& el : mesh.elements) area += el.area;
  CHECK(area == doctest::Approx(kPi / 4 * (16.0 - 4.0)).epsilon(1e-12));
  for (const char* g : {"inner", "outer", "x0", "y0"})
    CHECK(mesh.boundary_groups.count(g) == 1);
}

TEST_CASE("plate with hole mesh: exact area and groups") {
  MeshSpec spec;
  spec.domain = MeshSpec::Domain::QuarterPlateHole;
  spec.target_elements = 80;
  CurvedMesh mesh = generate_benchmark_mesh(spec);
  double area = 0.0;
  for (const auto& el : mesh.elements) area += el.area;
  CHECK(area ==
        doctest::Approx(100.0 * 180.0 - kPi / 4 * 2500.0).epsilon(1e-12));
  for (const char* g : {"hole", "x0", "y0", "right", "top"})
    CHECK(mesh.boundary_groups.count(g) == 1);
}

TEST_CASE("arc length of a boundary edge matches the subtended angle") {
  MeshSpec spec;
  spec.target_elements = 32;
  CurvedMesh mesh = generate_benchmark_mesh(spec);
  for (int e : mesh.boundary_groups.at("boundary")) {
    const Edge& ed = mesh.edges[std::size_t(e)];
    CHECK(ed.length == doctest::Approx(std::abs(ed.tb - ed.ta)).epsilon(1e-12));
  }
}

TEST_CASE("straighten drops curves but keeps vertices") {
  MeshSpec spec;
  spec.target_elements = 32;
  CurvedMesh mesh = generate_benchmark_mesh(spec);
  CurvedMesh st = straighten(mesh);
  REQUIRE(st.num_edges() == mesh.num_edges());
  for (const auto& e : st.edges) CHECK(!e.is_curved());
  double area = 0.0;
  for (const auto& el : st.elements) area += el.area;
  CHECK(area < kPi);  // chords cut the boundary slivers
  CHECK(area > 0.95 * kPi);
}

TEST_CASE("mesh text format round trip") {
  MeshSpec spec;
  spec.family = MeshFamily::Voro;
  spec.target_elements = 40;
  CurvedMesh mesh = generate_benchmark_mesh(spec);
  CurvedMesh back = load_mesh(save_mesh(mesh));
  REQUIRE(back.num_vertices() == mesh.num_vertices());
  REQUIRE(back.num_edges() == mesh.num_edges());
  REQUIRE(back.num_elements() == mesh.num_elements());
  for (int i = 0; i < mesh.num_elements(); ++i) {
    CHECK(back.elements[std::size_t(i)].area ==
          doctest::Approx(mesh.elements[std::size_t(i)].area).epsilon(1e-14));
    CHECK(back.elements[std::size_t(i)].centroid.x() ==
          doctest::Approx(mesh.elements[std::size_t(i)].centroid.x()));
  }
  for (const auto& [name, ids] : mesh.boundary_groups)
    CHECK(back.boundary_groups.at(name) == ids);
}

TEST_CASE("loader rejects malformed input") {
  CHECK_THROWS(load_mesh("vertex 0 0"));            // missing coordinate
  CHECK_THROWS(load_mesh("nonsense 1 2 3"));        // unknown record
  CHECK_THROWS(load_mesh("edge 0 0 1"));            // vertices undeclared
}

TEST_CASE("structured meshes carry exact boundary measure") {
  CurvedMesh ann = structured_quarter_annulus(2.0, 4.0, 8, 4);
  double area = 0.0;
  for (const auto& el : ann.elements) area += el.area;
  CHECK(area == doctest::Approx(kPi / 4 * 12.0).epsilon(1e-12));
  CurvedMesh plate = structured_plate_with_hole(100.0, 180.0, 50.0, 6, 7);
  area = 0.0;
  for (const auto& el : plate.elements) area += el.area;
  CHECK(area == doctest::Approx(18000.0 - kPi / 4 * 2500.0).epsilon(1e-12));
}

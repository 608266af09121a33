#pragma once

#include "curvem/mesh.hpp"

namespace curvem {

enum class MeshFamily { Quad, Rhex, Voro };

/// Benchmark domains: unit-style disk, quarter annulus (first quadrant),
/// quarter plate [0,L]x[0,H] with a quarter hole of radius R at the origin.
struct MeshSpec {
  enum class Domain { Disk, QuarterAnnulus, QuarterPlateHole };
  Domain domain = Domain::Disk;
  double disk_radius = 1.0;
  double annulus_ri = 2.0, annulus_ro = 4.0;
  double plate_l = 100.0, plate_h = 180.0, plate_r = 50.0;
  MeshFamily family = MeshFamily::Quad;
  int target_elements = 64;
  unsigned seed = 1;       // Voronoi seeding (deterministic)
  int lloyd_iterations = 40;
};

/// Boundary-abutting elements carry curved edges lying exactly on the
/// analytic boundary. Boundary groups: disk: "boundary"; quarter annulus:
/// "inner", "outer", "x0", "y0"; plate: "hole", "x0", "y0", "right", "top".
CurvedMesh generate_benchmark_mesh(const MeshSpec& spec);

// Structured curved quadrilateral meshes used by the inelastic benchmarks.
CurvedMesh structured_quarter_annulus(double ri, double ro, int n_theta,
                                      int n_r);
CurvedMesh structured_plate_with_hole(double L, double H, double R,
                                      int n_theta, int n_r);

}  // namespace curvem

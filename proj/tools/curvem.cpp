#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "curvem/benchmarks.hpp"
#include "curvem/config.hpp"
#include "curvem/mesh_io.hpp"
#include "curvem/quadrature.hpp"

using namespace curvem;

int main(int argc, char** argv) {
  CLI::App app{"curvem: curvilinear virtual element benchmarks"};
  app.require_subcommand(1);

  // ---- mesh ----
  auto* mesh_cmd = app.add_subcommand("mesh", "generate a benchmark mesh");
  std::string domain = "disk", family = "quad", mesh_out = "mesh.txt";
  int elements = 64, dump_order = -1;
  unsigned seed = 1;
  double radius = 1.0, ri = 2.0, ro = 4.0;
  double pl = 100.0, ph = 180.0, pr = 50.0;
  mesh_cmd->add_option("--domain", domain,
                       "disk | quarter_annulus | quarter_plate_hole");
  mesh_cmd->add_option("--family", family, "quad | rhex | voro");
  mesh_cmd->add_option("--elements", elements, "target element count");
  mesh_cmd->add_option("--seed", seed, "Voronoi seed");
  mesh_cmd->add_option("--radius", radius, "disk radius");
  mesh_cmd->add_option("--r-inner", ri, "annulus inner radius");
  mesh_cmd->add_option("--r-outer", ro, "annulus outer radius");
  mesh_cmd->add_option("--plate-l", pl, "plate width");
  mesh_cmd->add_option("--plate-h", ph, "plate height");
  mesh_cmd->add_option("--plate-r", pr, "hole radius");
  mesh_cmd->add_option("--out", mesh_out, "output mesh file");
  mesh_cmd->add_option("--dump-rule", dump_order,
                       "debug: print element rules of this order as x,y,w CSV");

  // ---- solve ----
  auto* solve_cmd = app.add_subcommand("solve", "run an analysis from a config");
  std::string config_path, solve_out = ".";
  solve_cmd->add_option("--config", config_path, "config file")->required();
  solve_cmd->add_option("--out", solve_out, "output directory");

  // ---- study ----
  auto* study_cmd = app.add_subcommand("study", "run a benchmark study");
  StudyOptions opt;
  std::string variant = "co", quadrature = "minimal";
  study_cmd->add_option("--example", opt.example, "1..4")->required();
  study_cmd->add_option("--variant", variant, "s | co | cv");
  study_cmd->add_option("--k", opt.k, "polynomial order 1..3");
  study_cmd->add_option("--quadrature", quadrature, "minimal | higher");
  study_cmd->add_option("--out", opt.out_dir, "output directory");
  study_cmd->add_option("--family", opt.family, "quad | rhex | voro");
  study_cmd->add_option("--elements", opt.elements, "override element count");
  study_cmd->add_option("--steps", opt.steps, "override step count");
  study_cmd->add_option("--seed", opt.seed, "mesh seed");
  study_cmd->add_option("--set", opt.viscoelastic_set,
                        "example 3 material set (1 or 2)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mesh_cmd) {
      MeshSpec spec;
      if (domain == "disk") {
        spec.domain = MeshSpec::Domain::Disk;
        spec.disk_radius = radius;
      } else if (domain == "quarter_annulus") {
        spec.domain = MeshSpec::Domain::QuarterAnnulus;
        spec.annulus_ri = ri;
        spec.annulus_ro = ro;
      } else if (domain == "quarter_plate_hole") {
        spec.domain = MeshSpec::Domain::QuarterPlateHole;
        spec.plate_l = pl;
        spec.plate_h = ph;
        spec.plate_r = pr;
      } else {
        throw std::runtime_error("unknown domain: " + domain);
      }
      if (family == "quad") spec.family = MeshFamily::Quad;
      else if (family == "rhex") spec.family = MeshFamily::Rhex;
      else if (family == "voro") spec.family = MeshFamily::Voro;
      else throw std::runtime_error("unknown family: " + family);
      spec.target_elements = elements;
      spec.seed = seed;
      const CurvedMesh mesh = generate_benchmark_mesh(spec);
      if (dump_order >= 0) {
        std::printf("x,y,w\n");
        for (int e = 0; e < mesh.num_elements(); ++e) {
          const QuadratureRule rule =
              element_rule(mesh, mesh.elements[std::size_t(e)], dump_order);
          for (int i = 0; i < int(rule.weights.size()); ++i)
            std::printf("%.17g,%.17g,%.17g\n", rule.points(0, i),
                        rule.points(1, i), rule.weights[i]);
        }
      } else {
        save_mesh(mesh, mesh_out);
        std::printf("wrote %s: %d elements, %d edges, %d vertices\n",
                    mesh_out.c_str(), mesh.num_elements(), mesh.num_edges(),
                    mesh.num_vertices());
      }
    } else if (*solve_cmd) {
      const Config cfg = Config::parse_file(config_path);
      const CurvedMesh mesh = make_mesh(cfg);
      const AnalysisConfig acfg = make_analysis_config(cfg);
      const AnalysisResult res = run_analysis(mesh, acfg);
      std::filesystem::create_directories(solve_out);
      std::ofstream out(std::filesystem::path(solve_out) / "solution.csv");
      out << "node,x,y,ux,uy\n";
      out.precision(12);
      for (int n = 0; n < res.dofs.n_nodes(); ++n) {
        const Vec2 p = res.dofs.node_pos[std::size_t(n)];
        out << n << ',' << p.x() << ',' << p.y() << ','
            << res.u[res.dofs.node_dof(n, 0)] << ','
            << res.u[res.dofs.node_dof(n, 1)] << '\n';
      }
      std::printf("solved: %d dofs, %d steps\n", res.dofs.total,
                  int(res.newton_iters.size()));
      for (std::size_t i = 0; i < res.newton_iters.size(); ++i)
        std::printf("  step %zu: %d newton iterations\n", i + 1,
                    res.newton_iters[i]);
    } else if (*study_cmd) {
      if (variant == "s" || variant == "straight")
        opt.variant = SpaceVariant::Straight;
      else if (variant == "co") opt.variant = SpaceVariant::Co;
      else if (variant == "cv") opt.variant = SpaceVariant::Cv;
      else throw std::runtime_error("unknown variant: " + variant);
      if (quadrature == "minimal")
        opt.quadrature = SpaceConfig::QuadratureMode::Minimal;
      else if (quadrature == "higher")
        opt.quadrature = SpaceConfig::QuadratureMode::Higher;
      else throw std::runtime_error("unknown quadrature: " + quadrature);
      run_study(opt);
      std::printf("study artifacts written to %s\n", opt.out_dir.c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

#include "curvem/benchmarks.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace curvem {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Example 3 / benchmark constants
constexpr double kRi = 2.0, kRo = 4.0, kPressure = 10.0;
constexpr double kE3 = 1000.0, kNu3 = 0.3;
// Example 4 constants (half dimensions of the paper's plate)
constexpr double kL4 = 100.0, kH4 = 180.0, kR4 = 50.0;
constexpr double kE4 = 7000.0, kNu4 = 0.3, kSigY = 24.3, kTopDisp = 2.0;

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

Eigen::Vector3d hencky_stress(const Eigen::Vector3d& eps) {
  static const HenckyVonMises law;
  Eigen::VectorXd st;
  Voigt sigma;
  Tangent C;
  law.evaluate(eps, Eigen::VectorXd(), st, 0.0, sigma, C);
  return sigma;
}

MeshSpec disk_spec(MeshFamily family, int n, unsigned seed) {
  MeshSpec spec;
  spec.domain = MeshSpec::Domain::Disk;
  spec.family = family;
  spec.target_elements = n;
  spec.seed = seed;
  return spec;
}

int nearest_node(const DofMap& dofs, const Vec2& p) {
  int best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (int n = 0; n < dofs.n_nodes(); ++n) {
    const double d = (dofs.node_pos[std::size_t(n)] - p).norm();
    if (d < bd) {
      bd = d;
      best = n;
    }
  }
  return best;
}

}  // namespace

Vec2 example1_solution(const Vec2& x) {
  const double phi = kPi * x.squaredNorm();
  return {std::sin(phi), 2.0 * std::cos(phi)};
}

Eigen::Vector3d example1_strain(const Vec2& x) {
  const double phi = kPi * x.squaredNorm();
  const double c = std::cos(phi), s = std::sin(phi);
  const double exx = 2.0 * kPi * x.x() * c;
  const double eyy = -4.0 * kPi * x.y() * s;
  const double gam = 2.0 * kPi * x.y() * c - 4.0 * kPi * x.x() * s;
  return {exx, eyy, gam};
}

Vec2 example1_forcing(const Vec2& x) {
  // f = -div sigma by 4th-order central differences of the stress field
  const double h = 2e-4;  // 1e-4 times the domain diameter
  auto sig = [](const Vec2& p) { return hencky_stress(example1_strain(p)); };
  auto d4 = [&](int dir, int comp) {
    Vec2 e = Vec2::Zero();
    e[dir] = 1.0;
    return (-sig(x + 2 * h * e)[comp] + 8.0 * sig(x + h * e)[comp] -
            8.0 * sig(x - h * e)[comp] + sig(x - 2 * h * e)[comp]) /
           (12.0 * h);
  };
  return {-(d4(0, 0) + d4(1, 2)), -(d4(0, 2) + d4(1, 1))};
}

ConvergenceTable example1_convergence(SpaceVariant variant, int k,
                                      SpaceConfig::QuadratureMode quadrature,
                                      MeshFamily family,
                                      const std::vector<int>& sizes,
                                      unsigned seed) {
  ConvergenceTable table;
  for (int n : sizes) {
    const double t0 = now_s();
    CurvedMesh curved = generate_benchmark_mesh(disk_spec(family, n, seed));
    CurvedMesh mesh = curved;
    std::function<Vec2(const Vec2&)> data = [](const Vec2& p) {
      return example1_solution(p);
    };
    if (variant == SpaceVariant::Straight) {
      mesh = straighten(curved);
      // the boundary data lives on the true curve: sample it at the arc
      // positions of the chord nodes (this is where the geometry error of
      // the straight variant comes from)
      const DofMap cd(curved, k);
      const DofMap sd(mesh, k);
      auto pairs = std::make_shared<std::vector<std::pair<Vec2, Vec2>>>();
      for (const int e : curved.boundary_groups.at("boundary")) {
        const Edge& ed = curved.edges[std::size_t(e)];
        pairs->emplace_back(sd.node_pos[std::size_t(sd.vertex_node(ed.v0))],
                            cd.node_pos[std::size_t(cd.vertex_node(ed.v0))]);
        pairs->emplace_back(sd.node_pos[std::size_t(sd.vertex_node(ed.v1))],
                            cd.node_pos[std::size_t(cd.vertex_node(ed.v1))]);
        for (int i = 0; i < k - 1; ++i)
          pairs->emplace_back(sd.node_pos[std::size_t(sd.edge_node(e, i))],
                              cd.node_pos[std::size_t(cd.edge_node(e, i))]);
      }
      data = [pairs](const Vec2& p) {
        const Vec2* best = nullptr;
        double bd = std::numeric_limits<double>::infinity();
        for (const auto& [chord, arc] : *pairs) {
          const double d = (chord - p).squaredNorm();
          if (d < bd) {
            bd = d;
            best = &arc;
          }
        }
        return example1_solution(*best);
      };
    }
    AnalysisConfig cfg;
    cfg.space.k = k;
    cfg.space.variant = variant;
    cfg.space.quadrature = quadrature;
    cfg.material = std::make_shared<HenckyVonMises>();
    cfg.steps = 1;
    cfg.body_force = example1_forcing;
    cfg.dirichlet.push_back({"boundary", true, true, data});
    const AnalysisResult res = run_analysis(mesh, cfg);
    ErrorReport row;
    row.mesh_id = "n" + std::to_string(n);
    row.n_elements = mesh.num_elements();
    row.h = mesh.mean_h;
    row.dofs = res.dofs.total;
    row.e_u = error_displacement_skeleton(example1_solution, res.u, res.dofs);
    row.e_eps = error_strain_l2(example1_strain, res.u, mesh, res.ops, k);
    row.runtime_s = now_s() - t0;
    table.rows.push_back(row);
  }
  table.compute_slopes();
  return table;
}

double example2_error(SpaceVariant variant, int k, MeshFamily family,
                      int elements, unsigned seed) {
  CurvedMesh mesh = generate_benchmark_mesh(disk_spec(family, elements, seed));
  if (variant == SpaceVariant::Straight) mesh = straighten(mesh);
  auto rigid = [](const Vec2& p) { return Vec2(-p.y(), p.x()); };
  AnalysisConfig cfg;
  cfg.space.k = k;
  cfg.space.variant = variant;
  // the benchmark isolates the approximation space: integrate arcs sharply
  cfg.space.edge_point_boost = 25;
  cfg.space.volume_order_boost = 2;
  cfg.material = std::make_shared<LinearElastic>(1000.0, 0.3);
  cfg.steps = 1;
  cfg.dirichlet.push_back({"boundary", true, true, rigid});
  const AnalysisResult res = run_analysis(mesh, cfg);
  return error_displacement_skeleton(rigid, res.u, res.dofs);
}

double example3_lame_radial(double r) {
  const double G = kE3 / (2.0 * (1.0 + kNu3));
  return kPressure * kRi * kRi / (2.0 * G * (kRo * kRo - kRi * kRi)) *
         ((1.0 - 2.0 * kNu3) * r + kRo * kRo / r);
}

Example3Result run_example3(SpaceVariant variant, int k, int elements,
                            int viscoelastic_set) {
  MeshSpec spec;
  spec.domain = MeshSpec::Domain::QuarterAnnulus;
  spec.annulus_ri = kRi;
  spec.annulus_ro = kRo;
  spec.family = MeshFamily::Quad;
  spec.target_elements = elements;
  CurvedMesh mesh = generate_benchmark_mesh(spec);
  if (variant == SpaceVariant::Straight) mesh = straighten(mesh);

  const double mu0 = viscoelastic_set == 1 ? 0.01 : 0.3;
  AnalysisConfig cfg;
  cfg.space.k = k;
  cfg.space.variant = variant;
  cfg.material = std::make_shared<MaxwellViscoelastic>(
      kE3, kNu3, mu0, std::vector<double>{1.0 - mu0}, std::vector<double>{1.0});
  // instantaneous full-pressure step at t=0, then 20 unit time steps
  cfg.steps = 21;
  cfg.times = {0.0};
  cfg.load_factors.clear();
  for (int i = 1; i <= cfg.steps; ++i) {
    cfg.times.push_back(double(i - 1));
    cfg.load_factors.push_back(1.0);
  }
  cfg.dirichlet.push_back({"x0", true, false, {}});
  cfg.dirichlet.push_back({"y0", false, true, {}});
  cfg.tractions.push_back({"inner", [](const Vec2&, const Vec2& n) {
                             return Vec2(-kPressure * n);
                           }});
  const AnalysisResult res = run_analysis(mesh, cfg);

  Example3Result out;
  const double is2 = 1.0 / std::sqrt(2.0);
  const int nA = nearest_node(res.dofs, {kRi * is2, kRi * is2});
  const int nB = nearest_node(res.dofs, {kRo * is2, kRo * is2});
  for (int i = 0; i < cfg.steps; ++i) {
    const Eigen::VectorXd& u = res.u_history[std::size_t(i)];
    out.time.push_back(cfg.time_at(i + 1));
    out.u_inner.emplace_back(u[res.dofs.node_dof(nA, 0)],
                             u[res.dofs.node_dof(nA, 1)]);
    out.u_outer.emplace_back(u[res.dofs.node_dof(nB, 0)],
                             u[res.dofs.node_dof(nB, 1)]);
  }
  // final radial stress along the 45-degree bisector
  for (int el = 0; el < mesh.num_elements(); ++el) {
    const Element& E = mesh.elements[std::size_t(el)];
    const double th = std::atan2(E.centroid.y(), E.centroid.x());
    if (std::abs(th - 0.25 * kPi) > 0.05) continue;
    const ElementOperators& op = res.ops[std::size_t(el)];
    Eigen::VectorXd lu(op.ndof);
    for (int i = 0; i < op.ndof; ++i) lu[i] = res.u[op.gdofs[std::size_t(i)]];
    for (std::size_t q = 0; q < op.B.size(); ++q) {
      const Vec2 p = op.rule.points.col(int(q));
      Voigt sigma;
      Tangent C;
      Eigen::VectorXd tmp;
      cfg.material->evaluate(op.B[q] * lu, res.states[std::size_t(el)][q], tmp,
                             0.0, sigma, C);
      const double r = p.norm();
      const double c = p.x() / r, s = p.y() / r;
      out.sigma_rho.emplace_back(
          r, sigma[0] * c * c + sigma[1] * s * s + 2.0 * sigma[2] * c * s);
    }
  }
  std::sort(out.sigma_rho.begin(), out.sigma_rho.end());
  return out;
}

Example4Result run_example4(SpaceVariant variant, int k, MeshFamily family,
                            int elements, int increments, unsigned seed) {
  MeshSpec spec;
  spec.domain = MeshSpec::Domain::QuarterPlateHole;
  spec.plate_l = kL4;
  spec.plate_h = kH4;
  spec.plate_r = kR4;
  spec.family = family;
  spec.target_elements = elements;
  spec.seed = seed;
  CurvedMesh mesh = generate_benchmark_mesh(spec);
  if (variant == SpaceVariant::Straight) mesh = straighten(mesh);

  AnalysisConfig cfg;
  cfg.space.k = k;
  cfg.space.variant = variant;
  cfg.material = std::make_shared<J2Plasticity>(kE4, kNu4, kSigY);
  cfg.steps = increments;
  cfg.dirichlet.push_back({"x0", true, false, {}});
  cfg.dirichlet.push_back({"y0", false, true, {}});
  cfg.dirichlet.push_back(
      {"top", true, true, [](const Vec2&) { return Vec2(0.0, kTopDisp); }});
  const AnalysisResult res = run_analysis(mesh, cfg);

  // reaction = sum of internal forces at the prescribed vertical top dofs
  std::vector<int> top_dofs;
  {
    std::vector<char> seen(std::size_t(res.dofs.total), 0);
    for (int e : mesh.boundary_groups.at("top")) {
      const Edge& ed = mesh.edges[std::size_t(e)];
      std::vector<int> nodes = {res.dofs.vertex_node(ed.v0),
                                res.dofs.vertex_node(ed.v1)};
      for (int i = 0; i < k - 1; ++i) nodes.push_back(res.dofs.edge_node(e, i));
      for (int n : nodes) {
        const int d = res.dofs.node_dof(n, 1);
        if (!seen[std::size_t(d)]) {
          seen[std::size_t(d)] = 1;
          top_dofs.push_back(d);
        }
      }
    }
  }
  Example4Result out;
  for (int i = 0; i < increments; ++i) {
    double r = 0.0;
    for (int d : top_dofs) r += res.residual_history[std::size_t(i)][d];
    out.reaction.push_back(r);
    out.newton_iters.push_back(res.newton_iters[std::size_t(i)]);
  }
  return out;
}

void write_errors_csv(const std::string& path, const ConvergenceTable& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "mesh,N,h,dofs,e_u,e_eps,slope_u,slope_eps\n";
  out.precision(12);
  for (const auto& r : table.rows)
    out << r.mesh_id << ',' << r.n_elements << ',' << r.h << ',' << r.dofs
        << ',' << r.e_u << ',' << r.e_eps << ',' << table.slope_u << ','
        << table.slope_eps << '\n';
}

void run_study(const StudyOptions& opt) {
  namespace fs = std::filesystem;
  fs::create_directories(opt.out_dir);
  MeshFamily family = MeshFamily::Quad;
  if (opt.family == "rhex") family = MeshFamily::Rhex;
  else if (opt.family == "voro") family = MeshFamily::Voro;
  else if (opt.family != "quad")
    throw std::runtime_error("unknown mesh family: " + opt.family);

  if (opt.example == 1) {
    std::vector<int> sizes = {256, 512, 1024, 2048};
    if (opt.elements > 0) sizes = {opt.elements / 8, opt.elements / 4,
                                   opt.elements / 2, opt.elements};
    const ConvergenceTable table = example1_convergence(
        opt.variant, opt.k, opt.quadrature, family, sizes, opt.seed);
    write_errors_csv((fs::path(opt.out_dir) / "errors.csv").string(), table);
  } else if (opt.example == 2) {
    ConvergenceTable table;
    std::vector<int> sizes = {512, 1024, 1800};
    if (opt.elements > 0) sizes = {opt.elements};
    for (int n : sizes) {
      const double t0 = now_s();
      ErrorReport row;
      row.mesh_id = "n" + std::to_string(n);
      row.n_elements = n;
      row.h = 1.0 / std::sqrt(double(n));
      row.e_u = example2_error(opt.variant, opt.k, family, n, opt.seed);
      row.runtime_s = now_s() - t0;
      table.rows.push_back(row);
    }
    table.compute_slopes();
    write_errors_csv((fs::path(opt.out_dir) / "errors.csv").string(), table);
  } else if (opt.example == 3) {
    const int n = opt.elements > 0 ? opt.elements : 272;
    const Example3Result res =
        run_example3(opt.variant, opt.k, n, opt.viscoelastic_set);
    std::ofstream hist((fs::path(opt.out_dir) / "history.csv").string());
    hist << "step,time,point,ux,uy\n";
    hist.precision(12);
    for (std::size_t i = 0; i < res.time.size(); ++i) {
      hist << i + 1 << ',' << res.time[i] << ",A," << res.u_inner[i].x() << ','
           << res.u_inner[i].y() << '\n';
      hist << i + 1 << ',' << res.time[i] << ",B," << res.u_outer[i].x() << ','
           << res.u_outer[i].y() << '\n';
    }
    std::ofstream sig((fs::path(opt.out_dir) / "sigma_rho.csv").string());
    sig << "r,sigma_rr\n";
    sig.precision(12);
    for (const auto& [r, s] : res.sigma_rho) sig << r << ',' << s << '\n';
  } else if (opt.example == 4) {
    const int n = opt.elements > 0 ? opt.elements : 84;
    const int m = opt.steps > 0 ? opt.steps : 400;
    const Example4Result res =
        run_example4(opt.variant, opt.k, family, n, m, opt.seed);
    std::ofstream hist((fs::path(opt.out_dir) / "history.csv").string());
    hist << "step,reaction\n";
    hist.precision(12);
    for (std::size_t i = 0; i < res.reaction.size(); ++i)
      hist << i + 1 << ',' << res.reaction[i] << '\n';
  } else {
    throw std::runtime_error("unknown example: " + std::to_string(opt.example));
  }
}

}  // namespace curvem

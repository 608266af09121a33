#include "curvem/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "curvem/mesh_io.hpp"

namespace curvem {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << "config line " << lineno << ": expected `key = value`";
      throw std::runtime_error(os.str());
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("config: empty key at line " +
                               std::to_string(lineno));
    cfg.kv[key] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse(os.str());
}

std::string Config::get(const std::string& key,
                        const std::string& fallback) const {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

std::string Config::require(const std::string& key) const {
  auto it = kv.find(key);
  if (it == kv.end()) throw std::runtime_error("config: missing key `" + key + "`");
  return it->second;
}

double Config::number(const std::string& key, double fallback) const {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  std::size_t pos = 0;
  const double v = std::stod(it->second, &pos);
  if (trim(it->second.substr(pos)).size())
    throw std::runtime_error("config: bad number for `" + key + "`");
  return v;
}

double Config::require_number(const std::string& key) const {
  require(key);
  return number(key, 0.0);
}

int Config::integer(const std::string& key, int fallback) const {
  return int(std::lround(number(key, double(fallback))));
}

SpaceConfig make_space_config(const Config& cfg) {
  SpaceConfig sc;
  sc.k = cfg.integer("k", 1);
  if (sc.k < 1 || sc.k > 6) throw std::runtime_error("config: k out of range");
  const std::string v = cfg.get("variant", "co");
  if (v == "s" || v == "straight") sc.variant = SpaceVariant::Straight;
  else if (v == "co") sc.variant = SpaceVariant::Co;
  else if (v == "cv") sc.variant = SpaceVariant::Cv;
  else throw std::runtime_error("config: unknown variant `" + v + "`");
  const std::string q = cfg.get("quadrature", "minimal");
  if (q == "minimal") sc.quadrature = SpaceConfig::QuadratureMode::Minimal;
  else if (q == "higher") sc.quadrature = SpaceConfig::QuadratureMode::Higher;
  else throw std::runtime_error("config: unknown quadrature `" + q + "`");
  sc.edge_point_boost = cfg.integer("edge_point_boost", 0);
  sc.volume_order_boost = cfg.integer("volume_order_boost", 0);
  sc.compress = cfg.integer("compress", 1) != 0;
  return sc;
}

std::shared_ptr<Material> make_material(const Config& cfg) {
  const std::string m = cfg.get("material", "linear_elastic");
  if (m == "linear_elastic")
    return std::make_shared<LinearElastic>(cfg.number("E", 1000.0),
                                           cfg.number("nu", 0.3));
  if (m == "hencky") return std::make_shared<HenckyVonMises>();
  if (m == "viscoelastic") {
    std::vector<double> mu, lam;
    for (int i = 1;; ++i) {
      const std::string ki = "mu" + std::to_string(i);
      if (!cfg.has(ki)) break;
      mu.push_back(cfg.require_number(ki));
      lam.push_back(cfg.number("lambda" + std::to_string(i), 1.0));
    }
    return std::make_shared<MaxwellViscoelastic>(
        cfg.number("E", 1000.0), cfg.number("nu", 0.3),
        cfg.number("mu0", 1.0), std::move(mu), std::move(lam));
  }
  if (m == "j2")
    return std::make_shared<J2Plasticity>(cfg.number("E", 7000.0),
                                          cfg.number("nu", 0.3),
                                          cfg.number("sigma_y", 24.3));
  throw std::runtime_error("config: unknown material `" + m + "`");
}

AnalysisConfig make_analysis_config(const Config& cfg) {
  AnalysisConfig ac;
  ac.space = make_space_config(cfg);
  ac.material = make_material(cfg);
  ac.steps = cfg.integer("steps", 1);
  ac.newton_tol = cfg.number("newton_tol", 1e-8);
  ac.max_newton = cfg.integer("max_newton", 25);
  if (cfg.has("time_end")) {
    const double tend = cfg.require_number("time_end");
    for (int i = 0; i <= ac.steps; ++i)
      ac.times.push_back(tend * i / ac.steps);
  }
  for (const auto& [key, value] : cfg.kv) {
    if (key.rfind("dirichlet.", 0) == 0) {
      DirichletBC bc;
      bc.group = key.substr(10);
      std::istringstream is(value);
      std::string mode;
      is >> mode;
      double vx = 0.0, vy = 0.0;
      if (mode == "x") {
        bc.fix_x = true;
        bc.fix_y = false;
        is >> vx;
      } else if (mode == "y") {
        bc.fix_x = false;
        bc.fix_y = true;
        is >> vy;
      } else if (mode == "xy") {
        is >> vx >> vy;
      } else {
        throw std::runtime_error("config: dirichlet mode must be x|y|xy");
      }
      if (is.fail())
        throw std::runtime_error("config: bad dirichlet values for " + bc.group);
      bc.value = [vx, vy](const Vec2&) { return Vec2(vx, vy); };
      ac.dirichlet.push_back(std::move(bc));
    } else if (key.rfind("traction.", 0) == 0) {
      TractionBC bc;
      bc.group = key.substr(9);
      std::istringstream is(value);
      std::string mode;
      is >> mode;
      if (mode == "pressure") {
        double p = 0.0;
        is >> p;
        if (is.fail()) throw std::runtime_error("config: bad pressure value");
        bc.traction = [p](const Vec2&, const Vec2& n) { return Vec2(-p * n); };
      } else if (mode == "vector") {
        double tx = 0.0, ty = 0.0;
        is >> tx >> ty;
        if (is.fail()) throw std::runtime_error("config: bad traction vector");
        bc.traction = [tx, ty](const Vec2&, const Vec2&) { return Vec2(tx, ty); };
      } else {
        throw std::runtime_error("config: traction mode must be pressure|vector");
      }
      ac.tractions.push_back(std::move(bc));
    }
  }
  return ac;
}

CurvedMesh make_mesh(const Config& cfg) {
  if (cfg.has("mesh")) return load_mesh_file(cfg.require("mesh"));
  MeshSpec spec;
  const std::string dom = cfg.get("domain", "disk");
  if (dom == "disk") {
    spec.domain = MeshSpec::Domain::Disk;
    spec.disk_radius = cfg.number("radius", 1.0);
  } else if (dom == "quarter_annulus") {
    spec.domain = MeshSpec::Domain::QuarterAnnulus;
    spec.annulus_ri = cfg.number("r_inner", 2.0);
    spec.annulus_ro = cfg.number("r_outer", 4.0);
  } else if (dom == "quarter_plate_hole") {
    spec.domain = MeshSpec::Domain::QuarterPlateHole;
    spec.plate_l = cfg.number("plate_l", 100.0);
    spec.plate_h = cfg.number("plate_h", 180.0);
    spec.plate_r = cfg.number("plate_r", 50.0);
  } else {
    throw std::runtime_error("config: unknown domain `" + dom + "`");
  }
  const std::string fam = cfg.get("family", "quad");
  if (fam == "quad") spec.family = MeshFamily::Quad;
  else if (fam == "rhex") spec.family = MeshFamily::Rhex;
  else if (fam == "voro") spec.family = MeshFamily::Voro;
  else throw std::runtime_error("config: unknown mesh family `" + fam + "`");
  spec.target_elements = cfg.integer("elements", 64);
  spec.seed = unsigned(cfg.integer("seed", 1));
  return generate_benchmark_mesh(spec);
}

}  // namespace curvem

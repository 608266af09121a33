#pragma once

#include <map>
#include <string>

#include "curvem/mesh_gen.hpp"
#include "curvem/solver.hpp"

namespace curvem {

/// Flat key-value configuration: one `key = value` per line, `#` comments.
struct Config {
  std::map<std::string, std::string> kv;

  static Config parse(const std::string& text);
  static Config parse_file(const std::string& path);

  bool has(const std::string& key) const { return kv.count(key) > 0; }
  std::string get(const std::string& key, const std::string& fallback = "") const;
  std::string require(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  double require_number(const std::string& key) const;
  int integer(const std::string& key, int fallback) const;
};

SpaceConfig make_space_config(const Config& cfg);
std::shared_ptr<Material> make_material(const Config& cfg);

/// Full analysis setup from a config (space, material, stepping, boundary
/// conditions). Supported keys are listed in the README.
AnalysisConfig make_analysis_config(const Config& cfg);

/// Mesh from config: `mesh = <file>` or generated via `domain`, `family`,
/// `elements`, `seed` (see README).
CurvedMesh make_mesh(const Config& cfg);

}  // namespace curvem

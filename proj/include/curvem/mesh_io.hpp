#pragma once

#include <iosfwd>
#include <string>

#include "curvem/mesh.hpp"

namespace curvem {

/// "curvem-mesh v1" line-oriented text format:
///   vertex <id> <x> <y>
///   curve <id> circle <cx> <cy> <r>
///   curve <id> segment <x0> <y0> <x1> <y1>
///   edge <id> <v0> <v1> [on <curve-id> <ta> <tb>]
///   element <id> <edge-id list>
///   bgroup <name> <edge-id list>
/// Whitespace separated, '#' comments, 17 significant digits.
std::string save_mesh(const CurvedMesh& mesh);
void save_mesh(const CurvedMesh& mesh, const std::string& path);

/// Parses and validates; throws std::runtime_error with a line number on
/// parse errors and with element/edge ids on invariant violations.
CurvedMesh load_mesh(const std::string& text);
CurvedMesh load_mesh_file(const std::string& path);

}  // namespace curvem

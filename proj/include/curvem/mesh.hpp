#pragma once

#include <map>
#include <string>
#include <vector>

#include "curvem/curve.hpp"

namespace curvem {

/// Mesh edge. Straight edges use the chord between their endpoints
/// (parameter in [0,1]); curved edges reference a curve restriction
/// [ta, tb].
struct Edge {
  int v0 = -1, v1 = -1;
  int curve = -1;  // -1: straight
  double ta = 0.0, tb = 1.0;
  double length = 0.0;  // curvilinear length h_e, set by finalize()
  bool is_curved() const { return curve >= 0; }
};

/// Polygonal element given by a closed counterclockwise edge loop. An edge is
/// traversed reversed when flipped[i] is set.
struct Element {
  std::vector<int> edges;
  std::vector<char> flipped;
  std::vector<int> vertex_loop;  // start vertex of each traversed edge
  Vec2 centroid = Vec2::Zero();
  double diameter = 0.0;
  double area = 0.0;
};

class CurvedMesh {
 public:
  std::vector<Vec2> vertices;
  std::vector<ParametrizedCurve> curves;
  std::vector<Edge> edges;
  std::vector<Element> elements;
  std::map<std::string, std::vector<int>> boundary_groups;  // name -> edge ids
  double mean_h = 0.0;  // mean element diameter

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_elements() const { return static_cast<int>(elements.size()); }

  // Point / tangent at edge parameter t (the edge's own direction, t in
  // [ta,tb] for curved edges, [0,1] for straight).
  Vec2 edge_point(const Edge& e, double t) const;
  Vec2 edge_tangent(const Edge& e, double t) const;
  // Parameter interval in the direction an element traverses the edge.
  std::pair<double, double> traversal_range(const Edge& e, bool flip) const;

  // Elements adjacent to each edge (1 = boundary, 2 = interior).
  std::vector<std::vector<int>>& edge_elements();
  const std::vector<std::vector<int>>& edge_elements() const;

  // Computes edge lengths, vertex loops, element measures, mean h, and
  // validates the mesh invariants; throws std::runtime_error on violation.
  void finalize();

 private:
  mutable std::vector<std::vector<int>> edge_elements_;
};

/// Curvilinear length of an edge: chord length for straight edges, adaptive
/// Gauss quadrature of |gamma'| (1e-12 relative) for curved ones.
double arc_length(const CurvedMesh& mesh, const Edge& edge);

/// Centroid, diameter and area of an element. The diameter is the max
/// pairwise distance among the vertices plus >= 8 samples per curved edge;
/// area and centroid come from divergence-theorem boundary moments.
void element_measures(const CurvedMesh& mesh, Element& element);

/// Mesh with every curved edge replaced by its chord (vertices unchanged).
CurvedMesh straighten(const CurvedMesh& mesh);

}  // namespace curvem

#include "curvem/mesh.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "curvem/quadrature.hpp"

namespace curvem {

Vec2 CurvedMesh::edge_point(const Edge& e, double t) const {
  if (e.is_curved()) return curves[e.curve].point(t);
  return vertices[e.v0] + t * (vertices[e.v1] - vertices[e.v0]);
}

Vec2 CurvedMesh::edge_tangent(const Edge& e, double t) const {
  if (e.is_curved()) return curves[e.curve].derivative(t);
  return vertices[e.v1] - vertices[e.v0];
}

std::pair<double, double> CurvedMesh::traversal_range(const Edge& e,
                                                      bool flip) const {
  if (flip) return {e.tb, e.ta};
  return {e.ta, e.tb};
}

std::vector<std::vector<int>>& CurvedMesh::edge_elements() {
  if (edge_elements_.size() != edges.size()) {
    edge_elements_.assign(edges.size(), {});
    for (int ei = 0; ei < num_elements(); ++ei)
      for (int e : elements[ei].edges) edge_elements_[e].push_back(ei);
  }
  return edge_elements_;
}

const std::vector<std::vector<int>>& CurvedMesh::edge_elements() const {
  return const_cast<CurvedMesh*>(this)->edge_elements();
}

double arc_length(const CurvedMesh& mesh, const Edge& edge) {
  if (!edge.is_curved())
    return (mesh.vertices[edge.v1] - mesh.vertices[edge.v0]).norm();
  const ParametrizedCurve& c = mesh.curves[edge.curve];
  double prev = 0.0;
  for (int npts = 8; npts <= 1024; npts *= 2) {
    const Rule1D g = gauss_legendre(npts);
    double len = 0.0;
    for (int i = 0; i < npts; ++i) {
      const double t = 0.5 * (edge.ta + edge.tb) +
                       0.5 * (edge.tb - edge.ta) * g.points[i];
      len += 0.5 * std::abs(edge.tb - edge.ta) * g.weights[i] *
             c.derivative(t).norm();
    }
    if (npts > 8 && std::abs(len - prev) <= 1e-12 * std::abs(len)) return len;
    prev = len;
  }
  return prev;
}

void element_measures(const CurvedMesh& mesh, Element& element) {
  // Local shift/scale keeps the moment integrals well conditioned.
  const Vec2 x0 = mesh.vertices[element.vertex_loop.front()];
  double scale = 0.0;
  for (int v : element.vertex_loop)
    scale = std::max(scale, (mesh.vertices[v] - x0).norm());
  if (scale == 0.0) scale = 1.0;

  const Eigen::VectorXd m = boundary_moments(mesh, element, 1, x0, scale);
  element.area = m[0] * scale * scale;
  if (!(element.area > 0.0)) {
    std::ostringstream os;
    os << "degenerate element (area " << element.area << " <= 0)";
    throw std::runtime_error(os.str());
  }
  element.centroid = x0 + scale * Vec2(m[1], m[2]) / m[0];

  // Diameter from boundary samples: vertices plus 8 per curved edge.
  std::vector<Vec2> pts;
  for (int v : element.vertex_loop) pts.push_back(mesh.vertices[v]);
  for (int e : element.edges) {
    const Edge& ed = mesh.edges[e];
    if (!ed.is_curved()) continue;
    for (int s = 1; s <= 8; ++s) {
      const double t = ed.ta + s / 9.0 * (ed.tb - ed.ta);
      pts.push_back(mesh.edge_point(ed, t));
    }
  }
  double d2 = 0.0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      d2 = std::max(d2, (pts[i] - pts[j]).squaredNorm());
  element.diameter = std::sqrt(d2);
}

namespace {

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c,
                        const Vec2& d) {
  auto cross = [](const Vec2& u, const Vec2& v) {
    return u.x() * v.y() - u.y() * v.x();
  };
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  return d1 * d2 < 0.0 && d3 * d4 < 0.0;
}

}  // namespace

void CurvedMesh::finalize() {
  edge_elements_.clear();

  for (Edge& e : edges) {
    if (e.v0 < 0 || e.v1 < 0 || e.v0 >= num_vertices() ||
        e.v1 >= num_vertices())
      throw std::runtime_error("edge references unknown vertex");
    if (e.is_curved() && e.curve >= static_cast<int>(curves.size()))
      throw std::runtime_error("edge references unknown curve");
    e.length = arc_length(*this, e);
    if (e.is_curved()) {
      // Curve restriction endpoints must coincide with the mesh vertices.
      const double tol = 1e-12 * std::max(e.length, 1.0);
      if ((edge_point(e, e.ta) - vertices[e.v0]).norm() > tol ||
          (edge_point(e, e.tb) - vertices[e.v1]).norm() > tol)
        throw std::runtime_error(
            "curved edge endpoints do not match vertex coordinates");
    }
    const double chord = (vertices[e.v1] - vertices[e.v0]).norm();
    if (!(chord > 0.0)) throw std::runtime_error("zero-length edge chord");
    if (e.length < chord * (1.0 - 1e-10))
      throw std::runtime_error("edge length shorter than its chord");
  }

  for (int ei = 0; ei < num_elements(); ++ei) {
    Element& el = elements[ei];
    const int n = static_cast<int>(el.edges.size());
    if (n < 2) throw std::runtime_error("element with fewer than 2 edges");
    if (el.flipped.size() != el.edges.size())
      el.flipped.assign(el.edges.size(), 0);
    el.vertex_loop.resize(n);
    for (int i = 0; i < n; ++i) {
      const Edge& e = edges[el.edges[i]];
      el.vertex_loop[i] = el.flipped[i] ? e.v1 : e.v0;
    }
    for (int i = 0; i < n; ++i) {
      const Edge& e = edges[el.edges[i]];
      const int end = el.flipped[i] ? e.v0 : e.v1;
      if (end != el.vertex_loop[(i + 1) % n]) {
        std::ostringstream os;
        os << "element " << ei << ": open edge loop at position " << i;
        throw std::runtime_error(os.str());
      }
    }
    // Chord self-intersection check (non-adjacent pairs only).
    for (int i = 0; i < n; ++i)
      for (int j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        const Vec2& a = vertices[el.vertex_loop[i]];
        const Vec2& b = vertices[el.vertex_loop[(i + 1) % n]];
        const Vec2& c = vertices[el.vertex_loop[j]];
        const Vec2& d = vertices[el.vertex_loop[(j + 1) % n]];
        if (segments_intersect(a, b, c, d)) {
          std::ostringstream os;
          os << "element " << ei << ": self-intersecting chord loop";
          throw std::runtime_error(os.str());
        }
      }
    element_measures(*this, el);
  }

  // Edge sharing: 1 (boundary) or 2 (interior); interior edges straight.
  const auto& ee = edge_elements();
  for (int e = 0; e < num_edges(); ++e) {
    const size_t cnt = ee[e].size();
    if (cnt != 1 && cnt != 2) {
      std::ostringstream os;
      os << "edge " << e << " shared by " << cnt << " elements";
      throw std::runtime_error(os.str());
    }
    if (cnt == 2 && edges[e].is_curved()) {
      std::ostringstream os;
      os << "interior edge " << e << " is curved";
      throw std::runtime_error(os.str());
    }
  }
  for (const auto& [name, ids] : boundary_groups)
    for (int e : ids)
      if (e < 0 || e >= num_edges())
        throw std::runtime_error("boundary group '" + name +
                                 "' references unknown edge");

  mean_h = 0.0;
  for (const Element& el : elements) mean_h += el.diameter;
  mean_h /= std::max(1, num_elements());
}

CurvedMesh straighten(const CurvedMesh& mesh) {
  CurvedMesh out = mesh;
  for (Edge& e : out.edges) {
    e.curve = -1;
    e.ta = 0.0;
    e.tb = 1.0;
  }
  out.finalize();
  return out;
}

}  // namespace curvem

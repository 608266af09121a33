#include "curvem/mesh_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace curvem {

namespace {

void derive_orientation(const CurvedMesh& mesh, Element& el, int id) {
  const int n = static_cast<int>(el.edges.size());
  el.flipped.assign(n, 0);
  for (int first_flip = 0; first_flip < 2; ++first_flip) {
    el.flipped[0] = static_cast<char>(first_flip);
    bool ok = true;
    for (int i = 1; i < n && ok; ++i) {
      const Edge& prev = mesh.edges[el.edges[i - 1]];
      const int end = el.flipped[i - 1] ? prev.v0 : prev.v1;
      const Edge& cur = mesh.edges[el.edges[i]];
      if (cur.v0 == end)
        el.flipped[i] = 0;
      else if (cur.v1 == end)
        el.flipped[i] = 1;
      else
        ok = false;
    }
    if (ok) {
      const Edge& last = mesh.edges[el.edges[n - 1]];
      const Edge& first = mesh.edges[el.edges[0]];
      const int end = el.flipped[n - 1] ? last.v0 : last.v1;
      const int start = el.flipped[0] ? first.v1 : first.v0;
      if (end == start) return;
    }
  }
  std::ostringstream os;
  os << "element " << id << ": edge list does not form a closed loop";
  throw std::runtime_error(os.str());
}

}  // namespace

std::string save_mesh(const CurvedMesh& mesh) {
  std::ostringstream os;
  os.precision(17);
  os << "# curvem-mesh v1\n";
  for (int i = 0; i < mesh.num_vertices(); ++i)
    os << "vertex " << i << ' ' << mesh.vertices[i].x() << ' '
       << mesh.vertices[i].y() << '\n';
  for (size_t i = 0; i < mesh.curves.size(); ++i) {
    const ParametrizedCurve& c = mesh.curves[i];
    if (c.is_circle())
      os << "curve " << i << " circle " << c.center().x() << ' '
         << c.center().y() << ' ' << c.radius() << '\n';
    else
      os << "curve " << i << " segment " << c.p0().x() << ' ' << c.p0().y()
         << ' ' << c.p1().x() << ' ' << c.p1().y() << '\n';
  }
  for (int i = 0; i < mesh.num_edges(); ++i) {
    const Edge& e = mesh.edges[i];
    os << "edge " << i << ' ' << e.v0 << ' ' << e.v1;
    if (e.is_curved()) os << " on " << e.curve << ' ' << e.ta << ' ' << e.tb;
    os << '\n';
  }
  for (int i = 0; i < mesh.num_elements(); ++i) {
    os << "element " << i;
    for (int e : mesh.elements[i].edges) os << ' ' << e;
    os << '\n';
  }
  for (const auto& [name, ids] : mesh.boundary_groups) {
    os << "bgroup " << name;
    for (int e : ids) os << ' ' << e;
    os << '\n';
  }
  return os.str();
}

void save_mesh(const CurvedMesh& mesh, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << save_mesh(mesh);
}

CurvedMesh load_mesh(const std::string& text) {
  CurvedMesh mesh;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    std::ostringstream os;
    os << "mesh parse error at line " << lineno << ": " << msg;
    throw std::runtime_error(os.str());
  };
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "vertex") {
      int id;
      double x, y;
      if (!(ls >> id >> x >> y)) fail("bad vertex line");
      if (id != mesh.num_vertices()) fail("vertex ids must be consecutive");
      mesh.vertices.emplace_back(x, y);
    } else if (kw == "curve") {
      int id;
      std::string kind;
      if (!(ls >> id >> kind)) fail("bad curve line");
      if (id != static_cast<int>(mesh.curves.size()))
        fail("curve ids must be consecutive");
      if (kind == "circle") {
        double cx, cy, r;
        if (!(ls >> cx >> cy >> r)) fail("bad circle curve");
        mesh.curves.push_back(
            ParametrizedCurve::full_circle(Vec2(cx, cy), r));
      } else if (kind == "segment") {
        double x0, y0, x1, y1;
        if (!(ls >> x0 >> y0 >> x1 >> y1)) fail("bad segment curve");
        mesh.curves.push_back(
            ParametrizedCurve::segment(Vec2(x0, y0), Vec2(x1, y1)));
      } else {
        fail("unknown curve kind '" + kind + "'");
      }
    } else if (kw == "edge") {
      int id;
      Edge e;
      if (!(ls >> id >> e.v0 >> e.v1)) fail("bad edge line");
      if (id != mesh.num_edges()) fail("edge ids must be consecutive");
      std::string on;
      if (ls >> on) {
        if (on != "on") fail("expected 'on'");
        if (!(ls >> e.curve >> e.ta >> e.tb)) fail("bad curved edge");
        if (e.curve < 0 || e.curve >= static_cast<int>(mesh.curves.size()))
          fail("edge references unknown curve id");
      }
      mesh.edges.push_back(e);
    } else if (kw == "element") {
      int id;
      if (!(ls >> id)) fail("bad element line");
      if (id != mesh.num_elements()) fail("element ids must be consecutive");
      Element el;
      int e;
      while (ls >> e) {
        if (e < 0 || e >= mesh.num_edges())
          fail("element references unknown edge id");
        el.edges.push_back(e);
      }
      if (el.edges.size() < 2) fail("element needs at least 2 edges");
      mesh.elements.push_back(el);
    } else if (kw == "bgroup") {
      std::string name;
      if (!(ls >> name)) fail("bad bgroup line");
      int e;
      while (ls >> e) mesh.boundary_groups[name].push_back(e);
    } else {
      fail("unknown keyword '" + kw + "'");
    }
  }
  for (int i = 0; i < mesh.num_elements(); ++i)
    derive_orientation(mesh, mesh.elements[i], i);
  mesh.finalize();
  return mesh;
}

CurvedMesh load_mesh_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open mesh file '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return load_mesh(os.str());
}

}  // namespace curvem

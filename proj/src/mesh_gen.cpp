#include "curvem/mesh_gen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace curvem {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// cell boundary loops: straight pieces plus arcs on one of the domain circles
// ---------------------------------------------------------------------------

struct CellPoly {
  std::vector<Vec2> pts;
  std::vector<int> arc_after;  // -1 straight, else circle tag; arc pts[i]->pts[i+1]
};

// keep the half-plane n.(x - p0) <= 0, Sutherland-Hodgman
std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, const Vec2& p0,
                                 const Vec2& n) {
  std::vector<Vec2> out;
  const int m = int(poly.size());
  if (m == 0) return out;
  out.reserve(m + 2);
  for (int i = 0; i < m; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % m];
    const double da = n.dot(a - p0);
    const double db = n.dot(b - p0);
    if (da <= 0.0) {
      out.push_back(a);
      if (db > 0.0) out.push_back(a + (da / (da - db)) * (b - a));
    } else if (db <= 0.0) {
      out.push_back(a + (da / (da - db)) * (b - a));
    }
  }
  return out;
}

// sub-intervals of [0,1] where a + u(b-a) lies in the kept region of a circle
void kept_intervals(const Vec2& a, const Vec2& b, const Vec2& c, double R,
                    bool keep_inside, std::vector<std::pair<double, double>>& iv) {
  iv.clear();
  const Vec2 d = b - a, f = a - c;
  const double A = d.squaredNorm();
  const double B = 2.0 * f.dot(d);
  const double C = f.squaredNorm() - R * R;
  double u0 = 0.0, u1 = -1.0;  // crossing interval (inside part), empty if u1<u0
  const double disc = B * B - 4.0 * A * C;
  if (A < 1e-30) {
    // degenerate zero-length edge
    if ((C <= 0.0) == keep_inside) iv.emplace_back(0.0, 1.0);
    return;
  }
  if (disc > 0.0) {
    const double sq = std::sqrt(disc);
    // numerically stable root pair
    const double q = -0.5 * (B + (B >= 0.0 ? sq : -sq));
    double r0 = q / A, r1 = C / q;
    if (r0 > r1) std::swap(r0, r1);
    u0 = r0;
    u1 = r1;
  }
  if (u1 < u0) {
    // no crossing: classify by midpoint
    const bool mid_in = (a + 0.5 * d - c).norm() <= R;
    if (mid_in == keep_inside) iv.emplace_back(0.0, 1.0);
    return;
  }
  if (keep_inside) {
    const double lo = std::max(0.0, u0), hi = std::min(1.0, u1);
    if (hi > lo) iv.emplace_back(lo, hi);
  } else {
    if (std::min(1.0, u0) > 0.0) iv.emplace_back(0.0, std::min(1.0, u0));
    if (std::max(0.0, u1) < 1.0) iv.emplace_back(std::max(0.0, u1), 1.0);
  }
}

// clip a straight polygon against a circle; gaps along the circle become arcs
CellPoly clip_polygon_circle(const std::vector<Vec2>& poly, const Vec2& c,
                             double R, bool keep_inside, int circle_tag) {
  CellPoly out;
  const int m = int(poly.size());
  if (m < 3) return out;
  const double tol = 1e-9 * R;
  auto on_circle = [&](const Vec2& p) {
    return std::abs((p - c).norm() - R) < 1e3 * tol;
  };
  auto snap = [&](Vec2 p) {
    if (on_circle(p)) p = c + R * (p - c).normalized();
    return p;
  };
  std::vector<std::pair<double, double>> iv;
  for (int i = 0; i < m; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % m];
    kept_intervals(a, b, c, R, keep_inside, iv);
    for (auto [u0, u1] : iv) {
      if ((u1 - u0) * (b - a).norm() < tol) continue;
      Vec2 p0 = snap(a + u0 * (b - a));
      Vec2 p1 = snap(a + u1 * (b - a));
      if (out.pts.empty() || (out.pts.back() - p0).norm() > tol) {
        if (!out.pts.empty()) out.arc_after.back() = circle_tag;  // gap -> arc
        out.pts.push_back(p0);
        out.arc_after.push_back(-1);
      }
      out.pts.push_back(p1);
      out.arc_after.push_back(-1);
    }
  }
  if (out.pts.size() >= 2 && (out.pts.back() - out.pts.front()).norm() < tol) {
    out.pts.pop_back();
    out.arc_after.pop_back();
  } else if (!out.pts.empty()) {
    out.arc_after.back() = circle_tag;  // closing gap is an arc
  }
  if (out.pts.size() < 3) return CellPoly{};
  // drop slivers the circle clip can leave behind
  for (std::size_t i = 0; i < out.pts.size();) {
    const std::size_t j = (i + 1) % out.pts.size();
    if (out.pts.size() > 3 && (out.pts[j] - out.pts[i]).norm() < 10.0 * tol) {
      if (out.arc_after[i] < 0) {
        out.pts.erase(out.pts.begin() + long(i));
        out.arc_after.erase(out.arc_after.begin() + long(i));
      } else {
        out.pts.erase(out.pts.begin() + long(j));
        out.arc_after.erase(out.arc_after.begin() + long(j));
      }
      i = 0;
    } else {
      ++i;
    }
  }
  return out;
}

std::vector<Vec2> polygonize(const CellPoly& cp,
                             const std::vector<std::pair<Vec2, double>>& circles) {
  std::vector<Vec2> out;
  const int m = int(cp.pts.size());
  for (int i = 0; i < m; ++i) {
    out.push_back(cp.pts[i]);
    const int tag = cp.arc_after[i];
    if (tag >= 0) {
      const auto& [c, R] = circles[std::size_t(tag)];
      double a0 = std::atan2(cp.pts[i].y() - c.y(), cp.pts[i].x() - c.x());
      double a1 = std::atan2(cp.pts[(i + 1) % m].y() - c.y(),
                             cp.pts[(i + 1) % m].x() - c.x());
      while (a1 - a0 > kPi) a1 -= 2.0 * kPi;
      while (a1 - a0 < -kPi) a1 += 2.0 * kPi;
      for (int s = 1; s < 16; ++s) {
        const double t = a0 + (a1 - a0) * s / 16.0;
        out.push_back(c + R * Vec2(std::cos(t), std::sin(t)));
      }
    }
  }
  return out;
}

Vec2 polygon_centroid(const std::vector<Vec2>& p) {
  double A = 0.0;
  Vec2 cm = Vec2::Zero();
  const int m = int(p.size());
  for (int i = 0; i < m; ++i) {
    const Vec2& a = p[i];
    const Vec2& b = p[(i + 1) % m];
    const double w = a.x() * b.y() - b.x() * a.y();
    A += w;
    cm += w * (a + b);
  }
  if (std::abs(A) < 1e-300) return p.empty() ? Vec2::Zero() : p[0];
  return cm / (3.0 * A);
}

// ---------------------------------------------------------------------------
// incremental mesh assembly with vertex/edge dedup
// ---------------------------------------------------------------------------

class MeshBuilder {
 public:
  MeshBuilder(double merge_tol,
              const std::vector<std::pair<Vec2, double>>& circles)
      : tol_(merge_tol), circles_(circles) {
    for (const auto& [c, R] : circles_)
      circle_curve_.push_back(int(mesh_.curves.size())),
          mesh_.curves.push_back(ParametrizedCurve::full_circle(c, R));
  }

  int add_vertex(const Vec2& p) {
    const long long qx = llround(p.x()), qy = llround(p.y());
    for (long long ix = qx - 1; ix <= qx + 1; ++ix)
      for (long long iy = qy - 1; iy <= qy + 1; ++iy) {
        auto it = grid_.find(key(ix, iy));
        if (it == grid_.end()) continue;
        for (int v : it->second)
          if ((mesh_.vertices[std::size_t(v)] - p).norm() < tol_) return v;
      }
    const int v = int(mesh_.vertices.size());
    mesh_.vertices.push_back(p);
    grid_[key(qx, qy)].push_back(v);
    return v;
  }

  void add_cell(const CellPoly& cp) {
    const int m = int(cp.pts.size());
    std::vector<int> vid(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) vid[std::size_t(i)] = add_vertex(cp.pts[i]);
    Element el;
    for (int i = 0; i < m; ++i) {
      const int a = vid[std::size_t(i)], b = vid[std::size_t((i + 1) % m)];
      if (a == b) continue;  // collapsed sliver
      auto [eid, flip] = add_edge(a, b, cp.arc_after[std::size_t(i)]);
      el.edges.push_back(eid);
      el.flipped.push_back(flip);
    }
    if (el.edges.size() < 3)
      throw std::runtime_error("mesh generation produced a degenerate cell");
    mesh_.elements.push_back(std::move(el));
  }

  CurvedMesh take() { return std::move(mesh_); }
  const CurvedMesh& mesh() const { return mesh_; }

 private:
  long long llround(double x) const { return (long long)std::floor(x / (4.0 * tol_)); }
  static long long key(long long ix, long long iy) {
    return ix * 2000003LL + iy;
  }

  std::pair<int, bool> add_edge(int a, int b, int tag) {
    const long long k = (long long)std::min(a, b) * 100000007LL + std::max(a, b);
    auto it = edge_map_.find(k);
    if (it != edge_map_.end()) {
      const Edge& e = mesh_.edges[std::size_t(it->second)];
      return {it->second, e.v0 != a};
    }
    Edge e;
    e.v0 = a;
    e.v1 = b;
    if (tag >= 0) {
      const auto& [c, R] = circles_[std::size_t(tag)];
      e.curve = circle_curve_[std::size_t(tag)];
      const Vec2 pa = mesh_.vertices[std::size_t(a)];
      const Vec2 pb = mesh_.vertices[std::size_t(b)];
      e.ta = std::atan2(pa.y() - c.y(), pa.x() - c.x());
      e.tb = std::atan2(pb.y() - c.y(), pb.x() - c.x());
      while (e.tb - e.ta > kPi) e.tb -= 2.0 * kPi;
      while (e.tb - e.ta < -kPi) e.tb += 2.0 * kPi;
    }
    const int eid = int(mesh_.edges.size());
    mesh_.edges.push_back(e);
    edge_map_.emplace(k, eid);
    return {eid, false};
  }

  double tol_;
  std::vector<std::pair<Vec2, double>> circles_;
  std::vector<int> circle_curve_;
  CurvedMesh mesh_;
  std::unordered_map<long long, std::vector<int>> grid_;
  std::unordered_map<long long, int> edge_map_;
};

// boundary group assignment from edge-midpoint geometry
void assign_groups(
    CurvedMesh& mesh,
    const std::vector<std::pair<std::string, std::function<bool(const Vec2&, const Edge&)>>>&
        classifiers) {
  std::vector<int> count(mesh.edges.size(), 0);
  for (const auto& el : mesh.elements)
    for (int e : el.edges) ++count[std::size_t(e)];
  for (int e = 0; e < int(mesh.edges.size()); ++e) {
    if (count[std::size_t(e)] != 1) continue;
    const Edge& ed = mesh.edges[std::size_t(e)];
    const Vec2 mid = mesh.edge_point(ed, 0.5 * (ed.ta + ed.tb));
    bool placed = false;
    for (const auto& [name, pred] : classifiers)
      if (pred(mid, mesh.edges[std::size_t(e)])) {
        mesh.boundary_groups[name].push_back(e);
        placed = true;
        break;
      }
    if (!placed)
      throw std::runtime_error("mesh generation: unclassified boundary edge");
  }
}

// ---------------------------------------------------------------------------
// Voronoi cells by half-plane clipping, nearest-first with an exact cutoff
// ---------------------------------------------------------------------------

std::vector<Vec2> voronoi_cell(const std::vector<Vec2>& seeds, int i,
                               const std::vector<Vec2>& outline) {
  std::vector<Vec2> cell = outline;
  const Vec2 si = seeds[std::size_t(i)];
  std::vector<std::pair<double, int>> order;
  order.reserve(seeds.size());
  for (int j = 0; j < int(seeds.size()); ++j)
    if (j != i) order.emplace_back((seeds[std::size_t(j)] - si).squaredNorm(), j);
  std::sort(order.begin(), order.end());
  for (const auto& [d2, j] : order) {
    double rmax2 = 0.0;
    for (const Vec2& p : cell) rmax2 = std::max(rmax2, (p - si).squaredNorm());
    if (d2 > 4.0 * rmax2) break;  // bisector cannot reach the cell
    const Vec2 sj = seeds[std::size_t(j)];
    cell = clip_halfplane(cell, 0.5 * (si + sj), sj - si);
    if (cell.size() < 3) break;
  }
  return cell;
}

struct VoronoiDomain {
  std::vector<Vec2> outline;  // straight outline (curved parts left loose)
  std::vector<std::pair<Vec2, double>> circles;
  std::vector<char> keep_inside;  // per circle
  std::function<bool(const Vec2&)> contains;
  std::vector<std::pair<std::string, std::function<bool(const Vec2&, const Edge&)>>>
      classifiers;
};

CellPoly clip_to_domain(std::vector<Vec2> cell, const VoronoiDomain& dom,
                        const Vec2& seed) {
  // clip against the nearest circle first; a well-resolved cell meets at most
  // one curved boundary
  std::vector<int> order(dom.circles.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double da = std::abs((seed - dom.circles[std::size_t(a)].first).norm() -
                               dom.circles[std::size_t(a)].second);
    const double db = std::abs((seed - dom.circles[std::size_t(b)].first).norm() -
                               dom.circles[std::size_t(b)].second);
    return da < db;
  });
  CellPoly cp;
  cp.pts = std::move(cell);
  cp.arc_after.assign(cp.pts.size(), -1);
  bool has_arc = false;
  for (int tag : order) {
    const auto& [c, R] = dom.circles[std::size_t(tag)];
    bool crosses = false;
    for (const Vec2& p : cp.pts) {
      const double r = (p - c).norm();
      if ((r < R) != bool(dom.keep_inside[std::size_t(tag)]) &&
          std::abs(r - R) > 1e-9 * R)
        crosses = true;
    }
    if (!crosses) continue;
    if (has_arc)
      throw std::runtime_error(
          "mesh generation: a cell meets two curved boundaries; increase the "
          "element count");
    cp = clip_polygon_circle(cp.pts, c, R, dom.keep_inside[std::size_t(tag)],
                             tag);
    has_arc = true;
  }
  return cp;
}

CurvedMesh voronoi_mesh(std::vector<Vec2> seeds, const VoronoiDomain& dom,
                        int lloyd_iterations, double spacing) {
  for (int it = 0; it < lloyd_iterations; ++it) {
    std::vector<Vec2> next(seeds.size());
    for (int i = 0; i < int(seeds.size()); ++i) {
      CellPoly cp = clip_to_domain(voronoi_cell(seeds, i, dom.outline), dom,
                                   seeds[std::size_t(i)]);
      next[std::size_t(i)] = cp.pts.size() >= 3
                                 ? polygon_centroid(polygonize(cp, dom.circles))
                                 : seeds[std::size_t(i)];
      if (!dom.contains(next[std::size_t(i)]))
        next[std::size_t(i)] = seeds[std::size_t(i)];
    }
    seeds = std::move(next);
  }
  MeshBuilder builder(1e-6 * spacing, dom.circles);
  for (int i = 0; i < int(seeds.size()); ++i) {
    CellPoly cp = clip_to_domain(voronoi_cell(seeds, i, dom.outline), dom,
                                 seeds[std::size_t(i)]);
    if (cp.pts.size() < 3)
      throw std::runtime_error("mesh generation: empty Voronoi cell");
    builder.add_cell(cp);
  }
  CurvedMesh mesh = builder.take();
  assign_groups(mesh, dom.classifiers);
  mesh.finalize();
  return mesh;
}

// seed lattices, trimmed away from the curved boundary so clipped cells stay fat
std::vector<Vec2> lattice_seeds(const VoronoiDomain& dom, MeshFamily family,
                                int n, unsigned seed, const Vec2& lo,
                                const Vec2& hi, double* spacing_out) {
  std::vector<Vec2> seeds;
  const double area_box = (hi - lo).prod();
  auto far_enough = [&](const Vec2& p, double d) {
    if (!dom.contains(p)) return false;
    for (std::size_t c = 0; c < dom.circles.size(); ++c)
      if (std::abs((p - dom.circles[c].first).norm() - dom.circles[c].second) <
          0.35 * d)
        return false;
    return true;
  };
  if (family == MeshFamily::Quad) {
    // estimate the in-domain fraction to hit the requested count
    double frac = 0.0;
    {
      const int s = 64;
      int in = 0;
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
          if (dom.contains(lo + Vec2((i + 0.5) / s * (hi - lo).x(),
                                     (j + 0.5) / s * (hi - lo).y())))
            ++in;
      frac = double(in) / (s * s);
    }
    const double d = std::sqrt(area_box * std::max(frac, 0.05) / n);
    const int mx = std::max(1, int(std::lround((hi - lo).x() / d)));
    const int my = std::max(1, int(std::lround((hi - lo).y() / d)));
    for (int i = 0; i < mx; ++i)
      for (int j = 0; j < my; ++j) {
        const Vec2 p = lo + Vec2((i + 0.5) * (hi - lo).x() / mx,
                                 (j + 0.5) * (hi - lo).y() / my);
        if (far_enough(p, d)) seeds.push_back(p);
      }
    *spacing_out = d;
  } else if (family == MeshFamily::Rhex) {
    double frac = 0.0;
    {
      const int s = 64;
      int in = 0;
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
          if (dom.contains(lo + Vec2((i + 0.5) / s * (hi - lo).x(),
                                     (j + 0.5) / s * (hi - lo).y())))
            ++in;
      frac = double(in) / (s * s);
    }
    const double d =
        std::sqrt(area_box * std::max(frac, 0.05) / (0.5 * std::sqrt(3.0) * n));
    const double row = 0.5 * std::sqrt(3.0) * d;
    for (int j = 0; lo.y() + j * row <= hi.y() + 0.5 * row; ++j)
      for (int i = 0; lo.x() + i * d <= hi.x() + d; ++i) {
        const Vec2 p(lo.x() + (i + (j % 2 ? 0.75 : 0.25)) * d,
                     lo.y() + (j + 0.5) * row);
        if (far_enough(p, d)) seeds.push_back(p);
      }
    *spacing_out = d;
  } else {
    double frac = 0.0;
    {
      const int s = 64;
      int in = 0;
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
          if (dom.contains(lo + Vec2((i + 0.5) / s * (hi - lo).x(),
                                     (j + 0.5) / s * (hi - lo).y())))
            ++in;
      frac = double(in) / (s * s);
    }
    const double d = std::sqrt(area_box * std::max(frac, 0.05) / n);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ux(lo.x(), hi.x()), uy(lo.y(), hi.y());
    int guard = 0;
    while (int(seeds.size()) < n && guard < 1000 * n) {
      const Vec2 p(ux(rng), uy(rng));
      if (far_enough(p, d)) seeds.push_back(p);
      ++guard;
    }
    *spacing_out = d;
  }
  if (seeds.size() < 3)
    throw std::runtime_error("mesh generation: too few seeds; increase N");
  return seeds;
}

VoronoiDomain disk_domain(double R) {
  VoronoiDomain dom;
  const double B = 1.5 * R;
  dom.outline = {{-B, -B}, {B, -B}, {B, B}, {-B, B}};
  dom.circles = {{Vec2::Zero(), R}};
  dom.keep_inside = {1};
  dom.contains = [R](const Vec2& p) { return p.norm() < R; };
  dom.classifiers = {{"boundary", [](const Vec2&, const Edge& e) {
                        return e.is_curved();
                      }}};
  return dom;
}

VoronoiDomain quarter_annulus_domain(double ri, double ro) {
  VoronoiDomain dom;
  dom.outline = {{0.0, 0.0}, {1.5 * ro, 0.0}, {1.5 * ro, 1.5 * ro}, {0.0, 1.5 * ro}};
  dom.circles = {{Vec2::Zero(), ri}, {Vec2::Zero(), ro}};
  dom.keep_inside = {0, 1};
  dom.contains = [ri, ro](const Vec2& p) {
    return p.x() > 0.0 && p.y() > 0.0 && p.norm() > ri && p.norm() < ro;
  };
  const double tol = 1e-8 * ro;
  dom.classifiers = {
      {"x0", [tol](const Vec2& m, const Edge& e) {
         return !e.is_curved() && std::abs(m.x()) < tol;
       }},
      {"y0", [tol](const Vec2& m, const Edge& e) {
         return !e.is_curved() && std::abs(m.y()) < tol;
       }},
      {"inner", [ri, ro](const Vec2& m, const Edge&) {
         return m.norm() < 0.5 * (ri + ro);
       }},
      {"outer", [](const Vec2&, const Edge&) { return true; }}};
  return dom;
}

VoronoiDomain plate_hole_domain(double L, double H, double R) {
  VoronoiDomain dom;
  dom.outline = {{0.0, 0.0}, {L, 0.0}, {L, H}, {0.0, H}};
  dom.circles = {{Vec2::Zero(), R}};
  dom.keep_inside = {0};
  dom.contains = [L, H, R](const Vec2& p) {
    return p.x() > 0.0 && p.y() > 0.0 && p.x() < L && p.y() < H && p.norm() > R;
  };
  const double tol = 1e-8 * std::max(L, H);
  dom.classifiers = {
      {"hole", [](const Vec2&, const Edge& e) { return e.is_curved(); }},
      {"x0", [tol](const Vec2& m, const Edge&) { return std::abs(m.x()) < tol; }},
      {"y0", [tol](const Vec2& m, const Edge&) { return std::abs(m.y()) < tol; }},
      {"right", [L, tol](const Vec2& m, const Edge&) {
         return std::abs(m.x() - L) < tol;
       }},
      {"top", [H, tol](const Vec2& m, const Edge&) {
         return std::abs(m.y() - H) < tol;
       }}};
  return dom;
}

// best n_theta x n_r factorisation of n near a target aspect ratio
std::pair<int, int> pick_factors(int n, double aspect) {
  int bt = n, br = 1;
  double best = std::numeric_limits<double>::infinity();
  for (int r = 1; r <= n; ++r) {
    if (n % r) continue;
    const int t = n / r;
    const double score = std::abs(std::log(double(t) / double(r) / aspect));
    if (score < best) {
      best = score;
      bt = t;
      br = r;
    }
  }
  return {bt, br};
}

}  // namespace

CurvedMesh structured_quarter_annulus(double ri, double ro, int n_theta,
                                      int n_r) {
  if (!(ri > 0.0 && ro > ri) || n_theta < 1 || n_r < 1)
    throw std::invalid_argument("structured_quarter_annulus: bad parameters");
  CurvedMesh mesh;
  const int inner = 0, outer = 1;
  mesh.curves.push_back(ParametrizedCurve::full_circle(Vec2::Zero(), ri));
  mesh.curves.push_back(ParametrizedCurve::full_circle(Vec2::Zero(), ro));
  auto vid = [&](int i, int j) { return i * (n_r + 1) + j; };
  for (int i = 0; i <= n_theta; ++i)
    for (int j = 0; j <= n_r; ++j) {
      const double th = 0.5 * kPi * i / n_theta;
      const double r = ri + (ro - ri) * j / n_r;
      mesh.vertices.emplace_back(r * std::cos(th), r * std::sin(th));
    }
  // circumferential edges ring[j][i] and radial edges rad[i][j]
  std::vector<std::vector<int>> ring(std::size_t(n_r + 1)),
      rad(std::size_t(n_theta + 1));
  for (int j = 0; j <= n_r; ++j)
    for (int i = 0; i < n_theta; ++i) {
      Edge e;
      e.v0 = vid(i, j);
      e.v1 = vid(i + 1, j);
      if (j == 0 || j == n_r) {
        e.curve = (j == 0) ? inner : outer;
        e.ta = 0.5 * kPi * i / n_theta;
        e.tb = 0.5 * kPi * (i + 1) / n_theta;
      }
      ring[std::size_t(j)].push_back(int(mesh.edges.size()));
      mesh.edges.push_back(e);
    }
  for (int i = 0; i <= n_theta; ++i)
    for (int j = 0; j < n_r; ++j) {
      Edge e;
      e.v0 = vid(i, j);
      e.v1 = vid(i, j + 1);
      rad[std::size_t(i)].push_back(int(mesh.edges.size()));
      mesh.edges.push_back(e);
    }
  for (int i = 0; i < n_theta; ++i)
    for (int j = 0; j < n_r; ++j) {
      Element el;
      el.edges = {rad[std::size_t(i)][std::size_t(j)],
                  ring[std::size_t(j + 1)][std::size_t(i)],
                  rad[std::size_t(i + 1)][std::size_t(j)],
                  ring[std::size_t(j)][std::size_t(i)]};
      el.flipped = {false, false, true, true};
      mesh.elements.push_back(el);
    }
  for (int i = 0; i < n_theta; ++i) {
    mesh.boundary_groups["inner"].push_back(ring[0][std::size_t(i)]);
    mesh.boundary_groups["outer"].push_back(
        ring[std::size_t(n_r)][std::size_t(i)]);
  }
  for (int j = 0; j < n_r; ++j) {
    mesh.boundary_groups["y0"].push_back(rad[0][std::size_t(j)]);
    mesh.boundary_groups["x0"].push_back(
        rad[std::size_t(n_theta)][std::size_t(j)]);
  }
  mesh.finalize();
  return mesh;
}

CurvedMesh structured_plate_with_hole(double L, double H, double R, int n_theta,
                                      int n_r) {
  if (!(R > 0.0 && L > R && H > R) || n_theta < 2 || n_r < 1)
    throw std::invalid_argument("structured_plate_with_hole: bad parameters");
  CurvedMesh mesh;
  mesh.curves.push_back(ParametrizedCurve::full_circle(Vec2::Zero(), R));
  // outer path from (L,0) along x=L then y=H to (0,H), arclength parameter
  const double sc = H / (H + L);  // fraction of the path at the (L,H) corner
  const int n1 = std::clamp(int(std::lround(n_theta * sc)), 1, n_theta - 1);
  const int n2 = n_theta - n1;
  std::vector<double> svals(std::size_t(n_theta + 1));
  for (int i = 0; i <= n_theta; ++i)
    svals[std::size_t(i)] = i <= n1 ? sc * i / n1 : sc + (1.0 - sc) * (i - n1) / n2;
  auto outer = [&](double s) {
    return s <= sc ? Vec2(L, s * (H + L)) : Vec2(L - (s - sc) * (H + L), H);
  };
  auto vid = [&](int i, int j) { return i * (n_r + 1) + j; };
  std::vector<double> thetas(std::size_t(n_theta + 1));
  for (int i = 0; i <= n_theta; ++i)
    thetas[std::size_t(i)] = 0.5 * kPi * svals[std::size_t(i)];
  for (int i = 0; i <= n_theta; ++i)
    for (int j = 0; j <= n_r; ++j) {
      const double rho = double(j) / n_r;
      const Vec2 a = R * Vec2(std::cos(thetas[std::size_t(i)]),
                              std::sin(thetas[std::size_t(i)]));
      mesh.vertices.push_back((1.0 - rho) * a + rho * outer(svals[std::size_t(i)]));
    }
  std::vector<std::vector<int>> ring(std::size_t(n_r + 1)),
      rad(std::size_t(n_theta + 1));
  for (int j = 0; j <= n_r; ++j)
    for (int i = 0; i < n_theta; ++i) {
      Edge e;
      e.v0 = vid(i, j);
      e.v1 = vid(i + 1, j);
      if (j == 0) {
        e.curve = 0;
        e.ta = thetas[std::size_t(i)];
        e.tb = thetas[std::size_t(i + 1)];
      }
      ring[std::size_t(j)].push_back(int(mesh.edges.size()));
      mesh.edges.push_back(e);
    }
  for (int i = 0; i <= n_theta; ++i)
    for (int j = 0; j < n_r; ++j) {
      Edge e;
      e.v0 = vid(i, j);
      e.v1 = vid(i, j + 1);
      rad[std::size_t(i)].push_back(int(mesh.edges.size()));
      mesh.edges.push_back(e);
    }
  for (int i = 0; i < n_theta; ++i)
    for (int j = 0; j < n_r; ++j) {
      Element el;
      el.edges = {rad[std::size_t(i)][std::size_t(j)],
                  ring[std::size_t(j + 1)][std::size_t(i)],
                  rad[std::size_t(i + 1)][std::size_t(j)],
                  ring[std::size_t(j)][std::size_t(i)]};
      el.flipped = {false, false, true, true};
      mesh.elements.push_back(el);
    }
  for (int i = 0; i < n_theta; ++i) {
    mesh.boundary_groups["hole"].push_back(ring[0][std::size_t(i)]);
    mesh.boundary_groups[i < n1 ? "right" : "top"].push_back(
        ring[std::size_t(n_r)][std::size_t(i)]);
  }
  for (int j = 0; j < n_r; ++j) {
    mesh.boundary_groups["y0"].push_back(rad[0][std::size_t(j)]);
    mesh.boundary_groups["x0"].push_back(
        rad[std::size_t(n_theta)][std::size_t(j)]);
  }
  mesh.finalize();
  return mesh;
}

CurvedMesh generate_benchmark_mesh(const MeshSpec& spec) {
  if (spec.target_elements < 1)
    throw std::invalid_argument("generate_benchmark_mesh: N must be positive");
  using D = MeshSpec::Domain;
  VoronoiDomain dom;
  Vec2 lo, hi;
  double aspect = 1.0;
  switch (spec.domain) {
    case D::Disk: {
      const double R = spec.disk_radius;
      dom = disk_domain(R);
      lo = {-R, -R};
      hi = {R, R};
      break;
    }
    case D::QuarterAnnulus: {
      if (spec.family == MeshFamily::Quad) {
        aspect = 0.25 * kPi * (spec.annulus_ri + spec.annulus_ro) /
                 (spec.annulus_ro - spec.annulus_ri);
        auto [nt, nr] = pick_factors(spec.target_elements, aspect);
        return structured_quarter_annulus(spec.annulus_ri, spec.annulus_ro, nt,
                                          nr);
      }
      dom = quarter_annulus_domain(spec.annulus_ri, spec.annulus_ro);
      lo = {0.0, 0.0};
      hi = {spec.annulus_ro, spec.annulus_ro};
      break;
    }
    case D::QuarterPlateHole: {
      if (spec.family == MeshFamily::Quad) {
        aspect = 0.25 * kPi * (spec.plate_r + 0.5 * (spec.plate_l + spec.plate_h)) /
                 (0.5 * (spec.plate_l + spec.plate_h) - spec.plate_r);
        auto [nt, nr] = pick_factors(spec.target_elements, aspect);
        return structured_plate_with_hole(spec.plate_l, spec.plate_h,
                                          spec.plate_r, std::max(nt, 2), nr);
      }
      dom = plate_hole_domain(spec.plate_l, spec.plate_h, spec.plate_r);
      lo = {0.0, 0.0};
      hi = {spec.plate_l, spec.plate_h};
      break;
    }
  }
  double spacing = 0.0;
  std::vector<Vec2> seeds = lattice_seeds(dom, spec.family, spec.target_elements,
                                          spec.seed, lo, hi, &spacing);
  const int lloyd = spec.family == MeshFamily::Voro ? spec.lloyd_iterations : 0;
  return voronoi_mesh(std::move(seeds), dom, lloyd, spacing);
}

}  // namespace curvem

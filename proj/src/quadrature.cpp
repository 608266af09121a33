#include "curvem/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "curvem/monomials.hpp"

namespace curvem {

QuadratureRule edge_rule(const CurvedMesh& mesh, const Edge& edge, int npts,
                         RuleKind kind) {
  const Rule1D g = gauss_rule_1d(npts, kind);
  QuadratureRule rule;
  rule.points.resize(2, npts);
  rule.weights.resize(npts);
  rule.exactness = g.exactness;
  const double half = 0.5 * (edge.tb - edge.ta);
  for (int i = 0; i < npts; ++i) {
    const double t = 0.5 * (edge.ta + edge.tb) + half * g.points[i];
    rule.points.col(i) = mesh.edge_point(edge, t);
    rule.weights[i] = g.weights[i] * std::abs(half) *
                      mesh.edge_tangent(edge, t).norm();
  }
  return rule;
}

namespace {

// One edge's contribution (in traversal direction) to all moments up to deg:
// int X^(a+1)/(a+1) * Y^b * dY along the edge, X = (x-x0)/s.
Eigen::VectorXd edge_moment_contribution(const CurvedMesh& mesh, const Edge& e,
                                         bool flip, int deg, const Vec2& x0,
                                         double s, int npts) {
  const int nm = MonomialBasis::dim(deg);
  Eigen::VectorXd m = Eigen::VectorXd::Zero(nm);
  const auto [t0, t1] = mesh.traversal_range(e, flip);
  const Rule1D g = gauss_legendre(npts);
  MonomialBasis mono{x0, s, deg + 1};
  for (int q = 0; q < npts; ++q) {
    const double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * g.points[q];
    const Vec2 p = mesh.edge_point(e, t);
    const Vec2 d = mesh.edge_tangent(e, t) * (0.5 * (t1 - t0));
    const Eigen::VectorXd mv = mono.eval(p);
    for (int i = 0; i < nm; ++i) {
      const auto [a, b] = MonomialBasis::exponent(i);
      // antiderivative in X carries one extra power and a 1/s from dY
      m[i] += g.weights[q] * mv[MonomialBasis::index(a + 1, b)] / (a + 1.0) *
              d.y() / s;
    }
  }
  return m;
}

}  // namespace

Eigen::VectorXd boundary_moments(const CurvedMesh& mesh, const Element& element,
                                 int deg, const Vec2& x0, double s) {
  const int nm = MonomialBasis::dim(deg);
  Eigen::VectorXd m = Eigen::VectorXd::Zero(nm);
  for (size_t i = 0; i < element.edges.size(); ++i) {
    const Edge& e = mesh.edges[element.edges[i]];
    const bool flip = element.flipped[i];
    if (!e.is_curved()) {
      // Polynomial integrand of degree deg+1: exact Gauss rule.
      const int npts = (deg + 3) / 2 + 1;
      m += edge_moment_contribution(mesh, e, flip, deg, x0, s, npts);
      continue;
    }
    // Arcs: adaptive doubling until 1e-13 relative stagnation.
    Eigen::VectorXd prev;
    bool done = false;
    for (int npts = 8; npts <= 512; npts *= 2) {
      Eigen::VectorXd cur =
          edge_moment_contribution(mesh, e, flip, deg, x0, s, npts);
      if (prev.size() > 0) {
        const double ref = std::max(cur.cwiseAbs().maxCoeff(), 1e-30);
        if ((cur - prev).cwiseAbs().maxCoeff() <= 1e-13 * ref) {
          m += cur;
          done = true;
          break;
        }
      }
      prev = cur;
    }
    if (!done)
      throw std::runtime_error(
          "boundary_moments: arc integration did not converge");
  }
  return m;
}

namespace {

struct ConeEdge {
  const Edge* edge;
  bool flip;
};

// Tensor-Gauss cone rule over one traversed edge seen from star point c.
// Appends points/weights; returns false if the Jacobian sign check fails.
bool cone_rule(const CurvedMesh& mesh, const Edge& e, bool flip, const Vec2& c,
               int nu, int nv, std::vector<Vec2>& pts,
               std::vector<double>& wts) {
  const auto [t0, t1] = mesh.traversal_range(e, flip);
  const Rule1D gu = gauss_legendre(nu), gv = gauss_legendre(nv);
  // Sign check at a few extra parameters including the endpoints.
  for (int s = 0; s <= 8; ++s) {
    const double t = t0 + s / 8.0 * (t1 - t0);
    const Vec2 p = mesh.edge_point(e, t);
    const Vec2 d = mesh.edge_tangent(e, t) * (t1 - t0);
    const double jac = (p.x() - c.x()) * d.y() - (p.y() - c.y()) * d.x();
    if (!(jac > 0.0)) return false;
  }
  for (int i = 0; i < nu; ++i) {
    const double u = 0.5 * (1.0 + gu.points[i]);
    const double t = t0 + u * (t1 - t0);
    const Vec2 p = mesh.edge_point(e, t);
    const Vec2 d = mesh.edge_tangent(e, t) * (t1 - t0);
    const double jac = (p.x() - c.x()) * d.y() - (p.y() - c.y()) * d.x();
    for (int j = 0; j < nv; ++j) {
      const double v = 0.5 * (1.0 + gv.points[j]);
      pts.push_back(c + v * (p - c));
      wts.push_back(0.25 * gu.weights[i] * gv.weights[j] * v * jac);
    }
  }
  return true;
}

bool build_fan(const CurvedMesh& mesh, const Element& element, const Vec2& c,
               int order, QuadratureRule& rule) {
  std::vector<Vec2> pts;
  std::vector<double> wts;
  for (size_t i = 0; i < element.edges.size(); ++i) {
    const Edge& e = mesh.edges[element.edges[i]];
    const int n1d = e.is_curved() ? (order + 14) / 2  // arcs are trig: padded
                                  : (order + 3) / 2;  // exact for straight fans
    if (!cone_rule(mesh, e, element.flipped[i], c, n1d, n1d, pts, wts))
      return false;
  }
  rule.points.resize(2, static_cast<int>(pts.size()));
  rule.weights.resize(static_cast<int>(pts.size()));
  for (size_t i = 0; i < pts.size(); ++i) {
    rule.points.col(static_cast<int>(i)) = pts[i];
    rule.weights[static_cast<int>(i)] = wts[i];
  }
  rule.exactness = order;
  return true;
}

}  // namespace

QuadratureRule element_rule(const CurvedMesh& mesh, const Element& element,
                            int order) {
  if (order < 0) order = 0;
  QuadratureRule rule;
  if (build_fan(mesh, element, element.centroid, order, rule)) return rule;
  // Fallback star points between the centroid and each vertex.
  for (int v : element.vertex_loop) {
    const Vec2 c = 0.5 * (element.centroid + mesh.vertices[v]);
    if (build_fan(mesh, element, c, order, rule)) return rule;
  }
  throw std::runtime_error(
      "element_rule: no admissible star point (element not star-shaped)");
}

QuadratureRule compress_rule(const CurvedMesh& mesh, const Element& element,
                             const QuadratureRule& rule, int order) {
  const int target = (order + 1) * (order + 2) / 2;
  int p = static_cast<int>(rule.weights.size());
  if (p <= target) return rule;

  MonomialBasis mono{element.centroid, std::max(element.diameter, 1e-30),
                     order};
  const int nm = mono.size();
  Eigen::MatrixXd A(nm, p);
  for (int j = 0; j < p; ++j) A.col(j) = mono.eval(rule.points.col(j));
  const Eigen::VectorXd b = A * rule.weights;

  Eigen::VectorXd w = rule.weights;
  std::vector<int> idx(p);
  for (int i = 0; i < p; ++i) idx[i] = i;
  Eigen::MatrixXd Ak = A;

  while (static_cast<int>(idx.size()) > target) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(Ak);
    lu.setThreshold(1e-11);
    const Eigen::MatrixXd ker = lu.kernel();
    if (ker.cols() == 0 || ker.col(0).cwiseAbs().maxCoeff() < 1e-14) break;
    Eigen::VectorXd c = ker.col(0);
    if (c.maxCoeff() <= 0.0) c = -c;
    // Largest step along the null direction keeping all weights >= 0.
    double alpha = std::numeric_limits<double>::infinity();
    int drop = -1;
    for (int i = 0; i < c.size(); ++i)
      if (c[i] > 0.0 && w[i] / c[i] < alpha) {
        alpha = w[i] / c[i];
        drop = i;
      }
    if (drop < 0) break;
    w -= alpha * c;
    w[drop] = 0.0;
    const double wmax = w.maxCoeff();
    std::vector<int> keep;
    for (int i = 0; i < w.size(); ++i)
      if (w[i] > 1e-15 * wmax) keep.push_back(i);
    if (keep.empty()) break;
    Eigen::MatrixXd An(nm, static_cast<int>(keep.size()));
    Eigen::VectorXd wn(static_cast<int>(keep.size()));
    std::vector<int> in;
    for (size_t i = 0; i < keep.size(); ++i) {
      An.col(static_cast<int>(i)) = Ak.col(keep[i]);
      wn[static_cast<int>(i)] = w[keep[i]];
      in.push_back(idx[keep[i]]);
    }
    Ak = An;
    w = wn;
    idx = in;
  }

  QuadratureRule out;
  out.exactness = order;
  out.points.resize(2, static_cast<int>(idx.size()));
  out.weights.resize(static_cast<int>(idx.size()));
  for (size_t i = 0; i < idx.size(); ++i) {
    out.points.col(static_cast<int>(i)) = rule.points.col(idx[i]);
    out.weights[static_cast<int>(i)] = w[static_cast<int>(i)];
  }
  const double merr = (Ak * w - b).cwiseAbs().maxCoeff();
  out.compression_stalled = static_cast<int>(idx.size()) != target ||
                            merr > 1e-10 * b.cwiseAbs().maxCoeff();
  return out;
}

bool point_in_element(const CurvedMesh& mesh, const Element& element,
                      const Vec2& p) {
  // Winding number over a sampled boundary polyline (32 samples per arc).
  double winding = 0.0;
  std::vector<Vec2> poly;
  for (size_t i = 0; i < element.edges.size(); ++i) {
    const Edge& e = mesh.edges[element.edges[i]];
    const auto [t0, t1] = mesh.traversal_range(e, element.flipped[i]);
    const int ns = e.is_curved() ? 32 : 1;
    for (int s = 0; s < ns; ++s)
      poly.push_back(mesh.edge_point(e, t0 + s / double(ns) * (t1 - t0)));
  }
  for (size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly[i] - p;
    const Vec2 b = poly[(i + 1) % poly.size()] - p;
    winding += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
  }
  return std::abs(winding) > M_PI;
}

}  // namespace curvem

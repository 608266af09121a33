#include "curvem/element_ops.hpp"

#include <Eigen/Dense>
#include <stdexcept>

#include "curvem/rules1d.hpp"

namespace curvem {

DofMap::DofMap(const CurvedMesh& mesh, int order) {
  if (order < 1) throw std::invalid_argument("DofMap: order must be >= 1");
  k = order;
  n_vertices = mesh.num_vertices();
  n_edges = mesh.num_edges();
  n_elements = mesh.num_elements();
  n_moment = MonomialBasis::dim(k - 2);
  node_pos.resize(std::size_t(n_nodes()));
  for (int v = 0; v < n_vertices; ++v)
    node_pos[std::size_t(v)] = mesh.vertices[std::size_t(v)];
  if (k > 1) {
    const Rule1D lob = gauss_lobatto(k + 1);
    for (int e = 0; e < n_edges; ++e) {
      const Edge& ed = mesh.edges[std::size_t(e)];
      for (int i = 1; i < k; ++i) {
        const double t =
            0.5 * (ed.ta + ed.tb) + 0.5 * (ed.tb - ed.ta) * lob.points[i];
        node_pos[std::size_t(edge_node(e, i - 1))] = mesh.edge_point(ed, t);
      }
    }
  }
  total = 2 * n_nodes() + 2 * n_moment * n_elements;
}

Eigen::Matrix3Xd ElementOperators::strain_matrix(const Vec2& x) const {
  const Eigen::VectorXd m = basis_km1.eval(x);
  const int n = basis_km1.size();
  Eigen::Matrix3Xd out = Eigen::Matrix3Xd::Zero(3, ndof);
  out.row(0) = m.transpose() * pi_eps.topRows(n);
  out.row(1) = m.transpose() * pi_eps.middleRows(n, n);
  out.row(2) = 2.0 * m.transpose() * pi_eps.bottomRows(n);
  return out;
}

Vec2 ElementOperators::poly_displacement(const Eigen::VectorXd& local_u,
                                         const Vec2& x) const {
  const Eigen::VectorXd coef = dof_poly * local_u;
  const Eigen::VectorXd m = basis_k.eval(x);
  Vec2 out = Vec2::Zero();
  for (int a = 0; a < basis_k.size(); ++a) {
    out.x() += coef[2 * a] * m[a];
    out.y() += coef[2 * a + 1] * m[a];
  }
  return out;
}

ElementOperators build_element_operators(const CurvedMesh& mesh,
                                         const DofMap& dofs, int elem,
                                         const SpaceConfig& config) {
  const int k = config.k;
  const Element& el = mesh.elements[std::size_t(elem)];
  const int m = int(el.edges.size());
  const int nk = MonomialBasis::dim(k);
  const int nkm1 = MonomialBasis::dim(k - 1);
  const int nmom = dofs.n_moment;

  ElementOperators ops;
  ops.elem = elem;
  ops.ndof = 2 * (m + m * (k - 1) + nmom);
  ops.basis_k = {el.centroid, el.diameter, k};
  ops.basis_km1 = {el.centroid, el.diameter, std::max(0, k - 1)};
  ops.area = el.area;

  // local -> global dof map: vertices, edge interior blocks, moments
  ops.gdofs.assign(std::size_t(ops.ndof), -1);
  for (int j = 0; j < m; ++j)
    for (int c = 0; c < 2; ++c)
      ops.gdofs[std::size_t(2 * j + c)] =
          dofs.node_dof(dofs.vertex_node(el.vertex_loop[std::size_t(j)]), c);
  const int edge_base = 2 * m;
  for (int j = 0; j < m; ++j) {
    const int e = el.edges[std::size_t(j)];
    const bool flip = el.flipped[std::size_t(j)];
    for (int p = 0; p < k - 1; ++p) {
      const int native = flip ? (k - 2 - p) : p;
      for (int c = 0; c < 2; ++c)
        ops.gdofs[std::size_t(edge_base + 2 * ((k - 1) * j + p) + c)] =
            dofs.node_dof(dofs.edge_node(e, native), c);
    }
  }
  const int mom_base = 2 * (m + m * (k - 1));
  for (int a = 0; a < nmom; ++a)
    for (int c = 0; c < 2; ++c)
      ops.gdofs[std::size_t(mom_base + 2 * a + c)] =
          dofs.moment_dof(elem, a, c);

  // exact monomial moments up to degree 2k-2 (Gram + moment-dof columns)
  const int mdeg = std::max(0, 2 * k - 2);
  const Eigen::VectorXd mu =
      boundary_moments(mesh, el, mdeg, el.centroid, el.diameter);

  // boundary tables with outward normals for the CCW traversal
  const Rule1D r1 = gauss_lobatto(config.n_edge_points());
  for (int j = 0; j < m; ++j) {
    const int e = el.edges[std::size_t(j)];
    const Edge& ed = mesh.edges[std::size_t(e)];
    const bool flip = el.flipped[std::size_t(j)];
    EdgeShape shape(mesh, e, k, config.variant);
    ElementEdgeTable tab;
    tab.edge = e;
    tab.flipped = flip;
    const int nq = int(r1.points.size());
    tab.t.resize(nq);
    tab.x.resize(2, nq);
    tab.w.resize(nq);
    tab.normal.resize(2, nq);
    auto [t0, t1] = mesh.traversal_range(ed, flip);
    const double trav_sign = (t1 > t0) ? 1.0 : -1.0;
    for (int q = 0; q < nq; ++q) {
      const double t =
          0.5 * (ed.ta + ed.tb) + 0.5 * (ed.tb - ed.ta) * r1.points[q];
      tab.t[q] = t;
      tab.x.col(q) = mesh.edge_point(ed, t);
      const Vec2 g = mesh.edge_tangent(ed, t);
      tab.w[q] = 0.5 * std::abs(ed.tb - ed.ta) * r1.weights[q] * g.norm();
      const Vec2 tau = trav_sign * g.normalized();
      tab.normal.col(q) = Vec2(tau.y(), -tau.x());
      tab.shape.push_back(shape.eval(t));
    }
    tab.cols.assign(std::size_t(2 * (k + 1)), -1);
    const int lv0 = flip ? (j + 1) % m : j;      // local vertex of ed.v0
    const int lv1 = flip ? j : (j + 1) % m;
    for (int c = 0; c < 2; ++c) {
      tab.cols[std::size_t(c)] = 2 * lv0 + c;
      tab.cols[std::size_t(2 * k + c)] = 2 * lv1 + c;
    }
    for (int i = 1; i < k; ++i) {
      const int p = flip ? (k - 1 - i) : (i - 1);  // local interior slot
      for (int c = 0; c < 2; ++c)
        tab.cols[std::size_t(2 * i + c)] = edge_base + 2 * ((k - 1) * j + p) + c;
    }
    ops.edge_tables.push_back(std::move(tab));
  }

  // Pi^eps: G X = R with G the Gram of [P_{k-1}]^{2x2}_sym (slot-major rows)
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(3 * nkm1, 3 * nkm1);
  const double s2 = el.diameter * el.diameter;
  for (int s = 0; s < 3; ++s)
    for (int a = 0; a < nkm1; ++a)
      for (int b = 0; b < nkm1; ++b) {
        const auto [ax, ay] = MonomialBasis::exponent(a);
        const auto [bx, by] = MonomialBasis::exponent(b);
        const double w = (s == 2) ? 2.0 : 1.0;
        G(s * nkm1 + a, s * nkm1 + b) =
            w * s2 * mu[MonomialBasis::index(ax + bx, ay + by)];
      }

  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(3 * nkm1, ops.ndof);
  for (const auto& tab : ops.edge_tables) {
    for (int q = 0; q < int(tab.t.size()); ++q) {
      const Eigen::VectorXd mv = ops.basis_km1.eval(tab.x.col(q));
      const Vec2 n = tab.normal.col(q);
      const auto& N = tab.shape[std::size_t(q)];
      for (int a = 0; a < nkm1; ++a) {
        const double wm = tab.w[q] * mv[a];
        // slot tensors E1=diag(1,0), E2=diag(0,1), E3=offdiag(1,1)
        for (int col = 0; col < 2 * (k + 1); ++col) {
          const int lc = tab.cols[std::size_t(col)];
          R(0 * nkm1 + a, lc) += wm * n.x() * N(0, col);
          R(1 * nkm1 + a, lc) += wm * n.y() * N(1, col);
          R(2 * nkm1 + a, lc) +=
              wm * (n.y() * N(0, col) + n.x() * N(1, col));
        }
      }
    }
  }
  // volume part -int v . div(m_a E_s): hits only the moment dofs
  if (k >= 2) {
    for (int a = 0; a < nkm1; ++a) {
      const auto [ax, ay] = MonomialBasis::exponent(a);
      const double h = el.diameter;
      // d/dx m_(ax,ay) = ax/h m_(ax-1,ay), similarly d/dy
      if (ax > 0) {
        const int bI = MonomialBasis::index(ax - 1, ay);
        const double c = ax / h * el.area;
        R(0 * nkm1 + a, mom_base + 2 * bI + 0) -= c;  // E1: div=(dx m, 0)
        R(2 * nkm1 + a, mom_base + 2 * bI + 1) -= c;  // E3: div=(dy m, dx m)
      }
      if (ay > 0) {
        const int bI = MonomialBasis::index(ax, ay - 1);
        const double c = ay / h * el.area;
        R(1 * nkm1 + a, mom_base + 2 * bI + 1) -= c;  // E2: div=(0, dy m)
        R(2 * nkm1 + a, mom_base + 2 * bI + 0) -= c;
      }
    }
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("build_element_operators: singular strain Gram");
  ops.pi_eps = ldlt.solve(R);

  // dof projector onto [P_k]^2 (least squares in dof values)
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(ops.ndof, 2 * nk);
  auto set_point_rows = [&](int row0, const Vec2& x) {
    const Eigen::VectorXd mv = ops.basis_k.eval(x);
    for (int a = 0; a < nk; ++a)
      for (int c = 0; c < 2; ++c) D(row0 + c, 2 * a + c) = mv[a];
  };
  for (int j = 0; j < m; ++j)
    set_point_rows(2 * j, mesh.vertices[std::size_t(el.vertex_loop[std::size_t(j)])]);
  for (int j = 0; j < m; ++j) {
    const int e = el.edges[std::size_t(j)];
    const bool flip = el.flipped[std::size_t(j)];
    EdgeShape shape(mesh, e, k, config.variant);
    for (int p = 0; p < k - 1; ++p) {
      const int native = flip ? (k - 2 - p) : p;
      set_point_rows(edge_base + 2 * ((k - 1) * j + p),
                     shape.node_point(native + 1));
    }
  }
  for (int b = 0; b < nmom; ++b) {
    const auto [bx, by] = MonomialBasis::exponent(b);
    for (int a = 0; a < nk; ++a) {
      const auto [ax, ay] = MonomialBasis::exponent(a);
      const double v =
          s2 * mu[MonomialBasis::index(ax + bx, ay + by)] / el.area;
      for (int c = 0; c < 2; ++c) D(mom_base + 2 * b + c, 2 * a + c) = v;
    }
  }
  Eigen::LDLT<Eigen::MatrixXd> dtd((D.transpose() * D).eval());
  if (dtd.info() != Eigen::Success)
    throw std::runtime_error("build_element_operators: rank-deficient dof matrix");
  ops.dof_poly = dtd.solve(D.transpose());
  ops.pi_dof = D * ops.dof_poly;
  ops.stab = Eigen::MatrixXd::Identity(ops.ndof, ops.ndof) - ops.pi_dof;

  // volume rule and strain evaluation tables
  QuadratureRule rule = element_rule(mesh, el, config.volume_order());
  if (config.compress) rule = compress_rule(mesh, el, rule, config.volume_order());
  ops.rule = std::move(rule);
  ops.B.reserve(std::size_t(ops.rule.points.cols()));
  for (int q = 0; q < ops.rule.points.cols(); ++q)
    ops.B.push_back(ops.strain_matrix(ops.rule.points.col(q)));
  ops.B_centroid = ops.strain_matrix(el.centroid);
  return ops;
}

Eigen::VectorXd interpolate(const std::function<Vec2(const Vec2&)>& u,
                            const CurvedMesh& mesh, const DofMap& dofs) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dofs.total);
  for (int n = 0; n < dofs.n_nodes(); ++n) {
    const Vec2 v = u(dofs.node_pos[std::size_t(n)]);
    out[dofs.node_dof(n, 0)] = v.x();
    out[dofs.node_dof(n, 1)] = v.y();
  }
  if (dofs.n_moment > 0) {
    for (int el = 0; el < mesh.num_elements(); ++el) {
      const Element& E = mesh.elements[std::size_t(el)];
      const MonomialBasis basis{E.centroid, E.diameter, dofs.k - 2};
      const QuadratureRule rule = element_rule(mesh, E, 2 * dofs.k + 2);
      Eigen::VectorXd accx = Eigen::VectorXd::Zero(dofs.n_moment);
      Eigen::VectorXd accy = Eigen::VectorXd::Zero(dofs.n_moment);
      for (int q = 0; q < rule.points.cols(); ++q) {
        const Eigen::VectorXd mv = basis.eval(rule.points.col(q));
        const Vec2 v = u(rule.points.col(q));
        accx += rule.weights[q] * v.x() * mv;
        accy += rule.weights[q] * v.y() * mv;
      }
      for (int a = 0; a < dofs.n_moment; ++a) {
        out[dofs.moment_dof(el, a, 0)] = accx[a] / E.area;
        out[dofs.moment_dof(el, a, 1)] = accy[a] / E.area;
      }
    }
  }
  return out;
}

}  // namespace curvem

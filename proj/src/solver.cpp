#include "curvem/solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <map>
#include <sstream>
#include <stdexcept>

namespace curvem {

void element_force_and_tangent(const ElementOperators& ops,
                               const Material& material,
                               const Eigen::VectorXd& local_u,
                               const ElementStates& states_old,
                               ElementStates& states_new, double dt,
                               const Eigen::VectorXd& stab_weights,
                               Eigen::VectorXd& force,
                               Eigen::MatrixXd& tangent) {
  const int nq = int(ops.rule.points.cols());
  force = Eigen::VectorXd::Zero(ops.ndof);
  tangent = Eigen::MatrixXd::Zero(ops.ndof, ops.ndof);
  states_new.resize(states_old.size());
  Voigt sigma;
  Tangent C;
  for (int q = 0; q < nq; ++q) {
    const Voigt eps = ops.B[std::size_t(q)] * local_u;
    try {
      material.evaluate(eps, states_old[std::size_t(q)],
                        states_new[std::size_t(q)], dt, sigma, C);
    } catch (const std::exception& ex) {
      std::ostringstream os;
      os << "material failure at element " << ops.elem << ", point " << q
         << ": " << ex.what();
      throw std::runtime_error(os.str());
    }
    const double w = ops.rule.weights[q];
    force.noalias() += w * ops.B[std::size_t(q)].transpose() * sigma;
    tangent.noalias() +=
        w * ops.B[std::size_t(q)].transpose() * C * ops.B[std::size_t(q)];
  }
  // centroid state rides along for the stabilization weights
  material.evaluate(ops.B_centroid * local_u, states_old.back(),
                    states_new.back(), dt, sigma, C);
  const Eigen::VectorXd su = ops.stab * local_u;
  force.noalias() += ops.stab.transpose() * stab_weights.cwiseProduct(su);
  tangent.noalias() +=
      ops.stab.transpose() * stab_weights.asDiagonal() * ops.stab;
}

Eigen::VectorXd stabilization_weights(const ElementOperators& ops,
                                      const Material& material,
                                      const Eigen::VectorXd& local_u,
                                      const ElementStates& states, double dt) {
  Voigt sigma;
  Tangent C;
  Eigen::VectorXd tmp;
  material.evaluate(ops.B_centroid * local_u, states.back(), tmp, dt, sigma, C);
  const double alpha = tangent_norm(C);
  Eigen::VectorXd w(ops.ndof);
  for (int i = 0; i < ops.ndof; ++i) {
    double mii = 0.0;
    for (std::size_t q = 0; q < ops.B.size(); ++q) {
      const Eigen::Vector3d bi = ops.B[q].col(i);
      mii += ops.rule.weights[int(q)] * bi.dot(C * bi);
    }
    w[i] = std::max(alpha, mii);
  }
  return w;
}

namespace {

ElementStates initial_states(const ElementOperators& ops,
                             const Material& material) {
  ElementStates st(std::size_t(ops.rule.points.cols()) + 1);
  for (auto& s : st) material.initial_state(s);
  return st;
}

Eigen::VectorXd local_vector(const ElementOperators& ops,
                             const Eigen::VectorXd& u) {
  Eigen::VectorXd v(ops.ndof);
  for (int i = 0; i < ops.ndof; ++i) v[i] = u[ops.gdofs[std::size_t(i)]];
  return v;
}

struct Constraints {
  std::vector<char> fixed;      // per dof
  Eigen::VectorXd value;        // full-load prescribed values
};

Constraints build_constraints(const CurvedMesh& mesh, const DofMap& dofs,
                              const AnalysisConfig& cfg) {
  Constraints c;
  c.fixed.assign(std::size_t(dofs.total), 0);
  c.value = Eigen::VectorXd::Zero(dofs.total);
  const double tol = 1e-10;
  auto prescribe = [&](int node, int comp, double v) {
    const int d = dofs.node_dof(node, comp);
    if (c.fixed[std::size_t(d)] &&
        std::abs(c.value[d] - v) > tol * (1.0 + std::abs(v))) {
      std::ostringstream os;
      os << "conflicting Dirichlet prescriptions at dof " << d << " (" <<
          c.value[d] << " vs " << v << ")";
      throw std::runtime_error(os.str());
    }
    c.fixed[std::size_t(d)] = 1;
    c.value[d] = v;
  };
  for (const auto& bc : cfg.dirichlet) {
    auto it = mesh.boundary_groups.find(bc.group);
    if (it == mesh.boundary_groups.end())
      throw std::runtime_error("unknown boundary group: " + bc.group);
    for (int e : it->second) {
      const Edge& ed = mesh.edges[std::size_t(e)];
      std::vector<int> nodes = {dofs.vertex_node(ed.v0), dofs.vertex_node(ed.v1)};
      for (int i = 0; i < dofs.k - 1; ++i) nodes.push_back(dofs.edge_node(e, i));
      for (int n : nodes) {
        const Vec2 v =
            bc.value ? bc.value(dofs.node_pos[std::size_t(n)]) : Vec2::Zero();
        if (bc.fix_x) prescribe(n, 0, v.x());
        if (bc.fix_y) prescribe(n, 1, v.y());
      }
    }
  }
  return c;
}

}  // namespace

Eigen::VectorXd external_load(const CurvedMesh& mesh, const DofMap& dofs,
                              const std::vector<ElementOperators>& ops,
                              const AnalysisConfig& cfg) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(dofs.total);
  if (cfg.body_force) {
    const int k = dofs.k;
    for (int el = 0; el < mesh.num_elements(); ++el) {
      const Element& E = mesh.elements[std::size_t(el)];
      if (k == 1) {
        // vertex-based rule: area / #vertices at each vertex
        const double w = E.area / double(E.vertex_loop.size());
        for (int v : E.vertex_loop) {
          const Vec2 fv = cfg.body_force(mesh.vertices[std::size_t(v)]);
          f[dofs.node_dof(dofs.vertex_node(v), 0)] += w * fv.x();
          f[dofs.node_dof(dofs.vertex_node(v), 1)] += w * fv.y();
        }
        continue;
      }
      // L2-project f onto P_{k-2} and pair it exactly through the moment
      // dofs; the remainder f - f_h is paired against the dof-projected
      // polynomial Pi v. The remainder is one order small, so the Pi v
      // substitution costs nothing and the combination keeps the k+1 rate
      // (plain moment pairing caps the nodal error at second order for k=2).
      const ElementOperators& op = ops[std::size_t(el)];
      const MonomialBasis basis{E.centroid, E.diameter, k - 2};
      const int nm = basis.size();
      const int nk = op.basis_k.size();
      const Eigen::VectorXd mu =
          boundary_moments(mesh, E, 2 * (k - 2), E.centroid, E.diameter);
      Eigen::MatrixXd M(nm, nm);
      const double s2 = E.diameter * E.diameter;
      for (int a = 0; a < nm; ++a)
        for (int b = 0; b < nm; ++b) {
          const auto [ax, ay] = MonomialBasis::exponent(a);
          const auto [bx, by] = MonomialBasis::exponent(b);
          M(a, b) = s2 * mu[MonomialBasis::index(ax + bx, ay + by)];
        }
      const QuadratureRule rule = element_rule(mesh, E, 2 * k + 2);
      Eigen::VectorXd rx = Eigen::VectorXd::Zero(nm),
                      ry = Eigen::VectorXd::Zero(nm);
      for (int q = 0; q < rule.points.cols(); ++q) {
        const Eigen::VectorXd mv = basis.eval(rule.points.col(q));
        const Vec2 fv = cfg.body_force(rule.points.col(q));
        rx += rule.weights[q] * fv.x() * mv;
        ry += rule.weights[q] * fv.y() * mv;
      }
      Eigen::LDLT<Eigen::MatrixXd> ldlt(M);
      const Eigen::VectorXd cx = ldlt.solve(rx), cy = ldlt.solve(ry);
      for (int a = 0; a < nm; ++a) {
        f[dofs.moment_dof(el, a, 0)] += E.area * cx[a];
        f[dofs.moment_dof(el, a, 1)] += E.area * cy[a];
      }
      Eigen::VectorXd g = Eigen::VectorXd::Zero(2 * nk);
      for (int q = 0; q < rule.points.cols(); ++q) {
        const Eigen::VectorXd mv = op.basis_k.eval(rule.points.col(q));
        const Eigen::VectorXd mlow = basis.eval(rule.points.col(q));
        Vec2 fv = cfg.body_force(rule.points.col(q));
        fv.x() -= mlow.dot(cx);
        fv.y() -= mlow.dot(cy);
        for (int a = 0; a < nk; ++a) {
          g[2 * a] += rule.weights[q] * fv.x() * mv[a];
          g[2 * a + 1] += rule.weights[q] * fv.y() * mv[a];
        }
      }
      const Eigen::VectorXd fl = op.dof_poly.transpose() * g;
      for (int i = 0; i < op.ndof; ++i) f[op.gdofs[std::size_t(i)]] += fl[i];
    }
  }
  if (!cfg.tractions.empty()) {
    const auto& e2el = mesh.edge_elements();
    for (const auto& bc : cfg.tractions) {
      auto it = mesh.boundary_groups.find(bc.group);
      if (it == mesh.boundary_groups.end())
        throw std::runtime_error("unknown boundary group: " + bc.group);
      for (int e : it->second) {
        if (e2el[std::size_t(e)].size() != 1)
          throw std::runtime_error("traction on an interior edge");
        const int el = e2el[std::size_t(e)][0];
        const ElementOperators& op = ops[std::size_t(el)];
        for (const auto& tab : op.edge_tables) {
          if (tab.edge != e) continue;
          for (int q = 0; q < int(tab.t.size()); ++q) {
            const Vec2 tr = bc.traction(tab.x.col(q), tab.normal.col(q));
            const auto& N = tab.shape[std::size_t(q)];
            for (int col = 0; col < N.cols(); ++col) {
              const int g = op.gdofs[std::size_t(tab.cols[std::size_t(col)])];
              f[g] += tab.w[q] * (N(0, col) * tr.x() + N(1, col) * tr.y());
            }
          }
        }
      }
    }
  }
  return f;
}

AnalysisResult run_analysis(const CurvedMesh& mesh,
                            const AnalysisConfig& cfg) {
  if (cfg.steps < 1 || cfg.newton_tol <= 0.0)
    throw std::invalid_argument("run_analysis: invalid stepping parameters");
  if (!cfg.material) throw std::invalid_argument("run_analysis: no material");
  AnalysisResult res;
  res.dofs = DofMap(mesh, cfg.space.k);
  res.ops.reserve(std::size_t(mesh.num_elements()));
  for (int el = 0; el < mesh.num_elements(); ++el)
    res.ops.push_back(build_element_operators(mesh, res.dofs, el, cfg.space));

  const Material& mat = *cfg.material;
  res.states.reserve(res.ops.size());
  for (const auto& op : res.ops) res.states.push_back(initial_states(op, mat));

  const Constraints con = build_constraints(mesh, res.dofs, cfg);
  const Eigen::VectorXd f_full = external_load(mesh, res.dofs, res.ops, cfg);
  const double load_scale = f_full.norm();

  res.u = Eigen::VectorXd::Zero(res.dofs.total);
  // stabilization weights from the initial state
  std::vector<Eigen::VectorXd> weights(res.ops.size());
  for (std::size_t i = 0; i < res.ops.size(); ++i)
    weights[i] = stabilization_weights(res.ops[i], mat,
                                       local_vector(res.ops[i], res.u),
                                       res.states[i], 0.0);

  std::vector<ElementStates> trial(res.states.size());
  Eigen::SparseMatrix<double> K(res.dofs.total, res.dofs.total);
  for (int step = 1; step <= cfg.steps; ++step) {
    const double fac = cfg.factor(step);
    const double dt = cfg.time_at(step) - cfg.time_at(step - 1);
    for (int d = 0; d < res.dofs.total; ++d)
      if (con.fixed[std::size_t(d)]) res.u[d] = fac * con.value[d];

    double scale = load_scale;
    int iters = 0;
    Eigen::VectorXd residual;
    bool converged = false;
    std::vector<double> history;
    while (true) {
      // assemble residual and tangent at the current iterate
      Eigen::VectorXd r = -fac * f_full;
      std::vector<Eigen::Triplet<double>> trip;
      Eigen::VectorXd fe;
      Eigen::MatrixXd Ke;
      for (std::size_t i = 0; i < res.ops.size(); ++i) {
        const ElementOperators& op = res.ops[i];
        element_force_and_tangent(op, mat, local_vector(op, res.u),
                                  res.states[i], trial[i], dt, weights[i], fe,
                                  Ke);
        for (int a = 0; a < op.ndof; ++a) {
          const int ga = op.gdofs[std::size_t(a)];
          r[ga] += fe[a];
          if (con.fixed[std::size_t(ga)]) continue;
          for (int b = 0; b < op.ndof; ++b) {
            const int gb = op.gdofs[std::size_t(b)];
            if (con.fixed[std::size_t(gb)]) continue;
            trip.emplace_back(ga, gb, Ke(a, b));
          }
        }
      }
      residual = r;
      for (int d = 0; d < res.dofs.total; ++d)
        if (con.fixed[std::size_t(d)]) r[d] = 0.0;
      const double rnorm = r.norm();
      history.push_back(rnorm);
      if (scale <= 0.0) scale = std::max(rnorm, 1e-30);
      if (rnorm <= cfg.newton_tol * scale || rnorm <= 1e-14 * (1.0 + scale)) {
        converged = true;
        break;
      }
      if (iters >= cfg.max_newton) break;
      for (int d = 0; d < res.dofs.total; ++d)
        if (con.fixed[std::size_t(d)]) trip.emplace_back(d, d, 1.0);
      K.setFromTriplets(trip.begin(), trip.end());
      Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(K);
      if (lu.info() != Eigen::Success)
        throw std::runtime_error("run_analysis: singular tangent system");
      res.u -= lu.solve(r);
      ++iters;
    }
    if (!converged) {
      std::ostringstream os;
      os << "Newton did not converge at step " << step << " (residuals:";
      for (double h : history) os << " " << h;
      os << ")";
      throw std::runtime_error(os.str());
    }
    // commit states and refresh stabilization weights
    res.states = trial;
    for (std::size_t i = 0; i < res.ops.size(); ++i)
      weights[i] = stabilization_weights(res.ops[i], mat,
                                         local_vector(res.ops[i], res.u),
                                         res.states[i], dt);
    res.u_history.push_back(res.u);
    res.residual_history.push_back(residual);
    res.newton_iters.push_back(iters);
  }
  return res;
}

}  // namespace curvem

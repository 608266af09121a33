#include "curvem/edge_space.hpp"

#include <stdexcept>

#include "curvem/rules1d.hpp"

namespace curvem {

RigidMap rigid_map_from_endpoints(const Vec2& nu0, const Vec2& nu1,
                                  const Vec2& u0, const Vec2& u1) {
  const Vec2 d = nu1 - nu0;
  const double n2 = d.squaredNorm();
  if (n2 <= 0.0)
    throw std::invalid_argument("rigid_map_from_endpoints: coincident endpoints");
  RigidMap F;
  F.base = nu0;
  F.a = u0;
  const Vec2 du = u1 - u0;
  // b = A(nu1-nu0)^{-1} (u1-u0)
  F.b = Vec2(d.x() * du.x() + d.y() * du.y(), -d.y() * du.x() + d.x() * du.y()) / n2;
  return F;
}

EdgeShape::EdgeShape(const CurvedMesh& mesh, int edge, int k,
                     SpaceVariant variant)
    : mesh_(&mesh), edge_(edge), k_(k), variant_(variant) {
  const Edge& e = mesh.edges[std::size_t(edge)];
  curved_ = e.is_curved();
  ts_.resize(std::size_t(k + 1));
  ts_.front() = e.ta;
  ts_.back() = e.tb;
  if (k > 1) {
    const Rule1D lob = gauss_lobatto(k + 1);  // interior nodes of [-1,1]
    for (int i = 1; i < k; ++i)
      ts_[std::size_t(i)] =
          0.5 * (e.ta + e.tb) + 0.5 * (e.tb - e.ta) * lob.points[i];
  }
  bary_.resize(k + 1);
  for (int i = 0; i <= k; ++i) {
    double w = 1.0;
    for (int j = 0; j <= k; ++j)
      if (j != i) w *= ts_[std::size_t(i)] - ts_[std::size_t(j)];
    bary_[i] = 1.0 / w;
  }
  pts_.resize(std::size_t(k + 1));
  for (int i = 0; i <= k; ++i)
    pts_[std::size_t(i)] = mesh.edge_point(e, ts_[std::size_t(i)]);
  if (curved_ && variant_ == SpaceVariant::Cv) {
    // canonical endpoint maps: unit value of one endpoint component
    const Vec2 z = Vec2::Zero(), ex(1, 0), ey(0, 1);
    rigid_.push_back(rigid_map_from_endpoints(pts_.front(), pts_.back(), ex, z));
    rigid_.push_back(rigid_map_from_endpoints(pts_.front(), pts_.back(), ey, z));
    rigid_.push_back(rigid_map_from_endpoints(pts_.front(), pts_.back(), z, ex));
    rigid_.push_back(rigid_map_from_endpoints(pts_.front(), pts_.back(), z, ey));
  }
}

Vec2 EdgeShape::node_point(int i) const { return pts_[std::size_t(i)]; }

Eigen::VectorXd EdgeShape::lagrange(double t) const {
  Eigen::VectorXd l(k_ + 1);
  for (int i = 0; i <= k_; ++i) {
    if (std::abs(t - ts_[std::size_t(i)]) < 1e-14 * std::abs(ts_.back() - ts_.front())) {
      l.setZero();
      l[i] = 1.0;
      return l;
    }
  }
  double prod = 1.0;
  for (int j = 0; j <= k_; ++j) prod *= t - ts_[std::size_t(j)];
  for (int i = 0; i <= k_; ++i) l[i] = prod * bary_[i] / (t - ts_[std::size_t(i)]);
  return l;
}

Eigen::Matrix<double, 2, Eigen::Dynamic> EdgeShape::eval(double t) const {
  Eigen::Matrix<double, 2, Eigen::Dynamic> N(2, 2 * (k_ + 1));
  const Eigen::VectorXd l = lagrange(t);
  if (!curved_ || variant_ != SpaceVariant::Cv) {
    // Lagrange in the edge parameter, identity across components
    N.setZero();
    for (int i = 0; i <= k_; ++i) {
      N(0, 2 * i) = l[i];
      N(1, 2 * i + 1) = l[i];
    }
    return N;
  }
  // cv: rigid family through the endpoint dofs, bubble-corrected so every
  // shape function is nodal at the interior parameter nodes
  N.setZero();
  const Vec2 x = mesh_->edge_point(mesh_->edges[std::size_t(edge_)], t);
  for (int c = 0; c < 4; ++c) {
    const int col = (c < 2) ? c : 2 * k_ + (c - 2);
    Vec2 v = rigid_[std::size_t(c)].eval(x);
    for (int j = 1; j < k_; ++j)
      v -= l[j] * rigid_[std::size_t(c)].eval(pts_[std::size_t(j)]);
    N.col(col) = v;
  }
  for (int i = 1; i < k_; ++i) {
    N(0, 2 * i) += l[i];
    N(1, 2 * i + 1) += l[i];
  }
  return N;
}

}  // namespace curvem

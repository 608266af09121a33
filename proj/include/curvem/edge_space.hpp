#pragma once

#include <Eigen/Dense>
#include <vector>

#include "curvem/mesh.hpp"

namespace curvem {

enum class SpaceVariant { Straight, Co, Cv };

/// Affine map F(x) = a + A(x - base) b with A(p) = [[p1, -p2], [p2, p1]]:
/// translation + homotopy + linearized rotation.
struct RigidMap {
  Vec2 base = Vec2::Zero();
  Vec2 a = Vec2::Zero();
  Vec2 b = Vec2::Zero();
  Vec2 eval(const Vec2& x) const {
    const Vec2 p = x - base;
    return a + Vec2(p.x() * b.x() - p.y() * b.y(), p.y() * b.x() + p.x() * b.y());
  }
};

/// Unique map of the family with F(nu0) = u0, F(nu1) = u1.
RigidMap rigid_map_from_endpoints(const Vec2& nu0, const Vec2& nu1,
                                  const Vec2& u0, const Vec2& u1);

/// Displacement restricted to one edge as a function of the 2(k+1) nodal
/// values (endpoints + k-1 interior parameter-Lobatto nodes, in ta->tb order).
class EdgeShape {
 public:
  EdgeShape(const CurvedMesh& mesh, int edge, int k, SpaceVariant variant);

  int order() const { return k_; }
  int n_nodes() const { return k_ + 1; }
  const std::vector<double>& nodes() const { return ts_; }  // parameter values
  Vec2 node_point(int i) const;

  /// 2 x 2(k+1): u(t) = N(t) * d, d = (ux0,uy0, ux_i1,uy_i1, ..., ux1,uy1)
  /// with interior nodes between the two endpoints in ta->tb order.
  Eigen::Matrix<double, 2, Eigen::Dynamic> eval(double t) const;

 private:
  Eigen::VectorXd lagrange(double t) const;

  const CurvedMesh* mesh_;
  int edge_;
  int k_;
  bool curved_;
  SpaceVariant variant_;
  std::vector<double> ts_;
  Eigen::VectorXd bary_;                      // barycentric weights
  std::vector<Vec2> pts_;                     // node points on the edge
  std::vector<RigidMap> rigid_;               // cv: 4 canonical endpoint maps
};

}  // namespace curvem

#pragma once

#include <Eigen/Dense>
#include <utility>

namespace curvem {

using Vec2 = Eigen::Vector2d;

/// Analytic boundary curve: a circular arc (parameter = angle, counterclockwise
/// for increasing parameter) or a straight segment (parameter in [0,1]).
/// Curves are immutable; they are the geometric source of truth for curved
/// mesh edges.
class ParametrizedCurve {
 public:
  enum class Kind { CircleArc, Segment };

  static ParametrizedCurve circle_arc(const Vec2& center, double radius,
                                      double t0, double t1);
  // Full circle usable as a container for arc-edges with arbitrary angles.
  static ParametrizedCurve full_circle(const Vec2& center, double radius);
  static ParametrizedCurve segment(const Vec2& p0, const Vec2& p1);

  Kind kind() const { return kind_; }
  bool is_circle() const { return kind_ == Kind::CircleArc; }
  const Vec2& center() const { return a_; }
  double radius() const { return radius_; }
  const Vec2& p0() const { return a_; }
  const Vec2& p1() const { return b_; }
  double t0() const { return t0_; }
  double t1() const { return t1_; }

  // gamma(t); throws if t is outside the parameter interval (tol 1e-12).
  Vec2 point(double t) const;
  // d(gamma)/dt; nonzero by the curve invariants.
  Vec2 derivative(double t) const;

 private:
  ParametrizedCurve() = default;
  void check_param(double t) const;

  Kind kind_ = Kind::Segment;
  Vec2 a_ = Vec2::Zero();  // center (arc) or start point (segment)
  Vec2 b_ = Vec2::Zero();  // end point (segment)
  double radius_ = 0.0;
  double t0_ = 0.0, t1_ = 1.0;
};

/// gamma(t) and dgamma/dt(t), range-checked.
std::pair<Vec2, Vec2> eval_curve(const ParametrizedCurve& curve, double t);

}  // namespace curvem

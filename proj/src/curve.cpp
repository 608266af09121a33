#include "curvem/curve.hpp"

#include <cmath>
#include <stdexcept>

namespace curvem {

ParametrizedCurve ParametrizedCurve::circle_arc(const Vec2& center,
                                                double radius, double t0,
                                                double t1) {
  if (!(radius > 0.0)) throw std::invalid_argument("circle arc: radius <= 0");
  if (std::abs(t1 - t0) >= 2.0 * M_PI + 1e-12)
    throw std::invalid_argument("circle arc: |t1-t0| >= 2*pi (not injective)");
  if (t1 == t0) throw std::invalid_argument("circle arc: empty interval");
  ParametrizedCurve c;
  c.kind_ = Kind::CircleArc;
  c.a_ = center;
  c.radius_ = radius;
  c.t0_ = std::min(t0, t1);
  c.t1_ = std::max(t0, t1);
  return c;
}

ParametrizedCurve ParametrizedCurve::full_circle(const Vec2& center,
                                                 double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("circle: radius <= 0");
  ParametrizedCurve c;
  c.kind_ = Kind::CircleArc;
  c.a_ = center;
  c.radius_ = radius;
  // Generous interval so edges may use angles in (-2*pi, 2*pi].
  c.t0_ = -2.0 * M_PI - 1e-9;
  c.t1_ = 2.0 * M_PI + 1e-9;
  return c;
}

ParametrizedCurve ParametrizedCurve::segment(const Vec2& p0, const Vec2& p1) {
  if ((p1 - p0).norm() == 0.0)
    throw std::invalid_argument("segment: p0 == p1");
  ParametrizedCurve c;
  c.kind_ = Kind::Segment;
  c.a_ = p0;
  c.b_ = p1;
  c.t0_ = 0.0;
  c.t1_ = 1.0;
  return c;
}

void ParametrizedCurve::check_param(double t) const {
  const double span = t1_ - t0_;
  const double tol = 1e-12 * std::max(1.0, std::abs(span));
  if (t < t0_ - tol || t > t1_ + tol)
    throw std::out_of_range("curve parameter out of range");
}

Vec2 ParametrizedCurve::point(double t) const {
  check_param(t);
  if (kind_ == Kind::CircleArc)
    return a_ + radius_ * Vec2(std::cos(t), std::sin(t));
  return a_ + t * (b_ - a_);
}

Vec2 ParametrizedCurve::derivative(double t) const {
  check_param(t);
  if (kind_ == Kind::CircleArc)
    return radius_ * Vec2(-std::sin(t), std::cos(t));
  return b_ - a_;
}

std::pair<Vec2, Vec2> eval_curve(const ParametrizedCurve& curve, double t) {
  return {curve.point(t), curve.derivative(t)};
}

}  // namespace curvem

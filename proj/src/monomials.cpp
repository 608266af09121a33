#include "curvem/monomials.hpp"

namespace curvem {

std::pair<int, int> MonomialBasis::exponent(int idx) {
  int d = 0;
  while ((d + 1) * (d + 2) / 2 <= idx) ++d;
  const int b = idx - d * (d + 1) / 2;
  return {d - b, b};
}

Eigen::VectorXd MonomialBasis::eval(const Vec2& x) const {
  const double X = (x.x() - xb.x()) / h;
  const double Y = (x.y() - xb.y()) / h;
  Eigen::VectorXd m(size());
  // Powers accumulated degree by degree: m(a,b) = m(a,b-1)*Y or m(a-1,0)*X.
  m[0] = 1.0;
  for (int d = 1; d <= degree; ++d) {
    m[index(d, 0)] = m[index(d - 1, 0)] * X;
    for (int b = 1; b <= d; ++b) m[index(d - b, b)] = m[index(d - b, b - 1)] * Y;
  }
  return m;
}

void MonomialBasis::eval_grad(const Vec2& x, Eigen::VectorXd& gx,
                              Eigen::VectorXd& gy) const {
  const Eigen::VectorXd m = eval(x);
  gx.setZero(size());
  gy.setZero(size());
  for (int i = 1; i < size(); ++i) {
    const auto [a, b] = exponent(i);
    if (a > 0) gx[i] = a / h * m[index(a - 1, b)];
    if (b > 0) gy[i] = b / h * m[index(a, b - 1)];
  }
}

}  // namespace curvem

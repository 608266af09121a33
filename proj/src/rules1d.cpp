#include "curvem/rules1d.hpp"

#include <cmath>
#include <stdexcept>

namespace curvem {

namespace {

// Legendre polynomial P_n and its derivative at x by the three-term
// recurrence.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int j = 2; j <= n; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

Rule1D gauss_legendre(int npts) {
  if (npts < 1) throw std::invalid_argument("gauss_legendre: npts < 1");
  Rule1D rule;
  rule.points.resize(npts);
  rule.weights.resize(npts);
  rule.exactness = 2 * npts - 1;
  if (npts == 1) {
    rule.points[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }
  for (int i = 0; i < npts; ++i) {
    // Chebyshev initial guess, refined by Newton to ~1e-15.
    double x = std::cos(M_PI * (i + 0.75) / (npts + 0.5));
    double p, dp;
    for (int it = 0; it < 100; ++it) {
      legendre(npts, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(npts, x, p, dp);
    rule.points[npts - 1 - i] = x;
    rule.weights[npts - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

Rule1D gauss_lobatto(int npts) {
  if (npts < 2) throw std::invalid_argument("gauss_lobatto: npts < 2");
  const int n = npts - 1;
  Rule1D rule;
  rule.points.resize(npts);
  rule.weights.resize(npts);
  rule.exactness = 2 * npts - 3;
  rule.points[0] = -1.0;
  rule.points[npts - 1] = 1.0;
  const double wend = 2.0 / (n * (n + 1.0));
  rule.weights[0] = rule.weights[npts - 1] = wend;
  // Interior nodes: roots of P'_n. Newton using
  // (1-x^2) P''_n = 2 x P'_n - n(n+1) P_n.
  for (int i = 1; i < npts - 1; ++i) {
    double x = std::cos(M_PI * (npts - 1 - i) / n);
    double p, dp;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      const double ddp = (2.0 * x * dp - n * (n + 1.0) * p) / (1.0 - x * x);
      const double dx = dp / ddp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(n, x, p, dp);
    rule.points[i] = x;
    rule.weights[i] = 2.0 / (n * (n + 1.0) * p * p);
  }
  return rule;
}

Rule1D gauss_rule_1d(int npts, RuleKind kind) {
  return kind == RuleKind::Legendre ? gauss_legendre(npts)
                                    : gauss_lobatto(npts);
}

}  // namespace curvem

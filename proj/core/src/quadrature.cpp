#include "xfem/quadrature.hpp"

#include <cmath>

namespace xfem {

GaussLegendre1D gauss_legendre(int n) {
  if (n < 1) throw ValidationError("quadrature", "Gauss-Legendre rule needs at least one point");
  GaussLegendre1D rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess for the i-th root of P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      // p1 = P_n(x), p0 = P_{n-1}(x)
      dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      // recompute derivative at the converged root
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = -x;
    rule.points[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.0;
  return rule;
}

QuadratureRule tensor_gauss_rule(int points_per_axis) {
  const GaussLegendre1D line = gauss_legendre(points_per_axis);
  QuadratureRule rule;
  rule.points_per_axis = points_per_axis;
  rule.points.reserve(static_cast<std::size_t>(points_per_axis * points_per_axis));
  rule.weights.reserve(rule.points.capacity());
  for (int j = 0; j < points_per_axis; ++j) {
    for (int i = 0; i < points_per_axis; ++i) {
      rule.points.emplace_back(line.points[i], line.points[j]);
      rule.weights.push_back(line.weights[i] * line.weights[j]);
    }
  }
  return rule;
}

QuadratureRule gauss_rule(int points_target) {
  if (points_target < 1) throw ValidationError("quadrature", "point target must be >= 1");
  int n = 1;
  while (n * n < points_target) ++n;
  return tensor_gauss_rule(n);
}

QuadratureRule split_rule(const QuadratureRule& base, const Vec2& at, double tol) {
  auto cuts = [&](double c) {
    std::vector<double> v{-1.0};
    if (std::abs(c) < 1.0 - tol) v.push_back(c);
    v.push_back(1.0);
    return v;
  };
  const auto xs = cuts(at.x());
  const auto ys = cuts(at.y());
  QuadratureRule out;
  out.points_per_axis = base.points_per_axis;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
      const double hx = 0.5 * (xs[i + 1] - xs[i]);
      const double hy = 0.5 * (ys[j + 1] - ys[j]);
      const double cx = 0.5 * (xs[i + 1] + xs[i]);
      const double cy = 0.5 * (ys[j + 1] + ys[j]);
      for (std::size_t q = 0; q < base.size(); ++q) {
        out.points.emplace_back(cx + hx * base.points[q].x(), cy + hy * base.points[q].y());
        out.weights.push_back(base.weights[q] * hx * hy);
      }
    }
  }
  return out;
}

}  // namespace xfem

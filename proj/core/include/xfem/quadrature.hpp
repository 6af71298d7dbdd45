#pragma once

#include <vector>

#include "xfem/common.hpp"

namespace xfem {

/// Points and weights of a 1D Gauss-Legendre rule on [-1, 1].
struct GaussLegendre1D {
  std::vector<double> points;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, computed by Newton iteration on P_n.
GaussLegendre1D gauss_legendre(int n);

/// Tensor-product rule on the reference square [-1,1]^2.
struct QuadratureRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
  int points_per_axis = 0;

  std::size_t size() const { return points.size(); }
  /// Highest per-variable polynomial degree integrated exactly.
  int degree() const { return 2 * points_per_axis - 1; }
};

/// The rule repeated on the sub-rectangles of [-1,1]^2 cut by the lines
/// xi = at.x() and eta = at.y(); a line within `tol` of the boundary is not cut.
QuadratureRule split_rule(const QuadratureRule& base, const Vec2& at, double tol = 1e-9);

/// n x n tensor-product Gauss-Legendre rule.
QuadratureRule tensor_gauss_rule(int points_per_axis);

/// Smallest tensor-product Gauss-Legendre rule with at least `points_target`
/// points (35 -> 6x6, 40 -> 7x7).
QuadratureRule gauss_rule(int points_target);

}  // namespace xfem

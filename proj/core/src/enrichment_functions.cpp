#include "xfem/enrichment_functions.hpp"

#include <cmath>

namespace xfem {

BranchEval branch_eval(double r, double theta) {
  if (!(r > 0.0)) throw GeometryError("enrichment", "branch functions are singular at the crack tip (r = 0)");
  const double sr = std::sqrt(r);
  const double s2 = std::sin(0.5 * theta);
  const double c2 = std::cos(0.5 * theta);
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  BranchEval out;
  out.values = {sr * s2, sr * c2, sr * s2 * s, sr * c2 * s};
  // d/dtheta
  const std::array<double, 4> dt = {0.5 * sr * c2, -0.5 * sr * s2, sr * (0.5 * c2 * s + s2 * c),
                                    sr * (-0.5 * s2 * s + c2 * c)};
  for (int j = 0; j < 4; ++j) {
    const double dr = out.values[j] / (2.0 * r);
    out.gradients[j] = Vec2(c * dr - s / r * dt[j], s * dr + c / r * dt[j]);
  }
  return out;
}

BranchEval branch_eval(const TipFrame& frame, const Polar& p) {
  BranchEval out = branch_eval(p.r, p.theta);
  for (auto& g : out.gradients) g = g.x() * frame.tangent + g.y() * frame.normal;
  return out;
}

}  // namespace xfem

#pragma once

#include <array>

#include "xfem/crack.hpp"

namespace xfem {

/// heaviside(phi) - node_sign; vanishes at the owning node.
inline int shifted_heaviside(int node_sign, double phi) { return heaviside(phi) - node_sign; }

/// Branch functions sqrt(r) {sin(t/2), cos(t/2), sin(t/2) sin t, cos(t/2) sin t}.
struct BranchEval {
  std::array<double, 4> values{};
  std::array<Vec2, 4> gradients{};  ///< tip-local Cartesian (x', y') unless rotated
};

/// Values and tip-local gradients at (r, theta). Throws for r <= 0.
BranchEval branch_eval(double r, double theta);

/// Same, with gradients rotated to global coordinates by the tip frame.
BranchEval branch_eval(const TipFrame& frame, const Polar& p);

}  // namespace xfem

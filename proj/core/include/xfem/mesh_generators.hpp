#pragma once

#include <vector>

#include "xfem/mesh.hpp"

namespace xfem {

enum class AnchorMode { CellCenter, Node };

/// Grading along one axis: uniform spacing `fine_size` over [fine_lo, fine_hi]
/// aligned so that `anchor` is a cell centre or a node, then geometric growth
/// towards the domain ends, capped at `max_size`.
struct AxisGrading {
  double lo = 0.0;
  double hi = 1.0;
  double fine_lo = 0.0;
  double fine_hi = 1.0;
  double fine_size = 0.1;
  double growth = 1.2;
  double max_size = 1.0;
  double anchor = 0.0;
  AnchorMode anchor_mode = AnchorMode::CellCenter;
};

std::vector<double> graded_axis(const AxisGrading& g);

/// Tensor-product mesh over the given axis coordinates with boundary tags
/// `bottom`, `top`, `left`, `right`, plus single-node corner tags
/// `bottom_left`, `bottom_right`, `top_left`, `top_right`.
Mesh tensor_mesh(const std::vector<double>& xs, const std::vector<double>& ys);

/// Uniform nx by ny grid over [x0,x1] x [y0,y1].
Mesh structured_mesh(double x0, double x1, double y0, double y1, std::size_t nx, std::size_t ny);

Mesh graded_plate(const AxisGrading& x, const AxisGrading& y);

struct Hole {
  Vec2 center = Vec2::Zero();
  double radius = 0.0;
};

/// Uniform grid of square cells of size `cell` with circular holes. Each hole
/// replaces an odd k x k block of cells centred on the hole by an O-grid whose
/// rays end on the block boundary nodes. Hole centres must sit at cell
/// centres. Hole boundaries are tagged `hole1`, `hole2`, ...
Mesh holed_plate(double x0, double x1, double y0, double y1, double cell, const std::vector<Hole>& holes);

}  // namespace xfem

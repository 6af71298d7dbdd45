#pragma once

#include <vector>

#include <Eigen/Core>

#include "xfem/dof_layout.hpp"
#include "xfem/enrichment_map.hpp"
#include "xfem/material.hpp"
#include "xfem/mesh.hpp"

namespace xfem {

/// One scalar basis function at a point; it multiplies DOFs `dof` (x) and
/// `dof + 1` (y).
struct BasisTerm {
  std::size_t dof = 0;
  double value = 0.0;
  Vec2 grad = Vec2::Zero();
};

/// Forces the side of one crack (by index into the map's cracks) when
/// evaluating Heaviside and branch functions; used to take face limits.
struct SideOverride {
  int crack = -1;
  int side = 0;
};

struct PointBasis {
  Vec2 x = Vec2::Zero();
  double jacobian_det = 0.0;
  std::array<double, 4> shape{};
  std::vector<BasisTerm> terms;
  /// Crack side seen at x by each Heaviside node of the element (0 otherwise).
  std::array<int, 4> side{};
};

/// Standard and enriched basis functions of element e at a local point.
void enriched_basis(const Mesh& mesh, const EnrichmentMap& map, const DofLayout& layout, ElementIndex e,
                    const Vec2& local, PointBasis& out, SideOverride override = {});

/// The solved fields: nodal coefficients of the standard, Heaviside and tip
/// parts, stored in one vector ordered by the DOF layout.
struct SolutionState {
  EnrichmentMap map;
  DofLayout layout;
  Eigen::VectorXd coefficients;
  double load_factor = 1.0;

  /// Standard nodal displacement of node n.
  Vec2 u_cont(NodeIndex n) const { return {coefficients[2 * n], coefficients[2 * n + 1]}; }
};

struct PointField {
  Vec2 u = Vec2::Zero();
  Mat2 grad = Mat2::Zero();  ///< grad(i, j) = d u_i / d x_j
};

PointField evaluate_field(const Mesh& mesh, const SolutionState& state, ElementIndex e, const Vec2& local,
                          SideOverride override = {});

/// Throws GeometryError when x lies outside the mesh.
PointField evaluate_field(const Mesh& mesh, const SolutionState& state, const Vec2& x, SideOverride override = {});

Vec2 total_displacement(const Mesh& mesh, const SolutionState& state, const Vec2& x, SideOverride override = {});

/// Small strain (engineering shear) from a displacement gradient.
inline Voigt strain_of(const Mat2& g) { return {g(0, 0), g(1, 1), g(0, 1) + g(1, 0)}; }

struct StrainStress {
  Voigt strain = Voigt::Zero();
  Voigt stress = Voigt::Zero();
};

StrainStress stress_strain_at(const Mesh& mesh, const SolutionState& state, const Material& material, const Vec2& x,
                              SideOverride override = {});

/// Normal displacement jump (u+ - u-) . n across crack `crack` (index into
/// the map's cracks) at a point on it; n is the positive-side normal.
double crack_opening(const Mesh& mesh, const SolutionState& state, int crack, const Vec2& x_on_crack);

}  // namespace xfem

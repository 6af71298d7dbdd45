#pragma once

#include "xfem/common.hpp"

namespace xfem {

enum class PlaneState { Strain, Stress };

struct Material {
  double E = 1.0;
  double nu = 0.0;
  PlaneState state = PlaneState::Strain;
  Vec2 body_force = Vec2::Zero();

  /// Throws ValidationError unless E > 0 and -1 < nu < 0.5.
  void validate() const;
  double shear_modulus() const { return E / (2.0 * (1.0 + nu)); }
  /// Kolosov constant.
  double kappa() const { return state == PlaneState::Strain ? 3.0 - 4.0 * nu : (3.0 - nu) / (1.0 + nu); }
  /// Effective modulus relating J to the stress intensity factors.
  double e_prime() const { return state == PlaneState::Strain ? E / (1.0 - nu * nu) : E; }

  friend bool operator==(const Material&, const Material&) = default;
};

/// Isotropic constitutive matrix in Voigt form (engineering shear strain).
Mat3 elasticity_matrix(const Material& m);

/// Out-of-plane stress: nu (sxx + syy) in plane strain, 0 in plane stress.
double sigma_zz(const Material& m, const Voigt& stress);
double von_mises(const Material& m, const Voigt& stress);

}  // namespace xfem

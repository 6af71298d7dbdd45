#include "xfem/material.hpp"

#include <cmath>

namespace xfem {

void Material::validate() const {
  if (!(E > 0.0) || !std::isfinite(E)) throw ValidationError("material", "Young's modulus E must be positive");
  if (!(nu > -1.0 && nu < 0.5)) throw ValidationError("material", "Poisson ratio must satisfy -1 < nu < 0.5");
  if (!body_force.allFinite()) throw ValidationError("material", "body force must be finite");
}

Mat3 elasticity_matrix(const Material& m) {
  m.validate();
  Mat3 d = Mat3::Zero();
  if (m.state == PlaneState::Strain) {
    const double f = m.E / ((1.0 + m.nu) * (1.0 - 2.0 * m.nu));
    d << 1.0 - m.nu, m.nu, 0.0, m.nu, 1.0 - m.nu, 0.0, 0.0, 0.0, 0.5 * (1.0 - 2.0 * m.nu);
    d *= f;
  } else {
    const double f = m.E / (1.0 - m.nu * m.nu);
    d << 1.0, m.nu, 0.0, m.nu, 1.0, 0.0, 0.0, 0.0, 0.5 * (1.0 - m.nu);
    d *= f;
  }
  return d;
}

double sigma_zz(const Material& m, const Voigt& s) {
  return m.state == PlaneState::Strain ? m.nu * (s(0) + s(1)) : 0.0;
}

double von_mises(const Material& m, const Voigt& s) {
  const double sz = sigma_zz(m, s);
  const double a = s(0) - s(1);
  const double b = s(1) - sz;
  const double c = sz - s(0);
  return std::sqrt(0.5 * (a * a + b * b + c * c) + 3.0 * s(2) * s(2));
}

}  // namespace xfem

#include "xfem/fracture.hpp"

#include <algorithm>
#include <cmath>

namespace xfem {

AuxiliaryField auxiliary_fields(Mode mode, double r, double theta, const Material& material) {
  if (!(r > 0.0)) throw GeometryError("auxiliary", "auxiliary fields are singular at the tip (r = 0)");
  const double mu = material.shear_modulus();
  const double kappa = material.kappa();
  const double s2 = std::sin(0.5 * theta);
  const double c2 = std::cos(0.5 * theta);
  const double s32 = std::sin(1.5 * theta);
  const double c32 = std::cos(1.5 * theta);
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double f = 1.0 / std::sqrt(2.0 * kPi * r);
  const double A = std::sqrt(r / (2.0 * kPi)) / (2.0 * mu);

  AuxiliaryField out;
  Vec2 du_dtheta;
  if (mode == Mode::I) {
    out.stress = f * Voigt(c2 * (1.0 - s2 * s32), c2 * (1.0 + s2 * s32), s2 * c2 * c32);
    out.u = A * Vec2(c2 * (kappa - 1.0 + 2.0 * s2 * s2), s2 * (kappa + 1.0 - 2.0 * c2 * c2));
    du_dtheta = A * Vec2(-0.5 * s2 * (kappa - 1.0 + 2.0 * s2 * s2) + 2.0 * s2 * c2 * c2,
                         0.5 * c2 * (kappa + 1.0 - 2.0 * c2 * c2) + 2.0 * s2 * s2 * c2);
  } else {
    out.stress = f * Voigt(-s2 * (2.0 + c2 * c32), s2 * c2 * c32, c2 * (1.0 - s2 * s32));
    out.u = A * Vec2(s2 * (kappa + 1.0 + 2.0 * c2 * c2), -c2 * (kappa - 1.0 - 2.0 * s2 * s2));
    du_dtheta = A * Vec2(0.5 * c2 * (kappa + 1.0 + 2.0 * c2 * c2) - 2.0 * s2 * s2 * c2,
                         0.5 * s2 * (kappa - 1.0 - 2.0 * s2 * s2) + 2.0 * s2 * c2 * c2);
  }
  const Vec2 du_dr = out.u / (2.0 * r);
  out.grad.col(0) = ct * du_dr - st / r * du_dtheta;
  out.grad.col(1) = st * du_dr + ct / r * du_dtheta;
  return out;
}

namespace {

Mat2 tensor_of(const Voigt& s) {
  Mat2 t;
  t << s(0), s(2), s(2), s(1);
  return t;
}

}  // namespace

double interaction_integral(const FieldSampler& actual, Mode aux_mode, const ContourSpec& contour,
                            const Material& material, const PolarMap& polar, const FaceDistance& faces) {
  if (!(contour.radius > 0.0)) throw ValidationError("contour", "contour radius must be positive");
  if (contour.n_points < 32) throw ValidationError("contour", "contour needs at least 32 points");
  const TipFrame& f = contour.tip;
  const Mat2 R = f.rotation();
  const int n = contour.n_points;
  const double dalpha = 2.0 * kPi / n;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    double alpha = -kPi + (k + 0.5) * dalpha;
    Vec2 x = f.to_global(contour.radius * Vec2(std::cos(alpha), std::sin(alpha)));
    if (faces) {
      int tries = 0;
      while (faces(x) < 1e-9) {
        if (++tries > 8) throw GeometryError("contour", "contour sample cannot be moved off a crack face");
        alpha += (tries % 2 ? 1.0 : -1.0) * 1e-3 * tries * dalpha;
        x = f.to_global(contour.radius * Vec2(std::cos(alpha), std::sin(alpha)));
      }
    }
    const Vec2 nrm(std::cos(alpha), std::sin(alpha));
    const FieldSample s = actual(x);
    const Mat2 sig1 = R.transpose() * tensor_of(s.stress) * R;
    const Mat2 g1 = R.transpose() * s.grad * R;
    const Polar p = polar ? polar(x) : tip_local_coords(f, x);
    const AuxiliaryField aux = auxiliary_fields(aux_mode, p.r, p.theta, material);
    const Mat2 sig2 = tensor_of(aux.stress);
    const Mat2& g2 = aux.grad;
    const double w12 = (sig1.cwiseProduct(g2)).sum();
    double term = w12 * nrm.x();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) term -= (sig1(i, j) * g2(i, 0) + sig2(i, j) * g1(i, 0)) * nrm(j);
    sum += term;
  }
  return sum * contour.radius * dalpha;
}

SifPair extract_sifs(double I1, double I2, const Material& m) {
  const double ep = m.e_prime();
  return {0.5 * ep * I1, 0.5 * ep * I2};
}

double j_integral(double K_I, double K_II, const Material& m) { return (K_I * K_I + K_II * K_II) / m.e_prime(); }

double propagation_angle(double K_I, double K_II) {
  if (K_I == 0.0 && K_II == 0.0) throw ValidationError("propagation", "kink angle undefined for zero SIFs");
  if (K_II == 0.0) return 0.0;
  const double k1 = K_I * K_I;
  const double k2 = K_II * K_II;
  const double c = (3.0 * k2 + std::sqrt(k1 * k1 + 8.0 * k1 * k2)) / (k1 + 9.0 * k2);
  const double mag = std::acos(std::clamp(c, -1.0, 1.0));
  return K_II > 0.0 ? -mag : mag;
}

double equivalent_sif(double K_I, double K_II, double theta_c) {
  const double c = std::cos(0.5 * theta_c);
  return c * (K_I * c * c - 1.5 * K_II * std::sin(theta_c));
}

}  // namespace xfem

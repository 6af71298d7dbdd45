#pragma once

#include <functional>

#include "xfem/crack.hpp"
#include "xfem/material.hpp"

namespace xfem {

enum class Mode { I, II };

/// Unit-SIF near-tip field in the tip frame.
struct AuxiliaryField {
  Voigt stress = Voigt::Zero();  ///< (s11, s22, s12), local axes
  Mat2 grad = Mat2::Zero();      ///< d u_i / d x'_j
  Vec2 u = Vec2::Zero();
};

/// Williams near-tip field for K = 1 Pa sqrt(m). Throws for r <= 0.
AuxiliaryField auxiliary_fields(Mode mode, double r, double theta, const Material& material);

/// Actual stress (global Voigt) and displacement gradient at a point.
struct FieldSample {
  Voigt stress = Voigt::Zero();
  Mat2 grad = Mat2::Zero();
};
using FieldSampler = std::function<FieldSample(const Vec2&)>;
using PolarMap = std::function<Polar(const Vec2&)>;
/// Distance from a point to the nearest crack face; used to keep samples off faces.
using FaceDistance = std::function<double(const Vec2&)>;

struct ContourSpec {
  TipFrame tip;
  double radius = 0.0;
  int n_points = 128;
};

/// Path form of the interaction integral on a circle around the tip, with the
/// actual fields rotated into the tip frame. `polar` supplies the auxiliary
/// field coordinates (defaults to the straight tip frame).
double interaction_integral(const FieldSampler& actual, Mode aux_mode, const ContourSpec& contour,
                            const Material& material, const PolarMap& polar = {}, const FaceDistance& faces = {});

struct SifPair {
  double K_I = 0.0;
  double K_II = 0.0;
};

SifPair extract_sifs(double I_mode1, double I_mode2, const Material& material);
double j_integral(double K_I, double K_II, const Material& material);
/// Maximum hoop stress kink angle, sign opposite to K_II. Throws when both
/// factors vanish.
double propagation_angle(double K_I, double K_II);
/// Equivalent mode-I factor at the kink angle.
double equivalent_sif(double K_I, double K_II, double theta_c);

struct SifResult {
  int crack_id = 0;
  TipEnd tip = TipEnd::End;
  double load_factor = 1.0;
  double K_I = 0.0;
  double K_II = 0.0;
  double J = 0.0;
  double theta_c = 0.0;
  double a_eff = 0.0;
  double radius = 0.0;
  Vec2 position = Vec2::Zero();
};

}  // namespace xfem

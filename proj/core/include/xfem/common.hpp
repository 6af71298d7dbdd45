#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <Eigen/LU>

namespace xfem {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
/// Voigt ordering (xx, yy, xy). Strains carry engineering shear.
using Voigt = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

using NodeIndex = std::size_t;
using ElementIndex = std::size_t;

inline constexpr double kPi = 3.14159265358979323846;

/// Base of all errors raised by the library. `stage()` names the pipeline
/// stage ("mesh", "classify", "assemble", "solve", ...) for diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string stage, const std::string& what)
      : std::runtime_error(what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Malformed input: documents, configs, out-of-range parameters.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Geometric inconsistency: degenerate elements, invalid cracks, points
/// outside the mesh, unsupported crack configurations.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Linear solver failure (singular or indefinite system, residual too large).
class SolverError : public Error {
 public:
  using Error::Error;
};

inline Vec2 rotate90(const Vec2& v) { return {-v.y(), v.x()}; }

inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace xfem

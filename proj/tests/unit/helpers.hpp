#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "xfem/config.hpp"
#include "xfem/driver.hpp"
#include "xfem/mesh_generators.hpp"

namespace xfem::test {

inline std::filesystem::path config_dir() { return XFEM_CONFIG_DIR; }

inline RunConfig load_shipped(const std::string& name) { return load_config_file(config_dir() / name); }

inline Material steel() { return {200e9, 0.3, PlaneState::Strain, Vec2::Zero()}; }

inline BoundaryCondition traction(const std::string& tag, double tx, double ty) {
  return {tag, BcType::Traction, {tx, ty}, true};
}
inline BoundaryCondition displacement(const std::string& tag, std::optional<double> ux, std::optional<double> uy) {
  return {tag, BcType::Displacement, {ux, uy}, true};
}
inline BoundaryCondition fixed(const std::string& tag) { return {tag, BcType::Fixed, {}, true}; }

/// Model on a given mesh with defaults matching an unconfigured run.
inline Model make_model(Mesh mesh, Material mat, std::vector<BoundaryCondition> bcs, bool tip = false) {
  Model m{std::move(mesh), mat, std::move(bcs), {}, {}, {}};
  m.enrichment.tip_enrichment = tip;
  m.enrichment.heaviside_rule = m.rules.heaviside;
  return m;
}

/// Bottom on rollers pinned at the left corner, traction on top.
inline std::vector<BoundaryCondition> tension_bcs(double sigma) {
  return {displacement("bottom", std::nullopt, 0.0), displacement("bottom_left", 0.0, 0.0),
          traction("top", 0.0, sigma)};
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline Vec2 random_point(std::mt19937_64& rng, double x0, double x1, double y0, double y1) {
  std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
  const double x = ux(rng);
  return {x, uy(rng)};
}

}  // namespace xfem::test

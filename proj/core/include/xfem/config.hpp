#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xfem/assembly.hpp"
#include "xfem/crack.hpp"
#include "xfem/material.hpp"
#include "xfem/mesh_generators.hpp"

namespace xfem {

enum class MeshSource { File, GradedPlate, HoledPlate };

struct MeshSpec {
  MeshSource source = MeshSource::File;
  std::filesystem::path path;  ///< resolved against the config directory
  std::array<double, 4> domain{};  ///< x0 x1 y0 y1
  // graded plate
  std::array<double, 4> fine_zone{};
  double fine_size = 0.0;
  double growth = 1.2;
  double max_size = 0.0;
  Vec2 anchor = Vec2::Zero();
  std::array<AnchorMode, 2> anchor_mode{AnchorMode::CellCenter, AnchorMode::CellCenter};
  // holed plate
  double cell_size = 0.0;
  std::vector<Hole> holes;

  bool operator==(const MeshSpec& o) const;
};

struct CrackSpec {
  int id = 0;
  std::vector<Vec2> vertices;
  std::array<bool, 2> tips{true, true};

  bool operator==(const CrackSpec& o) const { return id == o.id && tips == o.tips && vertices == o.vertices; }
};

enum class RadiusRule { Auto, Fixed, Factor, Elements };

struct ContourSettings {
  RadiusRule rule = RadiusRule::Auto;
  double value = 0.0;
  int n_points = 128;

  friend bool operator==(const ContourSettings&, const ContourSettings&) = default;
};

struct PropagationParams {
  double delta_a = 0.0;
  std::optional<double> K_IC;
  std::size_t max_increments = 0;

  friend bool operator==(const PropagationParams&, const PropagationParams&) = default;
};

struct OutputSettings {
  std::filesystem::path directory = "out";
  bool sif = true;
  bool cod = true;
  bool vtk = true;
  bool log = true;
  std::size_t cod_samples = 50;

  friend bool operator==(const OutputSettings&, const OutputSettings&) = default;
};

/// a/s ladder for the stationary centre-crack study.
struct SweepSettings {
  std::vector<double> a_over_s;
  double half_length = 0.0;

  friend bool operator==(const SweepSettings&, const SweepSettings&) = default;
};

/// Mesh ladder for the energy-norm study: fine-zone element sizes, the last
/// (smallest) one serves as reference.
struct LadderSettings {
  std::vector<double> element_sizes;
  std::optional<std::array<double, 4>> region;  ///< x0 x1 y0 y1, whole mesh when empty

  friend bool operator==(const LadderSettings&, const LadderSettings&) = default;
};

struct RunConfig {
  MeshSpec mesh;
  Material material;
  std::vector<CrackSpec> cracks;
  std::vector<BoundaryCondition> bcs;
  int quad_standard = 4;
  int quad_heaviside = 35;
  int quad_tip = 40;
  double delta = 0.002;
  bool tip_enrichment = false;
  ContourSettings contour;
  std::optional<PropagationParams> propagation;
  std::vector<double> load_factors{1.0};
  OutputSettings output;
  SweepSettings sweep;
  LadderSettings ladder;

  bool operator==(const RunConfig& o) const;
};

/// Parses and validates a config document. `base_dir` resolves relative
/// paths; boundary tags are checked against the mesh.
RunConfig parse_config(std::string_view document, const std::filesystem::path& base_dir = {});
RunConfig load_config_file(const std::filesystem::path& path);

/// Document that parses back to an equal config.
std::string serialize_config(const RunConfig& config);

/// Builds the mesh described by `spec`.
Mesh build_mesh(const MeshSpec& spec);

}  // namespace xfem

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "xfem/driver.hpp"

namespace xfem {

/// `step,load_factor,crack_id,tip_id,K_I,K_II,J,theta_c_deg,a_eff`, 9
/// significant digits, LF line endings.
std::string sif_csv(const RunHistory& history);
void write_sif_csv(const RunHistory& history, const std::filesystem::path& path);

struct CodProfile {
  std::size_t step = 0;
  int crack_id = 0;
  std::vector<CodSample> samples;
};

/// `step,crack_id,s,x,y,opening`.
std::string cod_csv(const std::vector<CodProfile>& profiles);
void write_cod_csv(const std::vector<CodProfile>& profiles, const std::filesystem::path& path);

/// Legacy ASCII VTK unstructured grid. Cut elements are split along the crack
/// chord into two polygons with duplicated face points. Point data: total
/// displacement; cell data: averaged sxx, syy, sxy and von Mises.
std::string field_dump(const Mesh& mesh, const SolutionState& state, const Material& material);
void write_field_dump(const Mesh& mesh, const SolutionState& state, const Material& material,
                      const std::filesystem::path& path);

/// key=value audit log: mesh stats, enriched node counts, DOFs and per-step
/// solver residuals.
std::string run_log(const Mesh& mesh, const RunHistory& history);
void write_text(const std::filesystem::path& path, const std::string& text);

/// History with a single step, for stationary runs.
RunHistory stationary_history(const StationaryResult& result);

}  // namespace xfem

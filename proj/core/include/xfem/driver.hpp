#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "xfem/config.hpp"
#include "xfem/field_evaluator.hpp"
#include "xfem/fracture.hpp"

namespace xfem {

/// Everything that stays fixed while cracks evolve.
struct Model {
  Mesh mesh;
  Material material;
  std::vector<BoundaryCondition> bcs;
  QuadratureSet rules;
  EnrichmentOptions enrichment;
  ContourSettings contour;
};

Model build_model(const RunConfig& config);
Model build_model(const RunConfig& config, Mesh mesh);
std::vector<CrackPath> build_cracks(const RunConfig& config);

struct SolveDiagnostics {
  std::size_t dofs = 0;
  std::size_t heaviside_nodes = 0;
  std::size_t tip_nodes = 0;
  std::size_t demoted_nodes = 0;
  std::size_t cut_elements = 0;
  int perturbation_rounds = 0;
  double residual = 0.0;
  double seconds = 0.0;
};

/// Classify, assemble and solve from scratch for the given crack set.
SolutionState solve_state(const Model& model, const std::vector<CrackPath>& cracks, double load_factor,
                          SolveDiagnostics* diagnostics = nullptr);

/// Contour radius for a tip per the configured rule.
double contour_radius(const Model& model, const EnrichmentMap& map, const TipRecord& tip);

/// SIFs of every live tip. Crack ids are those of the input cracks.
std::vector<SifResult> compute_sifs(const Model& model, const SolutionState& state);
SifResult compute_tip_sifs(const Model& model, const SolutionState& state, const TipRecord& tip, double radius);

struct StationaryResult {
  SolutionState state;
  std::vector<SifResult> sifs;
  SolveDiagnostics diagnostics;
  std::vector<CrackPath> cracks;
};

StationaryResult run_stationary(const Model& model, const std::vector<CrackPath>& cracks, double load_factor);
StationaryResult run_stationary(const RunConfig& config);

struct StepRecord {
  std::size_t step = 0;
  double load_factor = 0.0;
  std::vector<CrackPath> cracks;  ///< geometry used for this step's solve
  std::vector<SifResult> sifs;
  SolveDiagnostics diagnostics;
  std::vector<std::string> events;
};

struct RunHistory {
  std::vector<StepRecord> steps;
  std::optional<SolutionState> final_state;
  std::vector<CrackPath> final_cracks;
  bool aborted = false;
  std::string abort_reason;
};

RunHistory run_propagation(const Model& model, std::vector<CrackPath> cracks, const std::vector<double>& load_factors,
                           const PropagationParams& params);
RunHistory run_propagation(const RunConfig& config);

struct CodSample {
  double s = 0.0;
  Vec2 x = Vec2::Zero();
  double opening = 0.0;
};

/// Openings at n evenly spaced arc-length positions along crack `crack`
/// (index into the state's cracks). Samples outside the mesh are skipped.
std::vector<CodSample> cod_profile(const Mesh& mesh, const SolutionState& state, int crack, std::size_t n_samples);

using StrainField = std::function<Voigt(const Vec2&)>;

/// (1/|region|) sqrt( integral of (e - e_ref)^T D (e - e_ref) ) over the
/// elements whose centroid lies in the region (all when empty).
double energy_error_norm(const Mesh& mesh, const SolutionState& state, const Material& material,
                         const StrainField& reference, const std::optional<BoundingBox>& region = std::nullopt);

/// Strain of a solved state, evaluated by point location.
StrainField strain_field(const Mesh& mesh, const SolutionState& state);

struct SweepRow {
  double a_over_s = 0.0;
  bool tip_enrichment = false;
  double a_eff = 0.0;
  double K_I = 0.0;
  double K_exact = 0.0;  ///< sigma sqrt(pi a_eff) with the applied traction
  double error_percent = 0.0;
  double seconds = 0.0;
};

/// Centre-crack study over the configured a/s values, with and without tip
/// enrichment. The fine-zone size is half_length / (a/s).
std::vector<SweepRow> run_sweep(const RunConfig& config, double sigma);

struct LadderRung {
  double element_size = 0.0;
  double error = 0.0;
};

struct LadderResult {
  std::vector<LadderRung> rungs;  ///< excludes the reference
  double slope = 0.0;
  double r_squared = 0.0;
};

LadderResult run_ladder(const RunConfig& config);

/// Least-squares line through (log x, log y).
std::pair<double, double> loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace xfem

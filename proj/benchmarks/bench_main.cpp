#include <benchmark/benchmark.h>

#include <string>

#include "xfem/assembly.hpp"
#include "xfem/config.hpp"
#include "xfem/driver.hpp"
#include "xfem/enrichment_map.hpp"
#include "xfem/fracture.hpp"
#include "xfem/quadrature.hpp"
#include "xfem/solver.hpp"

using namespace xfem;

namespace {

// Centre crack with tips enriched, fine cells a / (a/s).
Model centre_model(double a_over_s) {
  RunConfig cfg = load_config_file(std::string(XFEM_CONFIG_DIR) + "/centre_crack.cfg");
  cfg.mesh.fine_size = 0.1 / a_over_s;
  return build_model(cfg);
}

std::vector<CrackPath> centre_crack() { return {CrackPath(1, {Vec2(-0.1, 0.0), Vec2(0.1, 0.0)})}; }

void BM_GaussRule(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(tensor_gauss_rule(n));
}
BENCHMARK(BM_GaussRule)->Arg(2)->Arg(6)->Arg(7)->Arg(12);

void BM_SplitRule(benchmark::State& st) {
  const QuadratureRule base = gauss_rule(40);
  for (auto _ : st) benchmark::DoNotOptimize(split_rule(base, Vec2(0.3, -0.2)));
}
BENCHMARK(BM_SplitRule);

void BM_Classify(benchmark::State& st) {
  const Model m = centre_model(static_cast<double>(st.range(0)) / 10.0);
  const auto cracks = centre_crack();
  for (auto _ : st) benchmark::DoNotOptimize(classify_enrichment(m.mesh, cracks, m.enrichment));
  st.counters["elements"] = static_cast<double>(m.mesh.element_count());
}
BENCHMARK(BM_Classify)->Arg(50)->Arg(125)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& st) {
  const Model m = centre_model(static_cast<double>(st.range(0)) / 10.0);
  const EnrichmentMap map = classify_enrichment(m.mesh, centre_crack(), m.enrichment);
  const DofLayout layout(m.mesh.node_count(), map);
  for (auto _ : st) benchmark::DoNotOptimize(assemble(m.mesh, map, layout, m.material, m.rules, m.bcs));
  st.counters["dofs"] = static_cast<double>(layout.total());
}
BENCHMARK(BM_Assemble)->Arg(50)->Arg(125)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& st) {
  const Model m = centre_model(static_cast<double>(st.range(0)) / 10.0);
  const EnrichmentMap map = classify_enrichment(m.mesh, centre_crack(), m.enrichment);
  const DofLayout layout(m.mesh.node_count(), map);
  const LinearSystem sys = apply_constraints(assemble(m.mesh, map, layout, m.material, m.rules, m.bcs));
  for (auto _ : st) benchmark::DoNotOptimize(solve(sys));
  st.counters["dofs"] = static_cast<double>(layout.total());
}
BENCHMARK(BM_Solve)->Arg(50)->Arg(125)->Unit(benchmark::kMillisecond);

void BM_Sifs(benchmark::State& st) {
  const Model m = centre_model(12.5);
  const SolutionState state = solve_state(m, centre_crack(), 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(compute_sifs(m, state));
}
BENCHMARK(BM_Sifs)->Unit(benchmark::kMillisecond);

void BM_StationaryRun(benchmark::State& st) {
  const Model m = centre_model(12.5);
  for (auto _ : st) benchmark::DoNotOptimize(run_stationary(m, centre_crack(), 1.0));
}
BENCHMARK(BM_StationaryRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include "xfem_tools/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>

#include "xfem/mesh_io.hpp"
#include "xfem/output.hpp"

namespace xfem::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config;
  std::string out;
  bool verbose = false;
};

void log_diag(std::ostream& err, const SolveDiagnostics& d) {
  err << "dofs=" << d.dofs << " heaviside=" << d.heaviside_nodes << " tip=" << d.tip_nodes
      << " demoted=" << d.demoted_nodes << " cut=" << d.cut_elements << " residual=" << d.residual
      << " seconds=" << d.seconds << "\n";
}

fs::path out_dir(const Options& o, const RunConfig& c) {
  fs::path dir = o.out.empty() ? c.output.directory : fs::path(o.out);
  fs::create_directories(dir);
  return dir;
}

std::vector<CodProfile> cod_profiles(const Mesh& mesh, const RunHistory& h, std::size_t samples) {
  std::vector<CodProfile> out;
  if (!h.final_state) return out;
  const auto& st = *h.final_state;
  for (std::size_t c = 0; c < st.map.cracks.size(); ++c) {
    CodProfile p;
    p.step = h.steps.empty() ? 0 : h.steps.back().step;
    p.crack_id = st.map.cracks[c].id();
    try {
      p.samples = cod_profile(mesh, st, static_cast<int>(c), samples);
    } catch (const GeometryError&) {
      continue;  // crack entirely outside the mesh
    }
    out.push_back(std::move(p));
  }
  return out;
}

void emit(const RunConfig& c, const Model& m, const RunHistory& h, const fs::path& dir) {
  if (c.output.sif && !h.steps.empty()) write_sif_csv(h, dir / "sif_history.csv");
  if (c.output.cod) write_cod_csv(cod_profiles(m.mesh, h, c.output.cod_samples), dir / "cod_profiles.csv");
  if (c.output.vtk && h.final_state) write_field_dump(m.mesh, *h.final_state, m.material, dir / "field.vtk");
  if (c.output.log) write_text(dir / "run.log", run_log(m.mesh, h));
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const RunConfig c = load_config_file(o.config);
  const Model m = build_model(c);
  const auto res = run_stationary(m, build_cracks(c), c.load_factors.back());
  if (o.verbose) log_diag(err, res.diagnostics);
  const RunHistory h = stationary_history(res);
  emit(c, m, h, out_dir(o, c));
  out << sif_csv(h);
  return 0;
}

int cmd_propagate(const Options& o, std::ostream& out, std::ostream& err) {
  const RunConfig c = load_config_file(o.config);
  if (!c.propagation) throw ValidationError("config", "propagate needs a [propagation] section");
  const Model m = build_model(c);
  const RunHistory h = run_propagation(m, build_cracks(c), c.load_factors, *c.propagation);
  if (o.verbose)
    for (const auto& s : h.steps) {
      err << "step " << s.step << " lf=" << s.load_factor << " ";
      log_diag(err, s.diagnostics);
      for (const auto& e : s.events) err << "  " << e << "\n";
    }
  emit(c, m, h, out_dir(o, c));
  out << "steps=" << h.steps.size() << "\n";
  if (h.aborted) {
    err << "solver: " << h.abort_reason << "\n";
    return 2;
  }
  return 0;
}

// Largest traction magnitude at full load: the remote stress of the study.
double remote_stress(const RunConfig& c) {
  double s = 0.0;
  for (const auto& bc : c.bcs)
    if (bc.type == BcType::Traction)
      for (const auto& v : bc.value)
        if (v) s = std::max(s, std::abs(*v));
  return s * c.load_factors.back();
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const RunConfig c = load_config_file(o.config);
  if (c.sweep.a_over_s.empty()) throw ValidationError("config", "sweep-table1 needs a [sweep] section");
  const double sigma = remote_stress(c);
  if (sigma <= 0.0) throw ValidationError("config", "sweep-table1 needs a traction boundary condition");
  const auto rows = run_sweep(c, sigma);
  std::string csv = "a_over_s,tip_enrichment,a_eff,K_I,K_exact,error_percent\n";
  char buf[256];
  out << "  a/s     a_eff      K_I w/o tip   err%      K_I w/ tip    err%\n";
  for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
    const auto& wo = rows[i].tip_enrichment ? rows[i + 1] : rows[i];
    const auto& w = rows[i].tip_enrichment ? rows[i] : rows[i + 1];
    std::snprintf(buf, sizeof buf, "%6.2f  %8.5f  %12.6g  %7.3f  %12.6g  %7.3f\n", wo.a_over_s, wo.a_eff, wo.K_I,
                  wo.error_percent, w.K_I, w.error_percent);
    out << buf;
  }
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.9g,%d,%.9g,%.9g,%.9g,%.9g\n", r.a_over_s, r.tip_enrichment ? 1 : 0, r.a_eff, r.K_I,
                  r.K_exact, r.error_percent);
    csv += buf;
    if (o.verbose) err << "a/s=" << r.a_over_s << " tip=" << r.tip_enrichment << " seconds=" << r.seconds << "\n";
  }
  write_text(out_dir(o, c) / "sweep_table1.csv", csv);
  return 0;
}

int cmd_converge(const Options& o, std::ostream& out, std::ostream&) {
  const RunConfig c = load_config_file(o.config);
  if (c.ladder.element_sizes.empty()) throw ValidationError("config", "converge needs a [ladder] section");
  const auto res = run_ladder(c);
  std::string csv = "element_size,energy_error\n";
  char buf[128];
  for (const auto& r : res.rungs) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g\n", r.element_size, r.error);
    csv += buf;
    out << "h=" << r.element_size << " error=" << r.error << "\n";
  }
  std::snprintf(buf, sizeof buf, "slope=%.4f r2=%.4f\n", res.slope, res.r_squared);
  out << buf;
  write_text(out_dir(o, c) / "convergence.csv", csv);
  return 0;
}

int cmd_meshgen(const Options& o, std::ostream& out, std::ostream&) {
  const RunConfig c = load_config_file(o.config);
  const Mesh mesh = build_mesh(c.mesh);
  const fs::path path = o.out.empty() ? fs::path("mesh.txt") : fs::path(o.out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_mesh_file(mesh, path);
  out << "nodes=" << mesh.node_count() << " elements=" << mesh.element_count() << "\n";
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"2D XFEM fracture solver"};
  app.require_subcommand(1);
  Options opt;
  auto add = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("--config", opt.config, "run configuration")->required();
    s->add_option("--out", opt.out, "output directory (file for meshgen)");
    s->add_flag("--verbose", opt.verbose, "diagnostics on stderr");
    return s;
  };
  auto* solve = add("solve", "stationary solve with all outputs");
  auto* prop = add("propagate", "quasi-static crack growth");
  auto* sweep = add("sweep-table1", "centre-crack a/s study with and without tip enrichment");
  auto* conv = add("converge", "energy-norm mesh ladder");
  auto* mgen = add("meshgen", "write the configured mesh to a file");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    if (*solve) return cmd_solve(opt, out, err);
    if (*prop) return cmd_propagate(opt, out, err);
    if (*sweep) return cmd_sweep(opt, out, err);
    if (*conv) return cmd_converge(opt, out, err);
    if (*mgen) return cmd_meshgen(opt, out, err);
  } catch (const ValidationError& e) {
    err << e.stage() << ": " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << e.stage() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "io: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace xfem::cli

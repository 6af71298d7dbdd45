#include "xfem/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "xfem/solver.hpp"

namespace xfem {
namespace {

using Clock = std::chrono::steady_clock;

double min_face_distance(const std::vector<CrackPath>& cracks, const Vec2& x) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& c : cracks) d = std::min(d, closest_point(c, x).distance);
  return d;
}

double local_element_size(const Mesh& mesh, const Vec2& x) {
  const auto loc = mesh.locate(x);
  if (!loc) return 0.0;
  return mesh.element_size(loc->element);
}

}  // namespace

Model build_model(const RunConfig& config) { return build_model(config, build_mesh(config.mesh)); }

Model build_model(const RunConfig& config, Mesh mesh) {
  config.material.validate();
  for (const auto& bc : config.bcs) {
    if (!mesh.has_tag(bc.tag)) throw ValidationError("config", "boundary tag '" + bc.tag + "' not found in mesh");
  }
  Model m{std::move(mesh), config.material, config.bcs, {}, {}, config.contour};
  m.rules.standard = gauss_rule(config.quad_standard);
  m.rules.heaviside = gauss_rule(config.quad_heaviside);
  m.rules.tip = gauss_rule(config.quad_tip);
  m.enrichment.delta = config.delta;
  m.enrichment.tip_enrichment = config.tip_enrichment;
  m.enrichment.heaviside_rule = m.rules.heaviside;
  return m;
}

std::vector<CrackPath> build_cracks(const RunConfig& config) {
  std::vector<CrackPath> out;
  out.reserve(config.cracks.size());
  for (const auto& c : config.cracks) out.emplace_back(c.id, c.vertices, c.tips);
  return out;
}

SolutionState solve_state(const Model& model, const std::vector<CrackPath>& cracks, double load_factor,
                          SolveDiagnostics* diagnostics) {
  const auto t0 = Clock::now();
  SolutionState state;
  state.load_factor = load_factor;
  state.map = classify_enrichment(model.mesh, cracks, model.enrichment);
  state.layout = DofLayout(model.mesh.node_count(), state.map);
  LinearSystem sys =
      assemble(model.mesh, state.map, state.layout, model.material, model.rules, model.bcs, load_factor);
  SolveResult res = solve_constrained(std::move(sys));
  state.coefficients = std::move(res.u);
  if (diagnostics) {
    diagnostics->dofs = state.layout.total();
    diagnostics->heaviside_nodes = state.map.heaviside_count();
    diagnostics->tip_nodes = state.map.tip_count();
    diagnostics->demoted_nodes = state.map.demoted_nodes;
    diagnostics->cut_elements = state.map.cut_elements.size();
    diagnostics->perturbation_rounds = state.map.perturbation_rounds;
    diagnostics->residual = res.residual;
    diagnostics->seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  }
  return state;
}

double contour_radius(const Model& model, const EnrichmentMap& map, const TipRecord& tip) {
  const Vec2& o = tip.frame.origin;
  double clearance = model.mesh.distance_to_boundary(o);
  for (std::size_t c = 0; c < map.cracks.size(); ++c) {
    if (static_cast<int>(c) == tip.crack) continue;
    clearance = std::min(clearance, closest_point(map.cracks[c], o).distance);
  }
  const double a = map.effective_half_length[tip.crack];
  double h = 0.0;
  for (ElementIndex e : tip.elements) h = std::max(h, model.mesh.element_size(e));
  const auto& rule = model.contour;
  double r = 0.0;
  switch (rule.rule) {
    case RadiusRule::Fixed:
      if (!(rule.value < clearance)) {
        throw ValidationError("contour", "fixed contour radius crosses the boundary or another crack");
      }
      return rule.value;
    case RadiusRule::Auto:
      r = a;
      break;
    case RadiusRule::Factor:
      r = rule.value * a;
      break;
    case RadiusRule::Elements:
      r = rule.value * h;
      break;
  }
  return std::min(r, 0.9 * clearance);
}

SifResult compute_tip_sifs(const Model& model, const SolutionState& state, const TipRecord& tip, double radius) {
  const Mesh& mesh = model.mesh;
  const Mat3 D = elasticity_matrix(model.material);
  const CrackPath& crack = state.map.cracks[tip.crack];
  FieldSampler sampler = [&](const Vec2& x) {
    const auto loc = mesh.locate(x);
    if (!loc) throw GeometryError("contour", "contour sample leaves the mesh");
    const PointField f = evaluate_field(mesh, state, loc->element, loc->local);
    return FieldSample{D * strain_of(f.grad), f.grad};
  };
  PolarMap polar = [&](const Vec2& x) { return tip_polar(crack, tip.end, x); };
  FaceDistance faces = [&](const Vec2& x) { return min_face_distance(state.map.cracks, x); };
  ContourSpec spec{tip.frame, radius, model.contour.n_points};
  const double i1 = interaction_integral(sampler, Mode::I, spec, model.material, polar, faces);
  const double i2 = interaction_integral(sampler, Mode::II, spec, model.material, polar, faces);
  const SifPair k = extract_sifs(i1, i2, model.material);
  SifResult r;
  r.crack_id = crack.id();
  r.tip = tip.end;
  r.load_factor = state.load_factor;
  r.K_I = k.K_I;
  r.K_II = k.K_II;
  r.J = j_integral(k.K_I, k.K_II, model.material);
  r.theta_c = (k.K_I == 0.0 && k.K_II == 0.0) ? 0.0 : propagation_angle(k.K_I, k.K_II);
  r.a_eff = state.map.effective_half_length[tip.crack];
  r.radius = radius;
  r.position = tip.frame.origin;
  return r;
}

std::vector<SifResult> compute_sifs(const Model& model, const SolutionState& state) {
  std::vector<SifResult> out;
  for (const auto& tip : state.map.tips) {
    out.push_back(compute_tip_sifs(model, state, tip, contour_radius(model, state.map, tip)));
  }
  return out;
}

StationaryResult run_stationary(const Model& model, const std::vector<CrackPath>& cracks, double load_factor) {
  StationaryResult r;
  r.cracks = cracks;
  r.state = solve_state(model, cracks, load_factor, &r.diagnostics);
  r.sifs = compute_sifs(model, r.state);
  return r;
}

StationaryResult run_stationary(const RunConfig& config) {
  const Model model = build_model(config);
  return run_stationary(model, build_cracks(config), config.load_factors.back());
}

RunHistory run_propagation(const Model& model, std::vector<CrackPath> cracks, const std::vector<double>& load_factors,
                           const PropagationParams& params) {
  if (!(params.delta_a > 0.0)) throw ValidationError("propagation", "delta_a must be positive");
  RunHistory history;
  std::vector<std::array<std::size_t, 2>> increments(cracks.size(), {0, 0});
  for (std::size_t step = 0; step < load_factors.size(); ++step) {
    StepRecord rec;
    rec.step = step;
    rec.load_factor = load_factors[step];
    rec.cracks = cracks;
    SolutionState state;
    try {
      state = solve_state(model, cracks, rec.load_factor, &rec.diagnostics);
    } catch (const SolverError& e) {
      history.aborted = true;
      history.abort_reason = std::string(e.stage()) + ": " + e.what();
      break;
    }
    rec.sifs = compute_sifs(model, state);

    // Grow tips that meet the criterion, at most once per step.
    std::vector<CrackPath> next = cracks;
    for (std::size_t t = 0; t < state.map.tips.size(); ++t) {
      const TipRecord& tip = state.map.tips[t];
      const SifResult& sif = rec.sifs[t];
      const std::size_t c = static_cast<std::size_t>(tip.crack);
      const int ti = tip_index(tip.end);
      const std::string who = "crack " + std::to_string(sif.crack_id) + " tip " + std::to_string(ti);
      if (increments[c][ti] >= params.max_increments) continue;
      if (params.K_IC && equivalent_sif(sif.K_I, sif.K_II, sif.theta_c) < *params.K_IC) continue;
      CrackPath grown = next[c];
      try {
        grown = extend_crack(next[c], tip.end, sif.theta_c, params.delta_a);
      } catch (const GeometryError& e) {
        rec.events.push_back(who + " extension refused (" + e.what() + "), tip deactivated");
        next[c] = next[c].with_tip_active(tip.end, false);
        continue;
      }
      ++increments[c][ti];
      const Vec2 p = grown.tip(tip.end);
      const Vec2 q = next[c].tip(tip.end);
      const double h = local_element_size(model.mesh, p);
      bool stop = h == 0.0 || model.mesh.distance_to_boundary(p) < h;
      for (std::size_t o = 0; o < next.size() && !stop; ++o) {
        if (o == c) continue;
        const auto& ov = next[o].vertices();
        for (std::size_t s = 0; s + 1 < ov.size(); ++s) {
          if (segment_segment_distance(q, p, ov[s], ov[s + 1]) < std::max(h, 1e-300)) stop = true;
        }
      }
      rec.events.push_back(who + " extended by " + std::to_string(params.delta_a) + " at theta_c " +
                           std::to_string(sif.theta_c));
      if (stop) {
        grown = grown.with_tip_active(tip.end, false);
        rec.events.push_back(who + " deactivated near the boundary or another crack");
      }
      next[c] = std::move(grown);
    }
    history.steps.push_back(std::move(rec));
    history.final_state = std::move(state);
    cracks = std::move(next);

    bool can_grow = false;
    for (std::size_t c = 0; c < cracks.size(); ++c)
      for (TipEnd e : {TipEnd::Start, TipEnd::End})
        if (cracks[c].tip_active(e) && increments[c][tip_index(e)] < params.max_increments) can_grow = true;
    if (!can_grow) break;
  }
  history.final_cracks = cracks;
  return history;
}

RunHistory run_propagation(const RunConfig& config) {
  if (!config.propagation) throw ValidationError("config", "missing section 'propagation'");
  const Model model = build_model(config);
  return run_propagation(model, build_cracks(config), config.load_factors, *config.propagation);
}

std::vector<CodSample> cod_profile(const Mesh& mesh, const SolutionState& state, int crack, std::size_t n_samples) {
  if (crack < 0 || static_cast<std::size_t>(crack) >= state.map.cracks.size()) {
    throw ValidationError("cod", "unknown crack index");
  }
  if (n_samples < 2) throw ValidationError("cod", "at least two samples are needed");
  const CrackPath& path = state.map.cracks[crack];
  bool has_cut = false;
  for (ElementIndex e : state.map.cut_elements) {
    const auto cs = state.map.element_cracks(mesh, e);
    if (std::find(cs.begin(), cs.end(), crack) != cs.end()) has_cut = true;
  }
  if (!has_cut) {
    // also accept cut elements whose enriched nodes were all demoted
    for (ElementIndex e : state.map.cut_elements) {
      const auto& v = path.vertices();
      for (std::size_t s = 0; s + 1 < v.size() && !has_cut; ++s) has_cut = clip_segment(mesh, e, v[s], v[s + 1]).length > 0.0;
    }
  }
  if (!has_cut) throw GeometryError("cod", "crack " + std::to_string(path.id()) + " does not cut any element");

  const auto& v = path.vertices();
  std::vector<double> cum(v.size(), 0.0);
  for (std::size_t i = 1; i < v.size(); ++i) cum[i] = cum[i - 1] + (v[i] - v[i - 1]).norm();
  const double L = cum.back();
  const double inset = 1e-9 * L;
  std::vector<CodSample> out;
  for (std::size_t k = 0; k < n_samples; ++k) {
    const double s = std::clamp(L * static_cast<double>(k) / static_cast<double>(n_samples - 1), inset, L - inset);
    const std::size_t seg =
        std::min<std::size_t>(static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), s) - cum.begin()) - 1,
                              v.size() - 2);
    const double t = (s - cum[seg]) / (cum[seg + 1] - cum[seg]);
    const Vec2 x = v[seg] + t * (v[seg + 1] - v[seg]);
    if (!mesh.locate(x)) continue;
    out.push_back({s, x, crack_opening(mesh, state, crack, x)});
  }
  return out;
}

StrainField strain_field(const Mesh& mesh, const SolutionState& state) {
  return [&mesh, &state](const Vec2& x) { return strain_of(evaluate_field(mesh, state, x).grad); };
}

double energy_error_norm(const Mesh& mesh, const SolutionState& state, const Material& material,
                         const StrainField& reference, const std::optional<BoundingBox>& region) {
  const Mat3 D = elasticity_matrix(material);
  const QuadratureRule plain = tensor_gauss_rule(6);
  const QuadratureRule enriched = tensor_gauss_rule(8);
  double energy = 0.0;
  double area = 0.0;
  for (ElementIndex e = 0; e < mesh.element_count(); ++e) {
    if (region && !region->contains(mesh.centroid(e))) continue;
    const bool has_enriched = std::any_of(mesh.element(e).begin(), mesh.element(e).end(), [&](NodeIndex n) {
      return state.map.node_status[n].kind != NodeKind::Standard;
    });
    const QuadratureRule& rule = has_enriched ? enriched : plain;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const ShapeEval se = mesh.shape_eval(e, rule.points[q]);
      const Vec2 x = mesh.map_to_physical(e, rule.points[q]);
      const Voigt diff = strain_of(evaluate_field(mesh, state, e, rule.points[q]).grad) - reference(x);
      const double w = rule.weights[q] * se.jacobian_det;
      energy += w * diff.dot(D * diff);
      area += w;
    }
  }
  if (area <= 0.0) throw ValidationError("energy", "error-norm region contains no elements");
  return std::sqrt(std::max(energy, 0.0)) / area;
}

std::pair<double, double> loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("fit", "need at least two points");
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log10(x[i]);
    ly[i] = std::log10(y[i]);
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  const double slope = sxy / sxx;
  const double r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return {slope, r2};
}

std::vector<SweepRow> run_sweep(const RunConfig& config, double sigma) {
  if (config.sweep.a_over_s.empty() || !(config.sweep.half_length > 0.0)) {
    throw ValidationError("config", "section 'sweep' needs a_over_s and half_length");
  }
  if (config.mesh.source != MeshSource::GradedPlate) {
    throw ValidationError("config", "the a/s sweep needs a graded_plate mesh generator");
  }
  std::vector<SweepRow> rows;
  for (double ratio : config.sweep.a_over_s) {
    RunConfig c = config;
    c.mesh.fine_size = config.sweep.half_length / ratio;
    const Mesh mesh = build_mesh(c.mesh);
    for (bool tip : {false, true}) {
      const auto t0 = Clock::now();
      c.tip_enrichment = tip;
      const Model model = build_model(c, mesh);
      const StationaryResult res = run_stationary(model, build_cracks(c), c.load_factors.back());
      if (res.sifs.empty()) throw ValidationError("sweep", "the sweep crack has no active tip");
      const SifResult& s = res.sifs.back();
      SweepRow row;
      row.a_over_s = ratio;
      row.tip_enrichment = tip;
      row.a_eff = s.a_eff;
      row.K_I = s.K_I;
      row.K_exact = sigma * c.load_factors.back() * std::sqrt(kPi * s.a_eff);
      row.error_percent = 100.0 * std::abs(row.K_I - row.K_exact) / row.K_exact;
      row.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
      rows.push_back(row);
    }
  }
  return rows;
}

LadderResult run_ladder(const RunConfig& config) {
  auto sizes = config.ladder.element_sizes;
  if (sizes.size() < 3) throw ValidationError("config", "ladder needs at least two rungs and a reference size");
  if (config.mesh.source != MeshSource::GradedPlate) {
    throw ValidationError("config", "the mesh ladder needs a graded_plate mesh generator");
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  std::optional<BoundingBox> region;
  if (config.ladder.region) {
    const auto& r = *config.ladder.region;
    region = BoundingBox{Vec2(r[0], r[2]), Vec2(r[1], r[3])};
  }
  auto solve_with = [&](double h, bool tip) {
    RunConfig c = config;
    c.tip_enrichment = tip;
    c.mesh.fine_size = h;
    c.mesh.max_size = std::max(c.mesh.max_size, h);
    Model model = build_model(c);
    SolutionState state = solve_state(model, build_cracks(c), c.load_factors.back());
    return std::make_pair(std::move(model), std::move(state));
  };
  // reference always carries the tip functions
  const auto reference = solve_with(sizes.back(), true);
  const StrainField ref = strain_field(reference.first.mesh, reference.second);
  LadderResult out;
  std::vector<double> hs, es;
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
    const auto rung = solve_with(sizes[i], config.tip_enrichment);
    const double err = energy_error_norm(rung.first.mesh, rung.second, config.material, ref, region);
    out.rungs.push_back({sizes[i], err});
    hs.push_back(sizes[i]);
    es.push_back(err);
  }
  std::tie(out.slope, out.r_squared) = loglog_fit(hs, es);
  return out;
}

}  // namespace xfem

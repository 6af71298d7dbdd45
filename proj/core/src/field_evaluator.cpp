#include "xfem/field_evaluator.hpp"

#include <cmath>
#include <limits>

#include "xfem/enrichment_functions.hpp"

namespace xfem {

void enriched_basis(const Mesh& mesh, const EnrichmentMap& map, const DofLayout& layout, ElementIndex e,
                    const Vec2& local, PointBasis& out, SideOverride override) {
  const ShapeEval se = mesh.shape_eval(e, local);
  const auto& el = mesh.element(e);
  out.x = mesh.map_to_physical(e, local);
  out.jacobian_det = se.jacobian_det;
  out.shape = se.values;
  out.terms.clear();
  out.side.fill(0);
  for (int i = 0; i < 4; ++i) out.terms.push_back({2 * el[i], se.values[i], se.gradients[i]});

  // Per-crack side and per-tip branch values are shared by the element's nodes.
  int side_crack = -2;
  int side_value = 0;
  int tip_crack = -2;
  TipEnd tip_end = TipEnd::End;
  BranchEval branch;
  for (int i = 0; i < 4; ++i) {
    const NodeIndex n = el[i];
    const NodeStatus& s = map.node_status[n];
    if (s.kind == NodeKind::Standard) continue;
    const std::size_t base = layout.enriched(n);
    if (s.kind == NodeKind::Heaviside) {
      if (s.crack != side_crack) {
        side_crack = s.crack;
        side_value = override.crack == s.crack && override.side != 0
                         ? override.side
                         : heaviside(signed_distance(map.cracks[s.crack], out.x));
      }
      out.side[i] = side_value;
      const double m = static_cast<double>(side_value - map.node_sign[n]);
      out.terms.push_back({base, m * se.values[i], m * se.gradients[i]});
    } else {
      if (s.crack != tip_crack || s.tip != tip_end) {
        tip_crack = s.crack;
        tip_end = s.tip;
        const CrackPath& crack = map.cracks[s.crack];
        const int side = override.crack == s.crack ? override.side : 0;
        const Polar pol = tip_polar(crack, s.tip, out.x, side);
        if (pol.r > 0.0) {
          branch = branch_eval(crack.tip_frame(s.tip), pol);
        } else {
          // at the tip: values vanish, gradients are unbounded
          branch.values.fill(0.0);
          branch.gradients.fill(Vec2::Constant(std::numeric_limits<double>::quiet_NaN()));
        }
      }
      for (int j = 0; j < 4; ++j) {
        out.terms.push_back({base + 2 * static_cast<std::size_t>(j), branch.values[j] * se.values[i],
                             branch.values[j] * se.gradients[i] + se.values[i] * branch.gradients[j]});
      }
    }
  }
}

PointField evaluate_field(const Mesh& mesh, const SolutionState& state, ElementIndex e, const Vec2& local,
                          SideOverride override) {
  thread_local PointBasis basis;
  enriched_basis(mesh, state.map, state.layout, e, local, basis, override);
  PointField f;
  const auto& c = state.coefficients;
  // standard gradients sum to zero; taking them relative to the first node
  // keeps translations exactly stress free
  const Vec2 ref(c[basis.terms[0].dof], c[basis.terms[0].dof + 1]);
  for (std::size_t k = 0; k < basis.terms.size(); ++k) {
    const auto& t = basis.terms[k];
    const Vec2 a(c[t.dof], c[t.dof + 1]);
    f.u += t.value * a;
    f.grad += (k < 4 ? Vec2(a - ref) : a) * t.grad.transpose();
  }
  return f;
}

PointField evaluate_field(const Mesh& mesh, const SolutionState& state, const Vec2& x, SideOverride override) {
  const auto loc = mesh.locate(x);
  if (!loc) throw GeometryError("evaluate", "point outside the mesh");
  return evaluate_field(mesh, state, loc->element, loc->local, override);
}

Vec2 total_displacement(const Mesh& mesh, const SolutionState& state, const Vec2& x, SideOverride override) {
  return evaluate_field(mesh, state, x, override).u;
}

StrainStress stress_strain_at(const Mesh& mesh, const SolutionState& state, const Material& material, const Vec2& x,
                              SideOverride override) {
  const PointField f = evaluate_field(mesh, state, x, override);
  StrainStress out;
  out.strain = strain_of(f.grad);
  out.stress = elasticity_matrix(material) * out.strain;
  return out;
}

double crack_opening(const Mesh& mesh, const SolutionState& state, int crack, const Vec2& x) {
  if (crack < 0 || static_cast<std::size_t>(crack) >= state.map.cracks.size()) {
    throw ValidationError("opening", "unknown crack index");
  }
  const CrackPath& path = state.map.cracks[crack];
  const ClosestPoint cp = closest_point(path, x);
  const double scale = std::max(1.0, path.length());
  if (cp.distance > 1e-8 * scale) throw GeometryError("opening", "point does not lie on the crack");
  const auto& v = path.vertices();
  const Vec2 n = rotate90((v[cp.segment + 1] - v[cp.segment]).normalized());
  const Vec2 up = total_displacement(mesh, state, cp.point, {crack, +1});
  const Vec2 down = total_displacement(mesh, state, cp.point, {crack, -1});
  return (up - down).dot(n);
}

}  // namespace xfem

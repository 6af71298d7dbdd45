#include "xfem/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "xfem/field_evaluator.hpp"

namespace xfem {
namespace {

bool sign_changes(const Mesh& mesh, const EnrichmentMap& map, ElementIndex e) {
  for (int c : map.element_cracks(mesh, e)) {
    int seen = 0;
    for (NodeIndex n : mesh.element(e)) seen |= heaviside(signed_distance(map.cracks[c], mesh.node(n))) > 0 ? 1 : 2;
    if (seen == 3) return true;
  }
  return false;
}

}  // namespace

QuadratureRule element_rule(const Mesh& mesh, const EnrichmentMap& map, const QuadratureSet& rules, ElementIndex e) {
  bool any_enriched = false;
  bool any_tip = false;
  for (NodeIndex n : mesh.element(e)) {
    const NodeKind k = map.node_status[n].kind;
    any_tip |= k == NodeKind::Tip;
    any_enriched |= k == NodeKind::Heaviside;
  }
  if (any_tip) {
    if (!map.is_tip_element(e)) return rules.tip;
    for (const auto& tip : map.tips) {
      if (!std::binary_search(tip.elements.begin(), tip.elements.end(), e)) continue;
      if (const auto local = mesh.inverse_map(e, tip.frame.origin)) return split_rule(rules.tip, *local);
    }
    return rules.tip;
  }
  if (!any_enriched) return rules.standard;
  if (map.is_cut(e) || map.is_tip_element(e) || sign_changes(mesh, map, e)) return rules.heaviside;
  return rules.standard;
}

void prescribe(std::map<std::size_t, double>& fixed, std::size_t dof, double value) {
  const auto [it, inserted] = fixed.emplace(dof, value);
  if (!inserted && std::abs(it->second - value) > 1e-12 * std::max({1e-300, std::abs(value), std::abs(it->second)})) {
    throw ValidationError("constraints", "conflicting prescribed values on DOF " + std::to_string(dof));
  }
}

ElementMatrix element_stiffness(const Mesh& mesh, const EnrichmentMap& map, const DofLayout& layout, const Mat3& D,
                                const QuadratureRule& rule, ElementIndex e) {
  PointBasis basis;
  ElementMatrix out;
  Eigen::MatrixXd B;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    enriched_basis(mesh, map, layout, e, rule.points[q], basis);
    const std::size_t nt = basis.terms.size();
    if (q == 0) {
      out.dofs.resize(2 * nt);
      for (std::size_t t = 0; t < nt; ++t) {
        out.dofs[2 * t] = basis.terms[t].dof;
        out.dofs[2 * t + 1] = basis.terms[t].dof + 1;
      }
      out.K = Eigen::MatrixXd::Zero(2 * nt, 2 * nt);
      B.resize(3, 2 * nt);
    }
    B.setZero();
    for (std::size_t t = 0; t < nt; ++t) {
      const Vec2& g = basis.terms[t].grad;
      B(0, 2 * t) = g.x();
      B(1, 2 * t + 1) = g.y();
      B(2, 2 * t) = g.y();
      B(2, 2 * t + 1) = g.x();
    }
    const double w = rule.weights[q] * basis.jacobian_det;
    out.K.noalias() += w * (B.transpose() * (D * B));
  }
  return out;
}

LinearSystem assemble(const Mesh& mesh, const EnrichmentMap& map, const DofLayout& layout, const Material& material,
                      const QuadratureSet& rules, const std::vector<BoundaryCondition>& bcs, double load_factor) {
  const Mat3 D = elasticity_matrix(material);
  const std::size_t ndof = layout.total();
  LinearSystem sys;
  sys.f = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ndof));

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(mesh.element_count() * 64);
  // Heaviside nodes must see quadrature points on both sides of their crack.
  std::vector<std::uint8_t> sides(mesh.node_count(), 0);
  const bool has_body = material.body_force.squaredNorm() > 0.0;

  PointBasis basis;
  for (ElementIndex e = 0; e < mesh.element_count(); ++e) {
    const QuadratureRule rule = element_rule(mesh, map, rules, e);
    const ElementMatrix em = element_stiffness(mesh, map, layout, D, rule, e);
    for (Eigen::Index i = 0; i < em.K.rows(); ++i) {
      for (Eigen::Index j = 0; j < em.K.cols(); ++j) {
        const double v = em.K(i, j);
        if (!std::isfinite(v)) {
          throw Error("assemble", "non-finite stiffness entry in element " + std::to_string(e));
        }
        if (v != 0.0) triplets.emplace_back(em.dofs[i], em.dofs[j], v);
      }
    }
    const bool needs_sides = std::any_of(mesh.element(e).begin(), mesh.element(e).end(), [&](NodeIndex n) {
      return map.node_status[n].kind == NodeKind::Heaviside;
    });
    if (!needs_sides && !has_body) continue;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      enriched_basis(mesh, map, layout, e, rule.points[q], basis);
      for (int i = 0; i < 4; ++i) {
        if (basis.side[i] != 0) sides[mesh.element(e)[i]] |= basis.side[i] > 0 ? 1 : 2;
      }
      if (has_body) {
        const double w = rule.weights[q] * basis.jacobian_det;
        for (const auto& t : basis.terms) {
          sys.f[t.dof] += w * t.value * material.body_force.x() * load_factor;
          sys.f[t.dof + 1] += w * t.value * material.body_force.y() * load_factor;
        }
      }
    }
  }
  for (NodeIndex n = 0; n < mesh.node_count(); ++n) {
    if (map.node_status[n].kind == NodeKind::Heaviside && sides[n] != 3) {
      throw GeometryError("assemble", "Heaviside node " + std::to_string(n) +
                                          " has all quadrature points of its support on one side of the crack");
    }
  }
  sys.K.resize(static_cast<Eigen::Index>(ndof), static_cast<Eigen::Index>(ndof));
  sys.K.setFromTriplets(triplets.begin(), triplets.end());

  // Boundary conditions.
  const GaussLegendre1D line2 = gauss_legendre(2);
  const GaussLegendre1D line6 = gauss_legendre(6);
  for (const auto& bc : bcs) {
    const auto& nodes = mesh.tag(bc.tag);
    const double scale = bc.scaled ? load_factor : 1.0;
    if (bc.type == BcType::Traction) {
      const Vec2 t(bc.value[0].value_or(0.0) * scale, bc.value[1].value_or(0.0) * scale);
      const std::set<NodeIndex> on(nodes.begin(), nodes.end());
      for (const auto& edge : mesh.boundary_edges()) {
        if (!on.count(edge.first) || !on.count(edge.second)) continue;
        const auto& el = mesh.element(edge.element);
        const bool enriched = std::any_of(el.begin(), el.end(), [&](NodeIndex n) {
          return map.node_status[n].kind != NodeKind::Standard;
        });
        const GaussLegendre1D& line = enriched ? line6 : line2;
        const int k = edge.local_edge;
        const Vec2 c0(kQuadCorners[k][0], kQuadCorners[k][1]);
        const Vec2 c1(kQuadCorners[(k + 1) % 4][0], kQuadCorners[(k + 1) % 4][1]);
        const double half_len = 0.5 * (mesh.node(edge.second) - mesh.node(edge.first)).norm();
        for (std::size_t q = 0; q < line.points.size(); ++q) {
          const double s = line.points[q];
          const Vec2 local = 0.5 * (1.0 - s) * c0 + 0.5 * (1.0 + s) * c1;
          enriched_basis(mesh, map, layout, edge.element, local, basis);
          const double w = line.weights[q] * half_len;
          for (const auto& term : basis.terms) {
            sys.f[term.dof] += w * term.value * t.x();
            sys.f[term.dof + 1] += w * term.value * t.y();
          }
        }
      }
      continue;
    }
    for (NodeIndex n : nodes) {
      for (int c = 0; c < 2; ++c) {
        if (bc.type == BcType::Fixed) {
          prescribe(sys.fixed, layout.standard(n, c), 0.0);
        } else if (bc.value[c]) {
          prescribe(sys.fixed, layout.standard(n, c), *bc.value[c] * scale);
        }
      }
      const std::size_t base = layout.enriched(n);
      for (std::size_t k = 0; k < layout.enriched_count(n); ++k) prescribe(sys.fixed, base + k, 0.0);
    }
  }
  return sys;
}

}  // namespace xfem

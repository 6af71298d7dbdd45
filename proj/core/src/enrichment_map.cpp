#include "xfem/enrichment_map.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>

namespace xfem {
namespace {

constexpr double kDegenerateTol = 1e-12;
constexpr double kPerturbation = 1e-9;
constexpr int kMaxPerturbationRounds = 5;
constexpr double kLocalTol = 1e-9;

struct Degeneracy {
  int crack = -1;
  Vec2 normal = Vec2::UnitY();
};

BoundingBox segment_box(const Vec2& a, const Vec2& b, double pad) {
  return {a.cwiseMin(b) - Vec2::Constant(pad), a.cwiseMax(b) + Vec2::Constant(pad)};
}

// Elements whose closure contains x, with local coordinates.
std::vector<std::pair<ElementIndex, Vec2>> elements_containing(const Mesh& mesh, const Vec2& x) {
  std::vector<std::pair<ElementIndex, Vec2>> out;
  const double pad = 1e-9 * std::max(1.0, (mesh.bounding_box().max - mesh.bounding_box().min).maxCoeff());
  for (ElementIndex e : mesh.elements_in_box({x - Vec2::Constant(pad), x + Vec2::Constant(pad)})) {
    const auto local = mesh.inverse_map(e, x);
    if (local && std::abs(local->x()) <= 1.0 + kLocalTol && std::abs(local->y()) <= 1.0 + kLocalTol) {
      out.emplace_back(e, *local);
    }
  }
  return out;
}

std::optional<Degeneracy> find_degeneracy(const Mesh& mesh, const std::vector<CrackPath>& cracks) {
  for (std::size_t c = 0; c < cracks.size(); ++c) {
    const auto& v = cracks[c].vertices();
    for (std::size_t s = 0; s + 1 < v.size(); ++s) {
      const Vec2 n = rotate90((v[s + 1] - v[s]).normalized());
      for (ElementIndex e : mesh.elements_in_box(segment_box(v[s], v[s + 1], kDegenerateTol))) {
        for (NodeIndex nid : mesh.element(e)) {
          if (point_segment_distance(mesh.node(nid), v[s], v[s + 1]) < kDegenerateTol) {
            return Degeneracy{static_cast<int>(c), n};
          }
        }
        // a piece of the segment running along an element edge
        const Clip clip = clip_segment(mesh, e, v[s], v[s + 1]);
        if (clip.length <= kDegenerateTol) continue;
        const Vec2 mid = v[s] + 0.5 * (clip.t0 + clip.t1) * (v[s + 1] - v[s]);
        const auto& el = mesh.element(e);
        for (int k = 0; k < 4; ++k) {
          if (point_segment_distance(mid, mesh.node(el[k]), mesh.node(el[(k + 1) % 4])) < kDegenerateTol) {
            return Degeneracy{static_cast<int>(c), n};
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Clip clip_segment(const Mesh& mesh, ElementIndex e, const Vec2& a, const Vec2& b) {
  const auto p = mesh.element_coords(e);
  const Vec2 d = b - a;
  double t0 = 0.0;
  double t1 = 1.0;
  for (int k = 0; k < 4; ++k) {
    const Vec2 inward = rotate90(p[(k + 1) % 4] - p[k]);
    const double num = inward.dot(a - p[k]);
    const double den = inward.dot(d);
    if (den == 0.0) {
      if (num < 0.0) return {};
      continue;
    }
    const double t = -num / den;
    if (den > 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 > t1) return {};
  }
  return {t0, t1, (t1 - t0) * d.norm()};
}

CrackPath virtually_extend(const Mesh& mesh, const CrackPath& crack) {
  std::vector<Vec2> v = crack.vertices();
  for (TipEnd end : {TipEnd::Start, TipEnd::End}) {
    if (!crack.tip_active(end)) continue;
    const TipFrame f = crack.tip_frame(end);
    const auto containing = elements_containing(mesh, f.origin);
    if (containing.empty()) {
      throw GeometryError("classify", "tip of crack " + std::to_string(crack.id()) + " lies outside the mesh");
    }
    // The element holding the last piece of crack behind the tip decides the exit.
    double exit = 0.0;
    bool behind = false;
    for (const auto& [e, local] : containing) {
      const auto& box = mesh.element_box(e);
      const double span = 2.0 * (box.max - box.min).norm();
      const Clip clip = clip_segment(mesh, e, f.origin - span * f.tangent, f.origin + span * f.tangent);
      if (clip.length <= 0.0) continue;
      const double s0 = (clip.t0 * 2.0 - 1.0) * span;
      const double s1 = (clip.t1 * 2.0 - 1.0) * span;
      const double tol = 1e-9 * span;
      if (s0 < -tol && s1 >= -tol) {
        exit = std::max(exit, s1);
        behind = true;
      }
    }
    if (!behind) {
      // tip sits where no element lies behind it along the tangent; use any element ahead
      for (const auto& [e, local] : containing) {
        const auto& box = mesh.element_box(e);
        const double span = 2.0 * (box.max - box.min).norm();
        const Clip clip = clip_segment(mesh, e, f.origin, f.origin + span * f.tangent);
        if (clip.t0 <= 1e-9) exit = std::max(exit, clip.t1 * span);
      }
    }
    if (exit <= 1e-9 * mesh.element_size(containing.front().first)) continue;
    const Vec2 p = f.origin + exit * f.tangent;
    if (end == TipEnd::End) {
      v.push_back(p);
    } else {
      v.insert(v.begin(), p);
    }
  }
  return crack.with_vertices(std::move(v));
}

std::size_t EnrichmentMap::heaviside_count() const {
  return static_cast<std::size_t>(std::count_if(node_status.begin(), node_status.end(),
                                                [](const NodeStatus& s) { return s.kind == NodeKind::Heaviside; }));
}

std::size_t EnrichmentMap::tip_count() const {
  return static_cast<std::size_t>(std::count_if(node_status.begin(), node_status.end(),
                                                [](const NodeStatus& s) { return s.kind == NodeKind::Tip; }));
}

bool EnrichmentMap::is_cut(ElementIndex e) const { return std::binary_search(cut_elements.begin(), cut_elements.end(), e); }

bool EnrichmentMap::is_tip_element(ElementIndex e) const {
  return std::binary_search(tip_elements.begin(), tip_elements.end(), e);
}

std::vector<int> EnrichmentMap::element_cracks(const Mesh& mesh, ElementIndex e) const {
  std::vector<int> out;
  for (NodeIndex n : mesh.element(e)) {
    const auto& s = node_status[n];
    if (s.kind != NodeKind::Standard && std::find(out.begin(), out.end(), s.crack) == out.end()) out.push_back(s.crack);
  }
  return out;
}

namespace {

EnrichmentMap classify_once(const Mesh& mesh, const std::vector<CrackPath>& cracks, const EnrichmentOptions& opt) {
  EnrichmentMap map;
  map.tip_enrichment = opt.tip_enrichment;
  map.cracks = cracks;
  const std::size_t nn = mesh.node_count();
  map.node_status.assign(nn, {});
  map.node_sign.assign(nn, 0);
  map.psi.assign(nn, 0);

  // Tips and the elements that contain them.
  std::vector<std::set<NodeIndex>> tip_support(cracks.size());
  std::map<ElementIndex, std::set<int>> strict_tip;  // element -> cracks with a tip strictly inside
  std::set<ElementIndex> tip_elems;
  for (std::size_t c = 0; c < cracks.size(); ++c) {
    for (TipEnd end : {TipEnd::Start, TipEnd::End}) {
      if (!cracks[c].tip_active(end)) continue;
      TipRecord rec;
      rec.crack = static_cast<int>(c);
      rec.end = end;
      rec.frame = cracks[c].tip_frame(end);
      const auto containing = elements_containing(mesh, rec.frame.origin);
      if (containing.empty()) {
        throw GeometryError("classify", "tip of crack " + std::to_string(cracks[c].id()) + " lies outside the mesh");
      }
      std::set<NodeIndex> common(mesh.element(containing.front().first).begin(),
                                 mesh.element(containing.front().first).end());
      for (const auto& [e, local] : containing) {
        rec.elements.push_back(e);
        tip_elems.insert(e);
        std::set<NodeIndex> nodes(mesh.element(e).begin(), mesh.element(e).end());
        std::set<NodeIndex> both;
        std::set_intersection(common.begin(), common.end(), nodes.begin(), nodes.end(),
                              std::inserter(both, both.begin()));
        common = std::move(both);
        if (std::abs(local.x()) < 1.0 - kLocalTol && std::abs(local.y()) < 1.0 - kLocalTol) {
          strict_tip[e].insert(static_cast<int>(c));
        }
      }
      tip_support[c].insert(common.begin(), common.end());
      map.tips.push_back(std::move(rec));
    }
  }

  // Elements cut by each crack.
  std::map<ElementIndex, std::vector<int>> cut_by;
  for (std::size_t c = 0; c < cracks.size(); ++c) {
    const auto& v = cracks[c].vertices();
    for (std::size_t s = 0; s + 1 < v.size(); ++s) {
      for (ElementIndex e : mesh.elements_in_box(segment_box(v[s], v[s + 1], kDegenerateTol))) {
        if (clip_segment(mesh, e, v[s], v[s + 1]).length <= kDegenerateTol) continue;
        auto& list = cut_by[e];
        if (std::find(list.begin(), list.end(), static_cast<int>(c)) == list.end()) list.push_back(static_cast<int>(c));
      }
    }
  }
  std::vector<std::pair<ElementIndex, int>> cut;
  for (const auto& [e, list] : cut_by) {
    if (list.size() > 1) {
      throw GeometryError("classify", "element " + std::to_string(e) + " is crossed by more than one crack");
    }
    const auto it = strict_tip.find(e);
    if (it != strict_tip.end()) continue;  // a tip lies inside: tip element, not cut
    cut.emplace_back(e, list.front());
    map.cut_elements.push_back(e);
  }
  map.tip_elements.assign(tip_elems.begin(), tip_elems.end());

  // Tip status.
  // A node near two tips takes the closer one (first tip on ties).
  if (opt.tip_enrichment) {
    std::vector<double> claim(nn, std::numeric_limits<double>::infinity());
    for (const auto& rec : map.tips) {
      for (ElementIndex e : rec.elements) {
        for (NodeIndex n : mesh.element(e)) {
          const double d = (mesh.node(n) - rec.frame.origin).norm();
          if (d >= claim[n]) continue;
          claim[n] = d;
          map.node_status[n] = {NodeKind::Tip, rec.crack, rec.end};
        }
      }
    }
  }

  // Heaviside candidates.
  std::vector<NodeIndex> candidates;
  for (const auto& [e, c] : cut) {
    for (NodeIndex n : mesh.element(e)) {
      if (tip_support[c].count(n)) continue;
      auto& s = map.node_status[n];
      if (s.kind == NodeKind::Tip) {
        if (s.crack != c) {
          throw GeometryError("classify", "node " + std::to_string(n) + " is enriched by two cracks");
        }
        continue;
      }
      if (s.kind == NodeKind::Heaviside) {
        if (s.crack != c) {
          throw GeometryError("classify", "node " + std::to_string(n) + " is enriched by two cracks");
        }
        continue;
      }
      s = {NodeKind::Heaviside, c, TipEnd::End};
      candidates.push_back(n);
    }
  }

  // Support-area tolerance: drop nodes whose support is barely bisected.
  const auto& rule = opt.heaviside_rule;
  for (NodeIndex n : candidates) {
    const int c = map.node_status[n].crack;
    double plus = 0.0;
    double minus = 0.0;
    for (ElementIndex e : mesh.elements_of_node(n)) {
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const ShapeEval se = mesh.shape_eval(e, rule.points[q]);
        const double w = rule.weights[q] * se.jacobian_det;
        const Vec2 x = mesh.map_to_physical(e, rule.points[q]);
        (signed_distance(cracks[c], x) >= 0.0 ? plus : minus) += w;
      }
    }
    const double ratio = std::min(plus, minus) / (plus + minus);
    if (std::min(plus, minus) == 0.0 || ratio < opt.delta) {
      map.node_status[n] = {};
      ++map.demoted_nodes;
    }
  }

  for (NodeIndex n = 0; n < nn; ++n) {
    const auto& s = map.node_status[n];
    if (s.kind == NodeKind::Standard) continue;
    map.psi[n] = 1;
    map.node_sign[n] = heaviside(signed_distance(cracks[s.crack], mesh.node(n)));
  }

  map.effective_half_length.resize(cracks.size());
  for (std::size_t c = 0; c < cracks.size(); ++c) {
    const std::size_t k = cracks[c].active_tip_count();
    map.effective_half_length[c] = cracks[c].length() / static_cast<double>(k == 0 ? 1 : k);
  }
  return map;
}

}  // namespace

EnrichmentMap classify_enrichment(const Mesh& mesh, const std::vector<CrackPath>& cracks,
                                  const EnrichmentOptions& options) {
  if (!(options.delta >= 0.0 && options.delta < 0.5)) {
    throw ValidationError("classify", "support tolerance delta must lie in [0, 0.5)");
  }
  std::vector<CrackPath> current = cracks;
  for (int round = 0;; ++round) {
    std::vector<CrackPath> effective;
    effective.reserve(current.size());
    for (const auto& c : current) effective.push_back(options.tip_enrichment ? c : virtually_extend(mesh, c));
    const auto bad = find_degeneracy(mesh, effective);
    if (!bad) {
      EnrichmentMap map = classify_once(mesh, effective, options);
      map.perturbation_rounds = round;
      return map;
    }
    if (round == kMaxPerturbationRounds) {
      throw GeometryError("classify", "crack " + std::to_string(cracks[bad->crack].id()) +
                                          " remains aligned with mesh nodes or edges after perturbation");
    }
    // Shift the offending crack off the mesh entity along its local normal.
    auto v = current[bad->crack].vertices();
    for (auto& p : v) p += kPerturbation * (round + 1) * bad->normal;
    current[bad->crack] = current[bad->crack].with_vertices(std::move(v));
  }
}

double psi_at(const EnrichmentMap& map, const Mesh& mesh, const Vec2& x) {
  const auto loc = mesh.locate(x);
  if (!loc) throw GeometryError("psi", "point outside the mesh");
  const auto n = bilinear_values(loc->local);
  double v = 0.0;
  for (int i = 0; i < 4; ++i) v += n[i] * map.psi[mesh.element(loc->element)[i]];
  return v;
}

}  // namespace xfem

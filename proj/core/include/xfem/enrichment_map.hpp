#pragma once

#include <cstdint>
#include <vector>

#include "xfem/crack.hpp"
#include "xfem/mesh.hpp"
#include "xfem/quadrature.hpp"

namespace xfem {

enum class NodeKind : std::uint8_t { Standard, Heaviside, Tip };

struct NodeStatus {
  NodeKind kind = NodeKind::Standard;
  int crack = -1;  ///< index into EnrichmentMap::cracks
  TipEnd tip = TipEnd::End;

  friend bool operator==(const NodeStatus&, const NodeStatus&) = default;
};

/// A live tip as seen by the analysis (after any virtual extension).
struct TipRecord {
  int crack = -1;  ///< index into EnrichmentMap::cracks
  TipEnd end = TipEnd::End;
  TipFrame frame;
  std::vector<ElementIndex> elements;  ///< elements containing the tip in their closure
};

struct EnrichmentOptions {
  double delta = 0.002;
  bool tip_enrichment = false;
  QuadratureRule heaviside_rule = gauss_rule(35);
};

struct EnrichmentMap {
  std::vector<NodeStatus> node_status;
  std::vector<int> node_sign;  ///< heaviside(phi) at enriched nodes, 0 at standard nodes
  std::vector<std::uint8_t> psi;
  std::vector<ElementIndex> cut_elements;  ///< sorted
  std::vector<ElementIndex> tip_elements;  ///< sorted
  /// Crack geometry used by the analysis: the input cracks, virtually extended
  /// to element edges when tip enrichment is off, and possibly perturbed off
  /// mesh nodes.
  std::vector<CrackPath> cracks;
  std::vector<TipRecord> tips;
  std::vector<double> effective_half_length;  ///< per crack: length / active tips
  std::size_t demoted_nodes = 0;
  int perturbation_rounds = 0;
  bool tip_enrichment = false;

  std::size_t heaviside_count() const;
  std::size_t tip_count() const;
  bool is_cut(ElementIndex e) const;
  bool is_tip_element(ElementIndex e) const;
  /// Crack indices with an enriched node in the element.
  std::vector<int> element_cracks(const Mesh& mesh, ElementIndex e) const;
};

/// Classifies nodes as standard, Heaviside or tip enriched.
EnrichmentMap classify_enrichment(const Mesh& mesh, const std::vector<CrackPath>& cracks,
                                  const EnrichmentOptions& options);

/// Bilinear interpolation of the nodal psi indicator.
double psi_at(const EnrichmentMap& map, const Mesh& mesh, const Vec2& x);

/// Length of the part of segment [a, b] strictly inside convex element e, and
/// the clipped parameter interval.
struct Clip {
  double t0 = 0.0;
  double t1 = 0.0;
  double length = 0.0;
};
Clip clip_segment(const Mesh& mesh, ElementIndex e, const Vec2& a, const Vec2& b);

/// Crack extended from each active tip along its tangent to the exit edge of
/// the element containing the tip.
CrackPath virtually_extend(const Mesh& mesh, const CrackPath& crack);

}  // namespace xfem

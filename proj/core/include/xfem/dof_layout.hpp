#pragma once

#include <vector>

#include "xfem/enrichment_map.hpp"

namespace xfem {

/// Global DOF numbering: two standard DOFs per node first, then two per
/// Heaviside node and eight per tip node, in node order.
class DofLayout {
 public:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  DofLayout() = default;
  DofLayout(std::size_t node_count, const EnrichmentMap& map);

  std::size_t total() const { return total_; }
  std::size_t node_count() const { return enriched_.size(); }
  std::size_t standard(NodeIndex n, int comp) const { return 2 * n + static_cast<std::size_t>(comp); }
  /// First enriched DOF of node n, or kNone. Heaviside: +comp; tip: +2 j + comp.
  std::size_t enriched(NodeIndex n) const { return enriched_[n]; }
  std::size_t enriched_count(NodeIndex n) const { return count_[n]; }

 private:
  std::vector<std::size_t> enriched_;
  std::vector<std::uint8_t> count_;
  std::size_t total_ = 0;
};

}  // namespace xfem

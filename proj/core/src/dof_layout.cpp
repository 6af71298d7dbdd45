#include "xfem/dof_layout.hpp"

namespace xfem {

DofLayout::DofLayout(std::size_t node_count, const EnrichmentMap& map)
    : enriched_(node_count, kNone), count_(node_count, 0) {
  if (map.node_status.size() != node_count) throw ValidationError("dofs", "enrichment map does not match the mesh");
  std::size_t next = 2 * node_count;
  for (NodeIndex n = 0; n < node_count; ++n) {
    switch (map.node_status[n].kind) {
      case NodeKind::Standard:
        break;
      case NodeKind::Heaviside:
        enriched_[n] = next;
        count_[n] = 2;
        next += 2;
        break;
      case NodeKind::Tip:
        enriched_[n] = next;
        count_[n] = 8;
        next += 8;
        break;
    }
  }
  total_ = next;
}

}  // namespace xfem

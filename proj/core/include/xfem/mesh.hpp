#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xfem/common.hpp"

namespace xfem {

/// Bilinear shape functions evaluated at a point of one element.
struct ShapeEval {
  std::array<double, 4> values{};
  std::array<Vec2, 4> gradients{};  ///< physical coordinates
  double jacobian_det = 0.0;
};

struct PointLocation {
  ElementIndex element = 0;
  Vec2 local = Vec2::Zero();
};

/// An element edge lying on the outer (or hole) boundary of the mesh.
struct BoundaryEdge {
  ElementIndex element = 0;
  int local_edge = 0;  ///< edge k joins local nodes k and (k+1)%4
  NodeIndex first = 0;
  NodeIndex second = 0;
};

struct BoundingBox {
  Vec2 min = Vec2::Zero();
  Vec2 max = Vec2::Zero();
  bool contains(const Vec2& x, double tol = 0.0) const {
    return x.x() >= min.x() - tol && x.x() <= max.x() + tol && x.y() >= min.y() - tol &&
           x.y() <= max.y() + tol;
  }
  bool overlaps(const BoundingBox& o, double tol = 0.0) const {
    return min.x() <= o.max.x() + tol && o.min.x() <= max.x() + tol && min.y() <= o.max.y() + tol &&
           o.min.y() <= max.y() + tol;
  }
};

/// Reference-square corner coordinates in counter-clockwise order.
inline constexpr std::array<std::array<double, 2>, 4> kQuadCorners{
    {{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}}};

/// Shape function values on the reference square (no geometry needed).
std::array<double, 4> bilinear_values(const Vec2& local);

/// Immutable background mesh of bilinear quadrilaterals.
///
/// Construction validates connectivity, coordinates and element orientation
/// and builds the adjacency and bucket-grid search structures used by point
/// location. All queries are const and thread-safe.
class Mesh {
 public:
  using Element = std::array<NodeIndex, 4>;
  using TagMap = std::map<std::string, std::vector<NodeIndex>>;

  Mesh(std::vector<Vec2> nodes, std::vector<Element> elements, TagMap boundary_tags = {});

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t element_count() const { return elements_.size(); }
  const std::vector<Vec2>& nodes() const { return nodes_; }
  const Vec2& node(NodeIndex n) const { return nodes_[n]; }
  const std::vector<Element>& elements() const { return elements_; }
  const Element& element(ElementIndex e) const { return elements_[e]; }
  const TagMap& boundary_tags() const { return tags_; }
  bool has_tag(const std::string& name) const { return tags_.count(name) != 0; }
  const std::vector<NodeIndex>& tag(const std::string& name) const;

  std::array<Vec2, 4> element_coords(ElementIndex e) const;
  Vec2 map_to_physical(ElementIndex e, const Vec2& local) const;
  ShapeEval shape_eval(ElementIndex e, const Vec2& local) const;
  Vec2 centroid(ElementIndex e) const { return map_to_physical(e, Vec2::Zero()); }
  double element_area(ElementIndex e) const;
  /// sqrt(area): the length scale used for tip deactivation and contour rules.
  double element_size(ElementIndex e) const { return std::sqrt(element_area(e)); }
  const BoundingBox& element_box(ElementIndex e) const { return boxes_[e]; }
  const BoundingBox& bounding_box() const { return extent_; }

  std::span<const ElementIndex> elements_of_node(NodeIndex n) const;

  /// Element containing x (boundary inclusive, lowest id on shared edges).
  std::optional<PointLocation> locate(const Vec2& x) const;
  /// Inverse bilinear map by Newton iteration. Returns nullopt when the
  /// iteration does not converge.
  std::optional<Vec2> inverse_map(ElementIndex e, const Vec2& x) const;
  /// Candidate elements whose bounding boxes overlap `box` (sorted, unique).
  std::vector<ElementIndex> elements_in_box(const BoundingBox& box) const;

  const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_edges_; }
  double distance_to_boundary(const Vec2& x) const;
  double total_area() const;

 private:
  void validate() const;
  void build_adjacency();
  void build_boundary();
  void build_buckets();
  std::pair<int, int> bucket_of(const Vec2& x) const;

  std::vector<Vec2> nodes_;
  std::vector<Element> elements_;
  TagMap tags_;
  std::vector<BoundingBox> boxes_;
  BoundingBox extent_;

  std::vector<std::size_t> node_elem_offsets_;
  std::vector<ElementIndex> node_elems_;

  std::vector<BoundaryEdge> boundary_edges_;

  int bucket_nx_ = 1;
  int bucket_ny_ = 1;
  Vec2 bucket_size_ = Vec2::Ones();
  std::vector<std::size_t> bucket_offsets_;
  std::vector<ElementIndex> bucket_elems_;
};

/// Free-function spellings of the core queries.
inline ShapeEval shape_eval(const Mesh& mesh, ElementIndex e, const Vec2& local) {
  return mesh.shape_eval(e, local);
}
inline std::optional<PointLocation> locate_point(const Mesh& mesh, const Vec2& x) { return mesh.locate(x); }

}  // namespace xfem

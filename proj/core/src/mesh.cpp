#include "xfem/mesh.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace xfem {
namespace {

constexpr double kLocalTol = 1e-9;
constexpr int kNewtonMaxIter = 30;
constexpr double kNewtonTol = 1e-12;

double point_segment_distance(const Vec2& x, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  const double len2 = d.squaredNorm();
  double t = len2 > 0.0 ? (x - a).dot(d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (x - (a + t * d)).norm();
}

}  // namespace

std::array<double, 4> bilinear_values(const Vec2& local) {
  std::array<double, 4> n{};
  for (int i = 0; i < 4; ++i) {
    n[i] = 0.25 * (1.0 + kQuadCorners[i][0] * local.x()) * (1.0 + kQuadCorners[i][1] * local.y());
  }
  return n;
}

Mesh::Mesh(std::vector<Vec2> nodes, std::vector<Element> elements, TagMap boundary_tags)
    : nodes_(std::move(nodes)), elements_(std::move(elements)), tags_(std::move(boundary_tags)) {
  validate();
  boxes_.resize(elements_.size());
  extent_.min = Vec2::Constant(std::numeric_limits<double>::infinity());
  extent_.max = Vec2::Constant(-std::numeric_limits<double>::infinity());
  for (ElementIndex e = 0; e < elements_.size(); ++e) {
    BoundingBox box{Vec2::Constant(std::numeric_limits<double>::infinity()),
                    Vec2::Constant(-std::numeric_limits<double>::infinity())};
    for (NodeIndex n : elements_[e]) {
      box.min = box.min.cwiseMin(nodes_[n]);
      box.max = box.max.cwiseMax(nodes_[n]);
    }
    boxes_[e] = box;
    extent_.min = extent_.min.cwiseMin(box.min);
    extent_.max = extent_.max.cwiseMax(box.max);
  }
  build_adjacency();
  build_boundary();
  build_buckets();
}

void Mesh::validate() const {
  if (nodes_.empty() || elements_.empty()) throw ValidationError("mesh", "mesh has no nodes or no elements");
  for (NodeIndex n = 0; n < nodes_.size(); ++n) {
    if (!std::isfinite(nodes_[n].x()) || !std::isfinite(nodes_[n].y())) {
      throw ValidationError("mesh", "node " + std::to_string(n) + " has non-finite coordinates");
    }
  }
  for (ElementIndex e = 0; e < elements_.size(); ++e) {
    for (NodeIndex n : elements_[e]) {
      if (n >= nodes_.size()) {
        throw ValidationError("mesh", "element " + std::to_string(e) + " references node " +
                                          std::to_string(n) + " beyond node count " +
                                          std::to_string(nodes_.size()));
      }
    }
    // The bilinear Jacobian is positive everywhere iff it is at the corners.
    for (int c = 0; c < 4; ++c) {
      const Vec2& p = nodes_[elements_[e][c]];
      const Vec2& next = nodes_[elements_[e][(c + 1) % 4]];
      const Vec2& prev = nodes_[elements_[e][(c + 3) % 4]];
      if (cross(next - p, prev - p) <= 0.0) {
        throw GeometryError("mesh", "element " + std::to_string(e) +
                                        " is degenerate or inverted (non-positive Jacobian at corner " +
                                        std::to_string(c) + ")");
      }
    }
  }
  for (const auto& [name, ids] : tags_) {
    for (NodeIndex n : ids) {
      if (n >= nodes_.size()) {
        throw ValidationError("mesh", "boundary '" + name + "' references node " + std::to_string(n) +
                                          " beyond node count");
      }
    }
  }
}

void Mesh::build_adjacency() {
  node_elem_offsets_.assign(nodes_.size() + 1, 0);
  for (const auto& el : elements_)
    for (NodeIndex n : el) ++node_elem_offsets_[n + 1];
  for (std::size_t i = 0; i < nodes_.size(); ++i) node_elem_offsets_[i + 1] += node_elem_offsets_[i];
  node_elems_.resize(node_elem_offsets_.back());
  std::vector<std::size_t> cursor(node_elem_offsets_.begin(), node_elem_offsets_.end() - 1);
  for (ElementIndex e = 0; e < elements_.size(); ++e)
    for (NodeIndex n : elements_[e]) node_elems_[cursor[n]++] = e;
}

void Mesh::build_boundary() {
  std::unordered_map<std::uint64_t, int> edge_count;
  edge_count.reserve(elements_.size() * 4);
  auto key = [this](NodeIndex a, NodeIndex b) {
    if (a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) * nodes_.size() + b;
  };
  for (const auto& el : elements_)
    for (int k = 0; k < 4; ++k) ++edge_count[key(el[k], el[(k + 1) % 4])];
  for (ElementIndex e = 0; e < elements_.size(); ++e) {
    for (int k = 0; k < 4; ++k) {
      const NodeIndex a = elements_[e][k];
      const NodeIndex b = elements_[e][(k + 1) % 4];
      if (edge_count[key(a, b)] == 1) boundary_edges_.push_back({e, k, a, b});
    }
  }
}

void Mesh::build_buckets() {
  const Vec2 span = (extent_.max - extent_.min).cwiseMax(Vec2::Constant(1e-300));
  const double cells = std::max<double>(1.0, static_cast<double>(elements_.size()));
  const double aspect = span.x() / span.y();
  bucket_nx_ = std::clamp(static_cast<int>(std::ceil(std::sqrt(cells * aspect))), 1, 4096);
  bucket_ny_ = std::clamp(static_cast<int>(std::ceil(cells / bucket_nx_)), 1, 4096);
  bucket_size_ = Vec2(span.x() / bucket_nx_, span.y() / bucket_ny_);

  const std::size_t nb = static_cast<std::size_t>(bucket_nx_) * bucket_ny_;
  std::vector<std::vector<ElementIndex>> lists(nb);
  for (ElementIndex e = 0; e < elements_.size(); ++e) {
    const double pad = 1e-9 * std::max(span.x(), span.y());
    const auto [i0, j0] = bucket_of(boxes_[e].min - Vec2::Constant(pad));
    const auto [i1, j1] = bucket_of(boxes_[e].max + Vec2::Constant(pad));
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) lists[static_cast<std::size_t>(j) * bucket_nx_ + i].push_back(e);
  }
  bucket_offsets_.assign(nb + 1, 0);
  for (std::size_t b = 0; b < nb; ++b) bucket_offsets_[b + 1] = bucket_offsets_[b] + lists[b].size();
  bucket_elems_.reserve(bucket_offsets_.back());
  for (auto& l : lists) bucket_elems_.insert(bucket_elems_.end(), l.begin(), l.end());
}

std::pair<int, int> Mesh::bucket_of(const Vec2& x) const {
  const int i = static_cast<int>(std::floor((x.x() - extent_.min.x()) / bucket_size_.x()));
  const int j = static_cast<int>(std::floor((x.y() - extent_.min.y()) / bucket_size_.y()));
  return {std::clamp(i, 0, bucket_nx_ - 1), std::clamp(j, 0, bucket_ny_ - 1)};
}

const std::vector<NodeIndex>& Mesh::tag(const std::string& name) const {
  auto it = tags_.find(name);
  if (it == tags_.end()) throw ValidationError("mesh", "unknown boundary tag '" + name + "'");
  return it->second;
}

std::array<Vec2, 4> Mesh::element_coords(ElementIndex e) const {
  const auto& el = elements_[e];
  return {nodes_[el[0]], nodes_[el[1]], nodes_[el[2]], nodes_[el[3]]};
}

Vec2 Mesh::map_to_physical(ElementIndex e, const Vec2& local) const {
  const auto n = bilinear_values(local);
  Vec2 x = Vec2::Zero();
  for (int i = 0; i < 4; ++i) x += n[i] * nodes_[elements_[e][i]];
  return x;
}

ShapeEval Mesh::shape_eval(ElementIndex e, const Vec2& local) const {
  ShapeEval out;
  out.values = bilinear_values(local);
  std::array<Vec2, 4> dref;
  for (int i = 0; i < 4; ++i) {
    const double xi_i = kQuadCorners[i][0];
    const double eta_i = kQuadCorners[i][1];
    dref[i] = Vec2(0.25 * xi_i * (1.0 + eta_i * local.y()), 0.25 * eta_i * (1.0 + xi_i * local.x()));
  }
  Mat2 jac = Mat2::Zero();  // jac(i, j) = d x_i / d xi_j
  for (int i = 0; i < 4; ++i) jac += nodes_[elements_[e][i]] * dref[i].transpose();
  out.jacobian_det = jac.determinant();
  if (!(out.jacobian_det > 0.0)) {
    throw GeometryError("mesh", "singular Jacobian in element " + std::to_string(e));
  }
  const Mat2 inv_t = jac.inverse().transpose();
  for (int i = 0; i < 4; ++i) out.gradients[i] = inv_t * dref[i];
  return out;
}

double Mesh::element_area(ElementIndex e) const {
  // det J is bilinear, so the 2x2 Gauss rule is exact.
  const double g = 1.0 / std::sqrt(3.0);
  double area = 0.0;
  for (double a : {-g, g})
    for (double b : {-g, g}) area += shape_eval(e, Vec2(a, b)).jacobian_det;
  return area;
}

double Mesh::total_area() const {
  double a = 0.0;
  for (ElementIndex e = 0; e < elements_.size(); ++e) a += element_area(e);
  return a;
}

std::span<const ElementIndex> Mesh::elements_of_node(NodeIndex n) const {
  return {node_elems_.data() + node_elem_offsets_[n], node_elem_offsets_[n + 1] - node_elem_offsets_[n]};
}

std::optional<Vec2> Mesh::inverse_map(ElementIndex e, const Vec2& x) const {
  const auto c = element_coords(e);
  Vec2 local = Vec2::Zero();
  for (int iter = 0; iter < kNewtonMaxIter; ++iter) {
    const auto n = bilinear_values(local);
    Vec2 r = -x;
    Mat2 jac = Mat2::Zero();
    for (int i = 0; i < 4; ++i) {
      const double xi_i = kQuadCorners[i][0];
      const double eta_i = kQuadCorners[i][1];
      r += n[i] * c[i];
      const Vec2 d(0.25 * xi_i * (1.0 + eta_i * local.y()), 0.25 * eta_i * (1.0 + xi_i * local.x()));
      jac += c[i] * d.transpose();
    }
    const double det = jac.determinant();
    if (!(std::abs(det) > 0.0)) return std::nullopt;
    const Vec2 step = jac.inverse() * r;
    local -= step;
    if (!local.allFinite() || local.cwiseAbs().maxCoeff() > 1e6) return std::nullopt;
    if (step.cwiseAbs().maxCoeff() < kNewtonTol) return local;
  }
  return local;
}

std::optional<PointLocation> Mesh::locate(const Vec2& x) const {
  const double tol = 1e-9 * std::max((extent_.max - extent_.min).maxCoeff(), 1.0);
  if (!extent_.contains(x, tol)) return std::nullopt;
  const auto [i, j] = bucket_of(x);
  const std::size_t b = static_cast<std::size_t>(j) * bucket_nx_ + i;
  // buckets list elements in ascending id, so the first hit is the lowest id
  for (std::size_t k = bucket_offsets_[b]; k < bucket_offsets_[b + 1]; ++k) {
    const ElementIndex e = bucket_elems_[k];
    if (!boxes_[e].contains(x, tol)) continue;
    const auto local = inverse_map(e, x);
    if (!local) continue;
    if (std::abs(local->x()) <= 1.0 + kLocalTol && std::abs(local->y()) <= 1.0 + kLocalTol) {
      return PointLocation{e, *local};
    }
  }
  return std::nullopt;
}

std::vector<ElementIndex> Mesh::elements_in_box(const BoundingBox& box) const {
  std::vector<ElementIndex> out;
  if (!extent_.overlaps(box)) return out;
  const auto [i0, j0] = bucket_of(box.min);
  const auto [i1, j1] = bucket_of(box.max);
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      const std::size_t b = static_cast<std::size_t>(j) * bucket_nx_ + i;
      for (std::size_t k = bucket_offsets_[b]; k < bucket_offsets_[b + 1]; ++k) {
        const ElementIndex e = bucket_elems_[k];
        if (boxes_[e].overlaps(box, 1e-12)) out.push_back(e);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double Mesh::distance_to_boundary(const Vec2& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& be : boundary_edges_) {
    best = std::min(best, point_segment_distance(x, nodes_[be.first], nodes_[be.second]));
  }
  return best;
}

}  // namespace xfem

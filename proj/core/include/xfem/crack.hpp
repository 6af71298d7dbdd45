#pragma once

#include <array>
#include <vector>

#include "xfem/common.hpp"

namespace xfem {

enum class TipEnd : int { Start = 0, End = 1 };

inline int tip_index(TipEnd t) { return static_cast<int>(t); }

/// Local tip frame. `tangent` points out of the crack, `normal` is the
/// tangent rotated by +90 degrees.
struct TipFrame {
  Vec2 origin = Vec2::Zero();
  Vec2 tangent = Vec2::UnitX();
  Vec2 normal = Vec2::UnitY();

  Vec2 to_local(const Vec2& x) const {
    const Vec2 d = x - origin;
    return {d.dot(tangent), d.dot(normal)};
  }
  Vec2 to_global(const Vec2& local) const { return origin + local.x() * tangent + local.y() * normal; }
  /// Columns are the tangent and normal.
  Mat2 rotation() const {
    Mat2 r;
    r.col(0) = tangent;
    r.col(1) = normal;
    return r;
  }
};

struct Polar {
  double r = 0.0;
  double theta = 0.0;
};

/// Open polyline crack. The left side of the directed polyline is the
/// positive side of its signed distance.
class CrackPath {
 public:
  CrackPath(int id, std::vector<Vec2> vertices, std::array<bool, 2> tip_active = {true, true});

  int id() const { return id_; }
  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t segment_count() const { return vertices_.size() - 1; }
  bool tip_active(TipEnd t) const { return active_[tip_index(t)]; }
  const std::array<bool, 2>& tip_flags() const { return active_; }
  std::size_t active_tip_count() const { return static_cast<std::size_t>(active_[0]) + active_[1]; }
  const Vec2& tip(TipEnd t) const { return t == TipEnd::Start ? vertices_.front() : vertices_.back(); }
  TipFrame tip_frame(TipEnd t) const;
  double length() const;

  CrackPath with_tip_active(TipEnd t, bool on) const;
  CrackPath with_vertices(std::vector<Vec2> vertices) const { return CrackPath(id_, std::move(vertices), active_); }

  friend bool operator==(const CrackPath&, const CrackPath&) = default;

 private:
  int id_;
  std::vector<Vec2> vertices_;
  std::array<bool, 2> active_;
};

struct ClosestPoint {
  double distance = 0.0;
  std::size_t segment = 0;
  double t = 0.0;  ///< parameter along the segment, clamped to [0, 1]
  Vec2 point = Vec2::Zero();
};

ClosestPoint closest_point(const CrackPath& crack, const Vec2& x);

/// Distance to the polyline, positive on the left of the directed polyline.
double signed_distance(const CrackPath& crack, const Vec2& x);

/// +1 for phi >= 0, -1 otherwise.
inline int heaviside(double phi) { return phi >= 0.0 ? 1 : -1; }

/// Polar coordinates in the tip frame; theta in (-pi, pi], r = 0 gives 0.
Polar tip_local_coords(const TipFrame& frame, const Vec2& x);

/// Polar coordinates whose angle sign follows the crack side, so that the
/// branch cut lies on the actual (possibly curved) crack faces. `side` forces
/// the side (+1/-1) instead of evaluating the signed distance.
Polar tip_polar(const CrackPath& crack, TipEnd tip, const Vec2& x, int side = 0);

/// Side that tip_polar associates with a positive angle.
inline int positive_side(TipEnd t) { return t == TipEnd::End ? 1 : -1; }

/// New crack with a vertex added at distance `delta_a` from the tip, at angle
/// `theta_c` in the current tip frame. Throws GeometryError on self-intersection.
CrackPath extend_crack(const CrackPath& crack, TipEnd tip, double theta_c, double delta_a);

/// Whether two closed segments intersect (touching counts).
bool segments_intersect(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1);
double point_segment_distance(const Vec2& x, const Vec2& a, const Vec2& b);
double segment_segment_distance(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1);
/// Minimum distance between two polylines.
double crack_distance(const CrackPath& a, const CrackPath& b);

}  // namespace xfem

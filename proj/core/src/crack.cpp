#include "xfem/crack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace xfem {
namespace {

constexpr double kMinSegment = 1e-12;

int orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double v = cross(b - a, c - a);
  const double scale = std::max({(b - a).squaredNorm(), (c - a).squaredNorm(), 1e-300});
  if (std::abs(v) <= 1e-14 * scale) return 0;
  return v > 0.0 ? 1 : -1;
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  return p.x() <= std::max(a.x(), b.x()) + 1e-15 && p.x() >= std::min(a.x(), b.x()) - 1e-15 &&
         p.y() <= std::max(a.y(), b.y()) + 1e-15 && p.y() >= std::min(a.y(), b.y()) - 1e-15;
}

void validate_polyline(const std::vector<Vec2>& v, int id) {
  const std::string who = "crack " + std::to_string(id);
  if (v.size() < 2) throw ValidationError("crack", who + " needs at least 2 vertices");
  for (const auto& p : v) {
    if (!p.allFinite()) throw ValidationError("crack", who + " has non-finite vertex");
  }
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if ((v[i + 1] - v[i]).norm() <= kMinSegment) {
      throw GeometryError("crack", who + ": segment " + std::to_string(i) + " has zero length");
    }
  }
  const std::size_t ns = v.size() - 1;
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = i + 1; j < ns; ++j) {
      if (j == i + 1) {
        // adjacent segments may only share their common vertex
        const Vec2 d0 = v[i + 1] - v[i];
        const Vec2 d1 = v[j + 1] - v[j];
        if (std::abs(cross(d0, d1)) <= 1e-14 * d0.norm() * d1.norm() && d0.dot(d1) < 0.0) {
          throw GeometryError("crack", who + " folds back on itself at vertex " + std::to_string(j));
        }
        continue;
      }
      if (segments_intersect(v[i], v[i + 1], v[j], v[j + 1])) {
        throw GeometryError("crack", who + " self-intersects (segments " + std::to_string(i) + " and " +
                                         std::to_string(j) + ")");
      }
    }
  }
}

}  // namespace

bool segments_intersect(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1) {
  const int o1 = orientation(a0, a1, b0);
  const int o2 = orientation(a0, a1, b1);
  const int o3 = orientation(b0, b1, a0);
  const int o4 = orientation(b0, b1, a1);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a0, a1, b0)) return true;
  if (o2 == 0 && on_segment(a0, a1, b1)) return true;
  if (o3 == 0 && on_segment(b0, b1, a0)) return true;
  if (o4 == 0 && on_segment(b0, b1, a1)) return true;
  return false;
}

double point_segment_distance(const Vec2& x, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  const double len2 = d.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((x - a).dot(d) / len2, 0.0, 1.0) : 0.0;
  return (x - (a + t * d)).norm();
}

double segment_segment_distance(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1) {
  if (segments_intersect(a0, a1, b0, b1)) return 0.0;
  return std::min({point_segment_distance(a0, b0, b1), point_segment_distance(a1, b0, b1),
                   point_segment_distance(b0, a0, a1), point_segment_distance(b1, a0, a1)});
}

double crack_distance(const CrackPath& a, const CrackPath& b) {
  double best = std::numeric_limits<double>::infinity();
  const auto& va = a.vertices();
  const auto& vb = b.vertices();
  for (std::size_t i = 0; i + 1 < va.size(); ++i)
    for (std::size_t j = 0; j + 1 < vb.size(); ++j)
      best = std::min(best, segment_segment_distance(va[i], va[i + 1], vb[j], vb[j + 1]));
  return best;
}

CrackPath::CrackPath(int id, std::vector<Vec2> vertices, std::array<bool, 2> tip_active)
    : id_(id), vertices_(std::move(vertices)), active_(tip_active) {
  validate_polyline(vertices_, id_);
}

TipFrame CrackPath::tip_frame(TipEnd t) const {
  TipFrame f;
  if (t == TipEnd::End) {
    f.origin = vertices_.back();
    f.tangent = (vertices_.back() - vertices_[vertices_.size() - 2]).normalized();
  } else {
    f.origin = vertices_.front();
    f.tangent = (vertices_.front() - vertices_[1]).normalized();
  }
  f.normal = rotate90(f.tangent);
  return f;
}

double CrackPath::length() const {
  double l = 0.0;
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) l += (vertices_[i + 1] - vertices_[i]).norm();
  return l;
}

CrackPath CrackPath::with_tip_active(TipEnd t, bool on) const {
  CrackPath c = *this;
  c.active_[tip_index(t)] = on;
  return c;
}

ClosestPoint closest_point(const CrackPath& crack, const Vec2& x) {
  const auto& v = crack.vertices();
  ClosestPoint best;
  best.distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const Vec2 d = v[i + 1] - v[i];
    const double t = std::clamp((x - v[i]).dot(d) / d.squaredNorm(), 0.0, 1.0);
    const Vec2 p = v[i] + t * d;
    const double dist = (x - p).norm();
    if (dist < best.distance) best = {dist, i, t, p};
  }
  return best;
}

double signed_distance(const CrackPath& crack, const Vec2& x) {
  const auto& v = crack.vertices();
  const ClosestPoint cp = closest_point(crack, x);
  if (cp.distance == 0.0) return 0.0;
  const std::size_t ns = crack.segment_count();
  auto seg_normal = [&](std::size_t i) { return rotate90((v[i + 1] - v[i]).normalized()); };

  Vec2 n;
  Vec2 base = cp.point;
  if (cp.t > 0.0 && cp.t < 1.0) {
    n = seg_normal(cp.segment);
  } else {
    // closest point is a vertex
    const std::size_t vi = cp.t <= 0.0 ? cp.segment : cp.segment + 1;
    base = v[vi];
    if (vi == 0) {
      n = seg_normal(0);
    } else if (vi == ns) {
      n = seg_normal(ns - 1);
    } else {
      n = seg_normal(vi - 1) + seg_normal(vi);
    }
  }
  const double s = (x - base).dot(n);
  return s >= 0.0 ? cp.distance : -cp.distance;
}

Polar tip_local_coords(const TipFrame& frame, const Vec2& x) {
  const Vec2 l = frame.to_local(x);
  Polar p;
  p.r = l.norm();
  if (p.r == 0.0) return p;
  p.theta = std::atan2(l.y(), l.x());
  if (p.theta <= -kPi) p.theta = kPi;
  return p;
}

Polar tip_polar(const CrackPath& crack, TipEnd tip, const Vec2& x, int side) {
  Polar p = tip_local_coords(crack.tip_frame(tip), x);
  if (p.r == 0.0) return p;
  if (side == 0) side = heaviside(signed_distance(crack, x));
  const double s = static_cast<double>(side * positive_side(tip));
  p.theta = std::copysign(std::abs(p.theta), s);
  return p;
}

CrackPath extend_crack(const CrackPath& crack, TipEnd tip, double theta_c, double delta_a) {
  if (!crack.tip_active(tip)) throw ValidationError("propagate", "cannot extend an inactive tip");
  if (!(delta_a > 0.0)) throw ValidationError("propagate", "crack increment must be positive");
  const TipFrame f = crack.tip_frame(tip);
  const Vec2 dir = std::cos(theta_c) * f.tangent + std::sin(theta_c) * f.normal;
  const Vec2 p = f.origin + delta_a * dir;
  std::vector<Vec2> v = crack.vertices();
  // check the new segment against all non-adjacent segments
  const std::size_t ns = crack.segment_count();
  for (std::size_t i = 0; i < ns; ++i) {
    const bool adjacent = tip == TipEnd::End ? i + 1 == ns : i == 0;
    if (adjacent) {
      const Vec2 d = v[i + 1] - v[i];
      if (std::abs(cross(d, dir)) <= 1e-14 * d.norm() && f.tangent.dot(dir) < 0.0) {
        throw GeometryError("propagate", "extension of crack " + std::to_string(crack.id()) + " folds back");
      }
      continue;
    }
    if (segments_intersect(f.origin, p, v[i], v[i + 1])) {
      throw GeometryError("propagate", "extension of crack " + std::to_string(crack.id()) + " self-intersects");
    }
  }
  if (tip == TipEnd::End) {
    v.push_back(p);
  } else {
    v.insert(v.begin(), p);
  }
  return crack.with_vertices(std::move(v));
}

}  // namespace xfem

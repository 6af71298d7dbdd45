#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "xfem/crack.hpp"

using namespace xfem;
using xfem::test::random_point;

namespace {

CrackPath kinked() { return CrackPath(1, {{0.2, 0.3}, {0.5, 0.5}, {0.8, 0.35}}); }

double brute_distance(const CrackPath& c, const Vec2& x) {
  double best = 1e300;
  const auto& v = c.vertices();
  for (std::size_t s = 0; s + 1 < v.size(); ++s)
    for (int k = 0; k <= 200000; ++k) {
      const Vec2 p = v[s] + (k / 200000.0) * (v[s + 1] - v[s]);
      best = std::min(best, (x - p).norm());
    }
  return best;
}

// segment [x, y] crosses one of the rays continuing the crack beyond its ends
bool crosses_tip_ray(const CrackPath& c, const Vec2& x, const Vec2& y) {
  for (TipEnd t : {TipEnd::Start, TipEnd::End}) {
    const TipFrame f = c.tip_frame(t);
    if (segments_intersect(x, y, f.origin, f.origin + 10.0 * f.tangent)) return true;
  }
  return false;
}

}  // namespace

TEST(CrackPath, ValidatesPolyline) {
  EXPECT_THROW(CrackPath(1, {{0, 0}}), ValidationError);
  EXPECT_THROW(CrackPath(1, {{0, 0}, {0, 0}}), GeometryError);
  EXPECT_THROW(CrackPath(1, {{0, 0}, {1, 0}, {1, 1}, {0.5, -1}}), GeometryError);
  EXPECT_THROW(CrackPath(1, {{0, 0}, {1, 0}, {0.5, 0}}), GeometryError);
  EXPECT_THROW(CrackPath(1, {{0, 0}, {1, std::numeric_limits<double>::infinity()}}), ValidationError);
  EXPECT_NO_THROW(kinked());
}

TEST(SignedDistance, HorizontalCrack) {
  const CrackPath c(1, {{0.4, 0.0}, {0.6, 0.0}});
  EXPECT_NEAR(signed_distance(c, {0.5, 0.01}), 0.01, 1e-15);
  EXPECT_NEAR(signed_distance(c, {0.5, -0.02}), -0.02, 1e-15);
  EXPECT_EQ(signed_distance(c, {0.45, 0.0}), 0.0);
  // reversing the polyline flips the sign
  const CrackPath r(1, {{0.6, 0.0}, {0.4, 0.0}});
  EXPECT_NEAR(signed_distance(r, {0.5, 0.01}), -0.01, 1e-15);
}

TEST(SignedDistance, KinkedMatchesDenseSampling) {
  const CrackPath c = kinked();
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const Vec2 x = random_point(rng, 0, 1, 0, 1);
    EXPECT_NEAR(std::abs(signed_distance(c, x)), brute_distance(c, x), 1e-8);
  }
}

TEST(SignedDistance, SignFollowsLeftSide) {
  const CrackPath c = kinked();
  const auto& v = c.vertices();
  for (std::size_t s = 0; s + 1 < v.size(); ++s) {
    const Vec2 mid = 0.5 * (v[s] + v[s + 1]);
    const Vec2 n = rotate90((v[s + 1] - v[s]).normalized());
    EXPECT_GT(signed_distance(c, mid + 1e-3 * n), 0.0);
    EXPECT_LT(signed_distance(c, mid - 1e-3 * n), 0.0);
  }
}

TEST(SignedDistance, Lipschitz) {
  const CrackPath c = kinked();
  std::mt19937_64 rng(13);
  int signed_checked = 0;
  for (int k = 0; k < 1000; ++k) {
    const Vec2 x = random_point(rng, 0, 1, 0, 1);
    const Vec2 y = random_point(rng, 0, 1, 0, 1);
    const double px = signed_distance(c, x), py = signed_distance(c, y);
    EXPECT_LE(std::abs(std::abs(px) - std::abs(py)), (x - y).norm() + 1e-14);
    // the sign jumps only across the lines continuing the crack past its tips
    if (!crosses_tip_ray(c, x, y)) {
      EXPECT_LE(std::abs(px - py), (x - y).norm() + 1e-14);
      ++signed_checked;
    }
  }
  EXPECT_GT(signed_checked, 300);
}

TEST(Heaviside, Values) {
  EXPECT_EQ(heaviside(0.3), 1);
  EXPECT_EQ(heaviside(0.0), 1);
  EXPECT_EQ(heaviside(-0.0), 1);
  EXPECT_EQ(heaviside(-1e-15), -1);
}

TEST(TipFrame, OrthonormalAndOutward) {
  const CrackPath c = kinked();
  for (TipEnd t : {TipEnd::Start, TipEnd::End}) {
    const TipFrame f = c.tip_frame(t);
    EXPECT_NEAR(f.tangent.norm(), 1.0, 1e-12);
    EXPECT_NEAR(f.normal.norm(), 1.0, 1e-12);
    EXPECT_NEAR(f.tangent.dot(f.normal), 0.0, 1e-12);
    EXPECT_NEAR(cross(f.tangent, f.normal), 1.0, 1e-12);
    // a step along the tangent leaves the crack
    EXPECT_NEAR(closest_point(c, f.origin + 0.01 * f.tangent).distance, 0.01, 1e-12);
  }
}

TEST(TipLocalCoords, Examples) {
  const TipFrame f = kinked().tip_frame(TipEnd::End);
  auto p = tip_local_coords(f, f.origin + 0.1 * f.tangent);
  EXPECT_NEAR(p.r, 0.1, 1e-14);
  EXPECT_NEAR(p.theta, 0.0, 1e-12);
  p = tip_local_coords(f, f.origin + 0.1 * f.normal);
  EXPECT_NEAR(p.r, 0.1, 1e-14);
  EXPECT_NEAR(p.theta, kPi / 2, 1e-12);
  TipFrame straight;
  p = tip_local_coords(straight, Vec2(-0.1, 0.0));
  EXPECT_NEAR(p.r, 0.1, 1e-14);
  EXPECT_EQ(p.theta, kPi);
  p = tip_local_coords(straight, Vec2(-0.1, -0.0));
  EXPECT_EQ(p.theta, kPi);
  p = tip_local_coords(straight, Vec2::Zero());
  EXPECT_EQ(p.r, 0.0);
  EXPECT_EQ(p.theta, 0.0);
}

TEST(TipPolar, AngleSignFollowsCrackSide) {
  const CrackPath c(1, {{0, 0}, {1, 0}});
  // behind the end tip: above is positive, below negative
  EXPECT_NEAR(tip_polar(c, TipEnd::End, {0.5, 1e-9}).theta, kPi, 1e-8);
  EXPECT_NEAR(tip_polar(c, TipEnd::End, {0.5, -1e-9}).theta, -kPi, 1e-8);
  EXPECT_NEAR(tip_polar(c, TipEnd::End, {0.5, 0.0}, -1).theta, -kPi, 1e-12);
  // start tip frame points in -x, normal in -y
  EXPECT_NEAR(tip_polar(c, TipEnd::Start, {0.5, -1e-9}).theta, kPi, 1e-8);
  EXPECT_NEAR(tip_polar(c, TipEnd::Start, {-0.1, -0.1}).theta, kPi / 4, 1e-12);
}

TEST(ExtendCrack, CollinearIncrement) {
  const CrackPath c(1, {{0, 0}, {0.01, 0}}, {false, true});
  const CrackPath g = extend_crack(c, TipEnd::End, 0.0, 0.003);
  ASSERT_EQ(g.vertices().size(), 3u);
  EXPECT_NEAR((g.tip(TipEnd::End) - Vec2(0.013, 0.0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR(g.length() - c.length(), 0.003, 1e-12);
  EXPECT_THROW(extend_crack(c, TipEnd::Start, 0.0, 0.003), ValidationError);
  EXPECT_THROW(extend_crack(c, TipEnd::End, 0.0, 0.0), ValidationError);
}

TEST(ExtendCrack, PerpendicularAndComposedRotations) {
  const CrackPath c = kinked();
  const TipFrame f0 = c.tip_frame(TipEnd::End);
  const CrackPath p = extend_crack(c, TipEnd::End, kPi / 2, 0.1);
  EXPECT_NEAR((p.tip_frame(TipEnd::End).tangent - f0.normal).norm(), 0.0, 1e-12);
  const double d = kPi / 6;
  const CrackPath two = extend_crack(extend_crack(c, TipEnd::End, d, 0.05), TipEnd::End, -d, 0.05);
  EXPECT_NEAR((two.tip_frame(TipEnd::End).tangent - f0.tangent).norm(), 0.0, 1e-12);
  // start tip grows too
  const TipFrame s0 = c.tip_frame(TipEnd::Start);
  const CrackPath s = extend_crack(c, TipEnd::Start, 0.0, 0.02);
  EXPECT_NEAR((s.tip(TipEnd::Start) - (s0.origin + 0.02 * s0.tangent)).norm(), 0.0, 1e-15);
}

TEST(ExtendCrack, RandomIncrementsPreserveValidityAndLength) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ang(-1.2, 1.2), len(0.001, 0.05);
  CrackPath c(1, {{0.0, 0.0}, {0.05, 0.0}});
  for (int k = 0; k < 60; ++k) {
    const TipEnd t = k % 2 ? TipEnd::Start : TipEnd::End;
    const double da = len(rng);
    const double before = c.length();
    try {
      c = extend_crack(c, t, ang(rng), da);
    } catch (const GeometryError&) {
      continue;
    }
    EXPECT_NEAR(c.length() - before, da, 1e-12);
    EXPECT_NO_THROW(CrackPath(c.id(), c.vertices(), c.tip_flags()));
  }
}

TEST(ExtendCrack, SelfIntersectionRefused) {
  // a hook whose next step would cross the first segment
  const CrackPath c(1, {{0, 0}, {1, 0}, {1, 0.2}, {0.5, 0.2}});
  EXPECT_THROW(extend_crack(c, TipEnd::End, kPi / 2, 0.5), GeometryError);
  // straight fold-back
  EXPECT_THROW(extend_crack(CrackPath(1, {{0, 0}, {1, 0}}), TipEnd::End, kPi, 0.1), GeometryError);
}

TEST(CrackDistance, SegmentsAndPolylines) {
  EXPECT_TRUE(segments_intersect({0, 0}, {1, 1}, {0, 1}, {1, 0}));
  EXPECT_TRUE(segments_intersect({0, 0}, {1, 0}, {1, 0}, {2, 1}));
  EXPECT_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 0.1}, {1, 0.1}));
  EXPECT_NEAR(point_segment_distance({0.5, 1}, {0, 0}, {1, 0}), 1.0, 1e-15);
  EXPECT_NEAR(point_segment_distance({2, 0}, {0, 0}, {1, 0}), 1.0, 1e-15);
  EXPECT_NEAR(segment_segment_distance({0, 0}, {1, 0}, {0.5, 0.3}, {0.5, 1}), 0.3, 1e-15);
  const CrackPath a(1, {{0, 0}, {1, 0}});
  const CrackPath b(2, {{0, 0.5}, {0.5, 0.2}, {1, 0.5}});
  EXPECT_NEAR(crack_distance(a, b), 0.2, 1e-15);
}

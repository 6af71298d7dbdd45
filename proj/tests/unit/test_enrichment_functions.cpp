#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "xfem/enrichment_functions.hpp"

using namespace xfem;

TEST(ShiftedHeaviside, Examples) {
  EXPECT_EQ(shifted_heaviside(+1, 0.1), 0);
  EXPECT_EQ(shifted_heaviside(+1, -0.1), -2);
  EXPECT_EQ(shifted_heaviside(-1, 0.1), 2);
  EXPECT_EQ(shifted_heaviside(-1, -0.1), 0);
  // owning node: phi has the node's own sign
  for (double phi : {-3.0, -1e-300, 0.0, 1e-300, 2.0}) EXPECT_EQ(shifted_heaviside(heaviside(phi), phi), 0);
}

TEST(ShiftedHeaviside, JumpsByTwoAcrossTheCrack) {
  for (int sign : {-1, 1}) EXPECT_EQ(std::abs(shifted_heaviside(sign, 1e-12) - shifted_heaviside(sign, -1e-12)), 2);
}

TEST(BranchEval, Examples) {
  auto b = branch_eval(1.0, 0.0);
  EXPECT_NEAR(b.values[0], 0.0, 1e-15);
  EXPECT_NEAR(b.values[1], 1.0, 1e-15);
  EXPECT_NEAR(b.values[2], 0.0, 1e-15);
  EXPECT_NEAR(b.values[3], 0.0, 1e-15);
  b = branch_eval(0.25, kPi);
  EXPECT_NEAR(b.values[0], 0.5, 1e-15);
  EXPECT_NEAR(b.values[1], 0.0, 1e-15);
  EXPECT_NEAR(b.values[2], 0.0, 1e-15);
  EXPECT_NEAR(b.values[3], 0.0, 1e-15);
  EXPECT_THROW(branch_eval(0.0, 0.0), GeometryError);
  EXPECT_THROW(branch_eval(-1.0, 0.0), GeometryError);
}

TEST(BranchEval, SqrtScaling) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ur(1e-4, 2.0), ut(-kPi, kPi);
  for (int k = 0; k < 50; ++k) {
    const double r = ur(rng), t = ut(rng);
    const auto a = branch_eval(r, t);
    const auto b = branch_eval(4 * r, t);
    for (int j = 0; j < 4; ++j) {
      EXPECT_TRUE(std::isfinite(a.values[j]));
      EXPECT_NEAR(b.values[j], 2 * a.values[j], 1e-12 * std::max(1.0, std::abs(b.values[j])));
    }
  }
}

TEST(BranchEval, GradientsMatchFiniteDifferences) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ur(0.01, 1.0), ut(-3.0, 3.0);
  auto values_at = [](double x, double y) {
    return branch_eval(std::hypot(x, y), std::atan2(y, x)).values;
  };
  const double h = 1e-7;
  for (int k = 0; k < 20; ++k) {
    const double r = ur(rng), t = ut(rng);
    const double x = r * std::cos(t), y = r * std::sin(t);
    const auto b = branch_eval(r, t);
    const auto xp = values_at(x + h, y), xm = values_at(x - h, y);
    const auto yp = values_at(x, y + h), ym = values_at(x, y - h);
    for (int j = 0; j < 4; ++j) {
      const Vec2 fd((xp[j] - xm[j]) / (2 * h), (yp[j] - ym[j]) / (2 * h));
      const double scale = std::max(b.gradients[j].norm(), 1e-3);
      EXPECT_LT((b.gradients[j] - fd).norm() / scale, 1e-5) << j << " r=" << r << " t=" << t;
    }
  }
}

TEST(BranchEval, RotatedGradientsFollowFrame) {
  TipFrame f;
  f.origin = Vec2(0.3, -0.2);
  f.tangent = Vec2(std::cos(0.7), std::sin(0.7));
  f.normal = rotate90(f.tangent);
  const Polar p{0.2, 1.1};
  const auto local = branch_eval(p.r, p.theta);
  const auto global = branch_eval(f, p);
  for (int j = 0; j < 4; ++j) {
    EXPECT_EQ(local.values[j], global.values[j]);
    EXPECT_NEAR((f.rotation().transpose() * global.gradients[j] - local.gradients[j]).norm(), 0.0, 1e-14);
  }
}

TEST(BranchEval, OnlyFirstFunctionJumpsAcrossFace) {
  for (double r : {1e-4, 0.3, 2.0}) {
    const auto up = branch_eval(r, kPi);
    const auto dn = branch_eval(r, -kPi);
    EXPECT_NEAR(up.values[0] - dn.values[0], 2 * std::sqrt(r), 1e-10);
    for (int j = 1; j < 4; ++j) EXPECT_LT(std::abs(up.values[j] - dn.values[j]), 1e-10);
  }
}

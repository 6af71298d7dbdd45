#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "xfem/field_evaluator.hpp"
#include "xfem/output.hpp"

using namespace xfem;
using namespace xfem::test;

namespace {

constexpr double kSigma = 1e6;
const double kRef = kSigma * std::sqrt(kPi * 0.1);

const SifResult& at(const std::vector<SifResult>& sifs, int crack, TipEnd end) {
  for (const auto& s : sifs)
    if (s.crack_id == crack && s.tip == end) return s;
  throw std::runtime_error("no such tip");
}

// Centre crack a = 0.1 in the shipped plate, fine cells a / 12.5, tips enriched.
class CentreCrack : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    cfg_ = new RunConfig(load_shipped("centre_crack.cfg"));
    cfg_->mesh.fine_size = 0.1 / 12.5;
    model_ = new Model(build_model(*cfg_));
    cracks_ = new std::vector<CrackPath>(build_cracks(*cfg_));
    result_ = new StationaryResult(run_stationary(*model_, *cracks_, 1.0));
  }
  static void TearDownTestSuite() {
    delete result_;
    delete cracks_;
    delete model_;
    delete cfg_;
  }
  static RunConfig* cfg_;
  static Model* model_;
  static std::vector<CrackPath>* cracks_;
  static StationaryResult* result_;
};
RunConfig* CentreCrack::cfg_ = nullptr;
Model* CentreCrack::model_ = nullptr;
std::vector<CrackPath>* CentreCrack::cracks_ = nullptr;
StationaryResult* CentreCrack::result_ = nullptr;

}  // namespace

TEST_F(CentreCrack, ModeIFactorMatchesGriffith) {
  ASSERT_EQ(result_->sifs.size(), 2u);
  for (const auto& s : result_->sifs) {
    EXPECT_NEAR(s.K_I / kRef, 1.0, 0.01);
    EXPECT_LT(std::abs(s.K_II), 0.01 * kRef);
    EXPECT_LT(std::abs(s.theta_c), 0.02);
    EXPECT_NEAR(s.a_eff, 0.1, 1e-12);
    EXPECT_NEAR(s.J, j_integral(s.K_I, s.K_II, model_->material), 1e-12 * s.J);
  }
  // symmetric tips
  EXPECT_NEAR(result_->sifs[0].K_I / result_->sifs[1].K_I, 1.0, 1e-3);
}

TEST_F(CentreCrack, ContourPathIndependence) {
  for (const auto& tip : result_->state.map.tips) {
    std::vector<double> k;
    for (double r : {0.07, 0.09, 0.1}) k.push_back(compute_tip_sifs(*model_, result_->state, tip, r).K_I);
    for (double v : k) EXPECT_NEAR(v / k.back(), 1.0, 0.02);
  }
}

TEST_F(CentreCrack, ContourResolution) {
  Model m = *model_;
  m.contour.n_points = 256;
  const auto fine = compute_sifs(m, result_->state);
  for (std::size_t i = 0; i < fine.size(); ++i) EXPECT_NEAR(result_->sifs[i].K_I / fine[i].K_I, 1.0, 0.005);
}

TEST_F(CentreCrack, CrackFacesCarryNoTraction) {
  for (double x : {-0.05, 0.0, 0.03}) {
    for (double y : {1e-6, -1e-6}) {
      const auto ss = stress_strain_at(model_->mesh, result_->state, model_->material, Vec2(x, y));
      EXPECT_LT(std::abs(ss.stress(1)), 0.1 * kSigma) << x << " " << y;
      EXPECT_LT(std::abs(ss.stress(2)), 0.1 * kSigma) << x << " " << y;
    }
  }
}

TEST_F(CentreCrack, OpeningProfile) {
  const auto cod = cod_profile(model_->mesh, result_->state, 0, 41);
  ASSERT_EQ(cod.size(), 41u);
  double max = 0.0;
  for (const auto& c : cod) max = std::max(max, c.opening);
  for (std::size_t i = 0; i < cod.size(); ++i) {
    EXPECT_GE(cod[i].opening, -1e-12 * max);
    EXPECT_NEAR(cod[i].opening, cod[cod.size() - 1 - i].opening, 0.02 * max);
  }
  EXPECT_GT(cod[20].opening, cod[10].opening);
  EXPECT_GT(cod[20].opening, cod[30].opening);
  // ellipse: COD(0) = 4 sigma a / E'
  EXPECT_NEAR(cod[20].opening / (4 * kSigma * 0.1 / model_->material.e_prime()), 1.0, 0.03);
}

TEST_F(CentreCrack, LinearInLoad) {
  const auto twice = run_stationary(*model_, *cracks_, 2.0);
  const auto zero = run_stationary(*model_, *cracks_, 0.0);
  for (std::size_t i = 0; i < twice.sifs.size(); ++i) {
    EXPECT_NEAR(twice.sifs[i].K_I, 2 * result_->sifs[i].K_I, 1e-9 * kRef);
    EXPECT_NEAR(twice.sifs[i].K_II, 2 * result_->sifs[i].K_II, 1e-9 * kRef);
    EXPECT_NEAR(twice.sifs[i].theta_c, result_->sifs[i].theta_c, 1e-9);
    EXPECT_NEAR(twice.sifs[i].J, 4 * result_->sifs[i].J, 1e-9 * twice.sifs[i].J);
    EXPECT_EQ(zero.sifs[i].K_I, 0.0);
    EXPECT_EQ(zero.sifs[i].K_II, 0.0);
  }
  EXPECT_EQ(zero.state.coefficients.norm(), 0.0);
  const auto a = cod_profile(model_->mesh, result_->state, 0, 11);
  const auto b = cod_profile(model_->mesh, twice.state, 0, 11);
  ASSERT_EQ(a.size(), b.size());
  // scaling by two is exact in floating point
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(b[i].opening, 2 * a[i].opening);
  for (std::size_t i = 0; i < twice.sifs.size(); ++i) EXPECT_EQ(twice.sifs[i].K_I, 2 * result_->sifs[i].K_I);
  for (const auto& c : cod_profile(model_->mesh, zero.state, 0, 11)) EXPECT_EQ(c.opening, 0.0);
}

TEST_F(CentreCrack, Deterministic) {
  const auto again = run_stationary(*model_, *cracks_, 1.0);
  EXPECT_EQ(again.state.coefficients, result_->state.coefficients);
  EXPECT_EQ(sif_csv(stationary_history(again)), sif_csv(stationary_history(*result_)));
  for (std::size_t i = 0; i < again.sifs.size(); ++i) EXPECT_EQ(again.sifs[i].K_I, result_->sifs[i].K_I);
}

TEST_F(CentreCrack, ResolveIsPure) {
  // state depends on geometry only: solving another crack in between changes nothing
  const CrackPath other(1, {Vec2(-0.05, 0.01), Vec2(0.05, 0.02)});
  (void)solve_state(*model_, {other}, 1.0);
  const auto again = solve_state(*model_, *cracks_, 1.0);
  EXPECT_LT((again.coefficients - result_->state.coefficients).norm(), 1e-10 * result_->state.coefficients.norm());
}

TEST(Stationary, InclinedCrackAt45Degrees) {
  RunConfig cfg = load_shipped("inclined_crack.cfg");
  cfg.mesh.fine_size = 0.1 / 8;
  const double c = 0.1 / std::sqrt(2.0);
  cfg.cracks[0].vertices = {Vec2(-c, -c), Vec2(c, c)};
  const auto res = run_stationary(cfg);
  ASSERT_EQ(res.sifs.size(), 2u);
  const double expect = kRef * 0.5;
  for (const auto& s : res.sifs) {
    EXPECT_NEAR(s.K_I / expect, 1.0, 0.03);
    EXPECT_NEAR(s.K_II / expect, 1.0, 0.03);
  }
  // turning back towards the horizontal
  EXPECT_LT(at(res.sifs, 1, TipEnd::End).theta_c, 0.0);
  EXPECT_LT(at(res.sifs, 1, TipEnd::Start).theta_c, 0.0);
}

TEST(Stationary, UncrackedPlateEnergyNorm) {
  const Material m = steel();
  Model model = make_model(structured_mesh(0, 2, 0, 1, 8, 4), m, tension_bcs(kSigma));
  const auto res = run_stationary(model, {}, 1.0);
  const double nu = m.nu;
  const Voigt exact(-nu * (1 + nu) * kSigma / m.E, (1 - nu * nu) * kSigma / m.E, 0.0);
  const auto ref = [&](const Vec2&) { return exact; };
  const auto zero = [](const Vec2&) { return Voigt::Zero().eval(); };
  const double scale = energy_error_norm(model.mesh, res.state, m, zero);
  EXPECT_GT(scale, 0.0);
  EXPECT_LT(energy_error_norm(model.mesh, res.state, m, ref), 1e-10 * scale);
  EXPECT_LT(energy_error_norm(model.mesh, res.state, m, strain_field(model.mesh, res.state)), 1e-12 * scale);
  // region restricted: still exact, scale unchanged per unit area
  const BoundingBox box{Vec2(0.5, 0.25), Vec2(1.5, 0.75)};
  EXPECT_LT(energy_error_norm(model.mesh, res.state, m, ref, box), 1e-10 * scale);
}

TEST(Stationary, LogLogFit) {
  std::vector<double> x{0.1, 0.05, 0.025, 0.0125}, y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 1.5));
  const auto [slope, r2] = loglog_fit(x, y);
  EXPECT_NEAR(slope, 1.5, 1e-12);
  EXPECT_NEAR(r2, 1.0, 1e-12);
  y[1] *= 1.3;
  EXPECT_LT(loglog_fit(x, y).second, 1.0);
  EXPECT_THROW(loglog_fit({1.0}, {1.0}), ValidationError);
}

TEST(Stationary, RandomCracksDoNotInterpenetrate) {
  const auto res = run_stationary(load_shipped("random_cracks.cfg"));
  const auto& mesh = build_mesh(load_shipped("random_cracks.cfg").mesh);
  ASSERT_EQ(res.state.map.cracks.size(), 17u);
  std::vector<std::vector<CodSample>> cods;
  double max = 0.0;
  for (int c = 0; c < 17; ++c) {
    cods.push_back(cod_profile(mesh, res.state, c, 25));
    ASSERT_FALSE(cods.back().empty());
    for (const auto& s : cods.back()) max = std::max(max, std::abs(s.opening));
  }
  // openings vanish at the tips; allow roundoff relative to the largest one
  for (int c = 0; c < 17; ++c)
    for (const auto& s : cods[c]) EXPECT_GE(s.opening, -1e-9 * max) << "crack " << c + 1;
}

TEST(Stationary, CodNeedsACutElement) {
  Model model = make_model(structured_mesh(0, 4, 0, 4, 4, 4), steel(), tension_bcs(kSigma), true);
  const CrackPath inside(1, {Vec2(1.3, 1.5), Vec2(1.7, 1.5)});
  const auto res = run_stationary(model, {inside}, 1.0);
  EXPECT_THROW(cod_profile(model.mesh, res.state, 0, 10), GeometryError);
  EXPECT_THROW(cod_profile(model.mesh, res.state, 3, 10), ValidationError);
  EXPECT_THROW(cod_profile(model.mesh, res.state, 0, 1), ValidationError);
}

TEST(Propagation, ToughMaterialDoesNotGrow) {
  Model model = make_model(structured_mesh(0, 2, 0, 2, 20, 20), steel(), tension_bcs(kSigma), true);
  const CrackPath crack(1, {Vec2(-0.1, 1.05), Vec2(0.55, 1.05)}, {false, true});
  const auto h = run_propagation(model, {crack}, {0.5, 1.0, 1.5}, {0.1, 1e30, 5});
  ASSERT_FALSE(h.aborted);
  EXPECT_EQ(h.steps.size(), 3u);
  EXPECT_EQ(h.final_cracks.front(), crack);
  for (const auto& s : h.steps) EXPECT_TRUE(s.events.empty());
}

TEST(Propagation, EachIncrementAddsDeltaA) {
  Model model = make_model(structured_mesh(0, 2, 0, 2, 20, 20), steel(), tension_bcs(kSigma), true);
  const CrackPath crack(1, {Vec2(-0.1, 1.05), Vec2(0.55, 1.05)}, {false, true});
  const auto h = run_propagation(model, {crack}, {1, 1, 1, 1}, {0.1, std::nullopt, 3});
  ASSERT_FALSE(h.aborted);
  // growth stops after three increments
  ASSERT_EQ(h.steps.size(), 3u);
  for (std::size_t k = 0; k < h.steps.size(); ++k) {
    EXPECT_NEAR(h.steps[k].cracks.front().length(), crack.length() + 0.1 * static_cast<double>(k), 1e-12);
    EXPECT_EQ(h.steps[k].cracks.front().vertices().size(), 2 + k);
  }
  EXPECT_NEAR(h.final_cracks.front().length(), crack.length() + 0.3, 1e-12);
  // each snapshot extends the previous one
  for (std::size_t k = 1; k < h.steps.size(); ++k) {
    const auto& prev = h.steps[k - 1].cracks.front().vertices();
    const auto& cur = h.steps[k].cracks.front().vertices();
    ASSERT_EQ(cur.size(), prev.size() + 1);
    EXPECT_TRUE(std::equal(prev.begin(), prev.end(), cur.begin()));
  }
  const auto& v = h.final_cracks.front().vertices();
  for (std::size_t i = 2; i < v.size(); ++i) EXPECT_NEAR((v[i] - v[i - 1]).norm(), 0.1, 1e-12);
  // the final state was solved on the last step's geometry
  const auto again = solve_state(model, h.steps.back().cracks, 1.0);
  EXPECT_LT((again.coefficients - h.final_state->coefficients).norm(), 1e-10 * again.coefficients.norm());
  const auto sifs = compute_sifs(model, again);
  EXPECT_NEAR(sifs.front().K_I, h.steps.back().sifs.front().K_I, 1e-10 * std::abs(sifs.front().K_I));
}

TEST(Propagation, TipStopsNearTheBoundary) {
  Model model = make_model(structured_mesh(0, 2, 0, 2, 20, 20), steel(), tension_bcs(kSigma), true);
  const CrackPath crack(1, {Vec2(-0.1, 1.05), Vec2(1.45, 1.05)}, {false, true});
  const auto h = run_propagation(model, {crack}, std::vector<double>(10, 1.0), {0.2, std::nullopt, 10});
  ASSERT_FALSE(h.aborted);
  EXPECT_FALSE(h.final_cracks.front().tip_active(TipEnd::End));
  EXPECT_LT(h.steps.size(), 10u);
  bool saw = false;
  for (const auto& s : h.steps)
    for (const auto& e : s.events) saw |= e.find("deactivated") != std::string::npos;
  EXPECT_TRUE(saw);
}

TEST(Propagation, SelfIntersectionDeactivatesTip) {
  Model model = make_model(structured_mesh(0, 2, 0, 2, 20, 20), steel(), tension_bcs(kSigma), true);
  // hook whose tip points back at its first segment
  const CrackPath hook(1, {Vec2(0.25, 1.01), Vec2(1.25, 1.01), Vec2(1.25, 1.23), Vec2(0.75, 1.23), Vec2(0.75, 1.07)},
                       {false, true});
  const auto h = run_propagation(model, {hook}, {1.0, 1.0}, {0.2, std::nullopt, 5});
  ASSERT_FALSE(h.aborted);
  ASSERT_FALSE(h.steps.empty());
  bool refused = false;
  for (const auto& e : h.steps.front().events) refused |= e.find("extension refused") != std::string::npos;
  EXPECT_TRUE(refused);
  EXPECT_FALSE(h.final_cracks.front().tip_active(TipEnd::End));
  EXPECT_EQ(h.final_cracks.front().vertices(), hook.vertices());
}

TEST(Propagation, SeveredBodyAborts) {
  Model model = make_model(structured_mesh(0, 2, 0, 2, 10, 10), steel(),
                           {fixed("bottom"), traction("top", 0.0, kSigma)}, true);
  const CrackPath cut(1, {Vec2(-0.5, 1.05), Vec2(2.5, 1.05)}, {false, false});
  const auto h = run_propagation(model, {cut}, {1.0}, {0.1, std::nullopt, 5});
  EXPECT_TRUE(h.aborted);
  EXPECT_FALSE(h.abort_reason.empty());
  EXPECT_TRUE(h.steps.empty());
  EXPECT_THROW(run_propagation(model, {cut}, {1.0}, {0.0, std::nullopt, 5}), ValidationError);
}

namespace {

bool self_intersects(const CrackPath& c) {
  const auto& v = c.vertices();
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    for (std::size_t j = i + 2; j + 1 < v.size(); ++j)
      if (segments_intersect(v[i], v[i + 1], v[j], v[j + 1])) return true;
  return false;
}

}  // namespace

TEST(Propagation, PlateHoleCrackIsDrawnToTheHole) {
  const RunConfig cfg = load_shipped("plate_hole.cfg");
  const auto h = run_propagation(cfg);
  ASSERT_FALSE(h.aborted);
  const Vec2 centre = cfg.mesh.holes.front().center;
  const auto& v = h.final_cracks.front().vertices();
  ASSERT_GE(v.size(), 8u);
  // tip distances to the hole centre, one per increment
  std::vector<double> d;
  for (std::size_t i = 1; i < v.size(); ++i) d.push_back((v[i] - centre).norm());
  for (std::size_t i = 1; i < 5; ++i) EXPECT_LT(d[i], d[i - 1]);
  for (std::size_t i = 1; i < d.size() / 2; ++i) EXPECT_LT(d[i], d[i - 1]);
  // the path bends upwards, towards the hole
  EXPECT_GT(v.back().y(), 0.0);
  EXPECT_FALSE(self_intersects(h.final_cracks.front()));
  for (const auto& x : v) EXPECT_GT((x - centre).norm(), cfg.mesh.holes.front().radius);
}

TEST(Propagation, TwoHolesStayAntisymmetric) {
  const RunConfig cfg = load_shipped("two_holes.cfg");
  const auto h = run_propagation(cfg);
  ASSERT_FALSE(h.aborted);
  ASSERT_EQ(h.final_cracks.size(), 2u);
  const auto& a = h.final_cracks[0].vertices();
  const auto& b = h.final_cracks[1].vertices();
  ASSERT_EQ(a.size(), b.size());
  EXPECT_GT(a.size(), 3u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LT((a[i] + b[i]).norm(), cfg.mesh.cell_size) << i;
  EXPECT_FALSE(self_intersects(h.final_cracks[0]));
  EXPECT_FALSE(self_intersects(h.final_cracks[1]));
}

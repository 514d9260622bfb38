#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "instanton/geometry/decay_fit.hpp"
#include "instanton/geometry/kernel.hpp"
#include "instanton/geometry/volume.hpp"
#include "instanton/models/alg.hpp"
#include "instanton/models/algstar.hpp"
#include "support/oracle_models.hpp"

using namespace instanton;

namespace {

AlgModel flat_model() {
  AlgParams p;
  p.R = 1.0;
  return AlgModel(p);
}

AlgStarModel gh_model(int nu = 2) {
  AlgStarParams p;
  p.nu = nu;
  p.R = 30.0;
  return AlgStarModel(p);
}

}  // namespace

TEST(Forms, WedgeOfBasisCovectorsIsElementary) {
  const Mat4 w = wedge(Vec4(Vec4::Unit(0)), Vec4(Vec4::Unit(1)));
  EXPECT_EQ(w(0, 1), 1.0);
  EXPECT_EQ(w(1, 0), -1.0);
  EXPECT_EQ(w.cwiseAbs().sum(), 2.0);
}

TEST(Forms, WedgeTopOfStandardSymplecticForm) {
  const Mat4 w = wedge(Vec4(Vec4::Unit(0)), Vec4(Vec4::Unit(1))) + wedge(Vec4(Vec4::Unit(2)), Vec4(Vec4::Unit(3)));
  // (e01 + e23)^2 = 2 e0123
  EXPECT_DOUBLE_EQ(wedge_top(w, w), 2.0);
}

TEST(Forms, HodgeStarOfFlatKahlerFormsIsSelfDual) {
  const AlgModel m = flat_model();
  const HyperkahlerTensors t = m.evaluate({2.0, 0.5, 0.1, 0.2});
  for (const Mat4& w : t.forms) EXPECT_LT(max_abs(hodge_star(t.metric, w, 1) - w), 1e-15);
}

TEST(ExteriorDerivative, PolynomialTwoFormMatchesClosedForm) {
  // w = q0^2 dx1^dx2 + sin(q3) dx0^dx1, so dw = 2 q0 dx012 + cos(q3) dx013.
  const auto field = [](const ChartPoint& q) {
    return Mat4(q[0] * q[0] * wedge(Vec4(Vec4::Unit(1)), Vec4(Vec4::Unit(2))) +
                std::sin(q[3]) * wedge(Vec4(Vec4::Unit(0)), Vec4(Vec4::Unit(1))));
  };
  const ChartPoint p(0.7, -0.2, 0.4, 1.1);
  double prev = 0.0;
  for (double h : {1e-2, 5e-3}) {
    const ThreeForm d = exterior_derivative_fd(field, p, Vec4::Constant(h));
    EXPECT_NEAR(d[0], 2.0 * p[0], 1e-12);
    EXPECT_NEAR(d[2], 0.0, 1e-14);
    EXPECT_NEAR(d[3], 0.0, 1e-14);
    const double err = std::abs(d[1] - std::cos(p[3]));
    EXPECT_LT(err, 1e-4);
    if (prev > 0.0) EXPECT_NEAR(std::log2(prev / err), 2.0, 0.05);
    prev = err;
  }
}

TEST(ExteriorDerivative, OneFormExactDerivative) {
  // alpha = q0 q1 dx2: d alpha = q1 dx0^dx2 + q0 dx1^dx2.
  const auto alpha = [](const ChartPoint& q) { return Vec4(0.0, 0.0, q[0] * q[1], 0.0); };
  const ChartPoint p(0.3, 0.8, 0.0, 0.0);
  const Mat4 d = exterior_derivative_1form_fd(alpha, p, Vec4::Constant(1e-3));
  EXPECT_NEAR(d(0, 2), p[1], 1e-12);
  EXPECT_NEAR(d(1, 2), p[0], 1e-12);
  EXPECT_NEAR(d(2, 0), -p[1], 1e-12);
  EXPECT_NEAR(d(0, 1), 0.0, 1e-12);
}

TEST(ExteriorDerivative, StencilOutsideChartRaisesDomainError) {
  const AlgStarModel gh = gh_model();
  EXPECT_THROW(exterior_derivative_fd(gh, 1, {30.0001, 0.0, 0.0, 0.0}, 1e-2), DomainError);
  EXPECT_THROW(exterior_derivative_fd(gh, 4, {60.0, 0.0, 0.0, 0.0}, 1e-4), InvalidParams);
  EXPECT_THROW(exterior_derivative_fd(gh, 1, {60.0, 0.0, 0.0, 0.0}, 0.0), InvalidParams);
}

TEST(Convergence, GibbonsHawkingFormsCloseAtSecondOrder) {
  const AlgStarModel gh = gh_model(3);
  for (int f = 1; f <= 3; ++f) {
    const ConvergenceCheck c = closedness_convergence(gh, f, {80.0, 0.4, 1.3, 2.0}, 1e-3);
    EXPECT_TRUE(c.passes(1.9)) << "form " << f << " order " << c.order;
  }
}

TEST(Convergence, RoundoffLimitedWhenResidualsVanish) {
  const ConvergenceCheck c = convergence(0.0, 0.0, 1e-12);
  EXPECT_TRUE(c.roundoff_limited);
  EXPECT_TRUE(c.passes(1.9));
  const ConvergenceCheck d = convergence(1e-4, 5e-5, 1e-12);
  EXPECT_FALSE(d.roundoff_limited);
  EXPECT_NEAR(d.order, 1.0, 1e-12);
  EXPECT_FALSE(d.passes(1.9));
}

TEST(ComplexStructures, FlatTripleSatisfiesQuaternionRelations) {
  const AlgModel m = flat_model();
  const ChartPoint p(3.0, 1.0, 0.2, 0.1);
  const ComplexStructures cs = complex_structures_at(m, p);
  EXPECT_LT(quaternion_residual(cs, m.metric_at(p)), 1e-15);
  // ω(X, Y) = g(IX, Y)
  const HyperkahlerTensors t = m.evaluate(p);
  const Vec4 x(0.3, -1.0, 2.0, 0.5), y(1.0, 0.2, -0.7, 0.4);
  EXPECT_NEAR(x.dot(t.forms[0] * y), (cs.I * x).dot(t.metric * y), 1e-15);
}

TEST(ComplexStructures, BrokenTripleIsDetected) {
  const AlgModel m = flat_model();
  const oracles::RescaledFormModel broken(m, 1.5);
  const ChartPoint p(3.0, 1.0, 0.2, 0.1);
  EXPECT_GT(quaternion_residual(complex_structures_at(broken, p), broken.metric_at(p)), 0.1);
  EXPECT_GT(check_wedge_identities(broken, p).residual, 0.1);
}

TEST(ComplexStructures, DegenerateMetricRaises) {
  HyperkahlerTensors t;
  t.metric = Vec4(1.0, 1.0, 1.0, 0.0).asDiagonal();
  EXPECT_THROW(complex_structures(t), SingularMetricError);
}

TEST(WedgeIdentities, GibbonsHawkingAtRoundingLevel) {
  const AlgStarModel gh = gh_model(1);
  const WedgeReport r = check_wedge_identities(gh, {45.0, -2.0, 4.0, 1.0});
  EXPECT_LT(r.residual, 1e-13);
  EXPECT_GT(r.products[0][0], 0.0);
}

TEST(Curvature, RoundSphereTimesTorusGivesTwoOverRhoSquared) {
  for (double rho : {0.5, 1.0, 3.0}) {
    const oracles::SphereTorusModel m(rho);
    for (double theta : {0.4, 1.2, 2.5}) {
      const CurvatureReport c = riemann_norm_fd(m, {theta, 0.3, 0.0, 0.0}, 1e-3);
      EXPECT_NEAR(c.riemann_norm, 2.0 / (rho * rho), 1e-5 / (rho * rho)) << "rho " << rho << " theta " << theta;
      EXPECT_LT(c.truncation_estimate, 1e-4 * c.riemann_norm);
    }
  }
}

TEST(Curvature, FlatModelHasZeroCurvature) {
  const AlgModel m = flat_model();
  const CurvatureReport c = riemann_norm_fd(m, {4.0, 2.0, 0.3, 0.3});
  EXPECT_EQ(c.riemann_norm, 0.0);
  EXPECT_LE(c.riemann_norm, c.truncation_estimate);
}

TEST(Curvature, IllConditionedMetricRaises) {
  const AlgStarModel gh = gh_model(1);
  EXPECT_THROW(riemann_norm_fd(gh, {100.0, 0.0, 0.0, 0.0}, 1e-4, 1.0), IllConditionedError);
}

TEST(Curvature, JacobiScalingRemovesDiagonalScales) {
  const Mat4 g = Vec4(1e6, 1.0, 1e-6, 3.0).asDiagonal();
  EXPECT_NEAR(jacobi_condition_number(g), 1.0, 1e-12);
}

TEST(DeckInvariance, GibbonsHawkingMapsPreserveTheTriple) {
  const AlgStarModel gh = gh_model(2);
  const ChartPoint p(60.0, 0.7, 1.1, 0.4);
  for (std::size_t d = 0; d < gh.deck_transformations().size(); ++d)
    EXPECT_LT(check_deck_invariance(gh, p, d).max, 1e-13) << gh.deck_transformations()[d].name;
  EXPECT_THROW(check_deck_invariance(gh, p, 99), InvalidParams);
}

TEST(DeckInvariance, ExactJacobiansMatchFiniteDifferences) {
  const AlgStarModel gh = gh_model(2);
  const ChartPoint p(60.0, 0.7, 1.1, 0.4);
  for (const auto& deck : gh.deck_transformations()) {
    const Mat4 fd = jacobian_fd(deck.map, p, Vec4::Constant(1e-4));
    EXPECT_LT(max_abs(fd - deck.jacobian(p)), 1e-8) << deck.name;
  }
}

TEST(Volume, FlatCornerMatchesExactArea) {
  AlgParams params;  // β = 1/2, τ = i, L = 1
  params.R = 2.0;
  const AlgModel m(params);
  const double t = 40.0;
  const VolumeEstimate e = volume_of_ball_mc(m, m.cross_section_point(3.0, {0.5, 0.5, 0.5}), t, 100000, 7);
  const double exact = std::numbers::pi * 0.5 * (t * t - params.R * params.R);
  EXPECT_LT(std::abs(e.estimate - exact), 4.0 * e.standard_error);
  EXPECT_LT(e.standard_error / exact, 0.01);
}

TEST(Volume, ResultDoesNotDependOnWorkerCount) {
  const AlgStarModel gh = gh_model(1);
  const ChartPoint c = gh.cross_section_point(60.0, {0.5, 0.5, 0.5});
  const double t = gh.proxy_at_radius(300.0);
  const VolumeEstimate a = volume_of_ball_mc(gh, c, t, 20000, 11, 1);
  const VolumeEstimate b = volume_of_ball_mc(gh, c, t, 20000, 11, 3);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.standard_error, b.standard_error);
  EXPECT_EQ(a.accepted, b.accepted);
}

TEST(Volume, RejectsBadArguments) {
  const AlgModel m = flat_model();
  const ChartPoint c = m.cross_section_point(2.0, {0.5, 0.5, 0.5});
  EXPECT_THROW(volume_of_ball_mc(m, c, 10.0, 100, 1), InvalidParams);
  EXPECT_THROW(volume_of_ball_mc(m, c, -1.0, 10000, 1), InvalidParams);
  EXPECT_THROW(volume_of_ball_mc(m, c, 1.5, 10000, 1), DomainError);
}

TEST(DecayFit, HaltonSequenceIsInUnitCube) {
  EXPECT_DOUBLE_EQ(radical_inverse(1, 2), 0.5);
  EXPECT_DOUBLE_EQ(radical_inverse(3, 2), 0.75);
  EXPECT_DOUBLE_EQ(radical_inverse(1, 3), 1.0 / 3.0);
  for (std::uint64_t i = 0; i < 100; ++i)
    for (double v : halton3(i)) {
      EXPECT_GE(v, 0.0);
      EXPECT_LT(v, 1.0);
    }
}

TEST(DecayFit, IdenticalModelsAreExactMatch) {
  const AlgStarModel gh = gh_model(1);
  const DecayFit f = decay_fit(gh, gh, default_decay_radii(gh.inner_radius()), DecayQuantity::metric, 8);
  EXPECT_TRUE(f.exact_match);
}

TEST(DecayFit, NeedsFourRadiiAndMatchingCharts) {
  const AlgStarModel gh = gh_model(1);
  EXPECT_THROW(decay_fit(gh, gh, {60, 120, 240}, DecayQuantity::metric), InsufficientData);
  const AlgModel flat = flat_model();
  EXPECT_THROW(decay_fit(gh, flat, {60, 120, 240, 480}, DecayQuantity::metric), InvalidParams);
  EXPECT_THROW(decay_fit(gh, gh, {60, 240, 120, 480}, DecayQuantity::metric), InvalidParams);
}

TEST(DecayFit, DefaultRadiiAreGeometric) {
  const auto r = default_decay_radii(3.0);
  ASSERT_EQ(r.size(), 8u);
  EXPECT_DOUBLE_EQ(r.front(), 6.0);
  EXPECT_DOUBLE_EQ(r.back(), 768.0);
}

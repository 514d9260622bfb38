#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "instanton/geometry/decay_fit.hpp"
#include "instanton/geometry/kernel.hpp"
#include "instanton/models/semiflat.hpp"

using namespace instanton;
using cd = std::complex<double>;

namespace {

SemiFlatParams sf(int nu, double eps, double k0) {
  SemiFlatParams p;
  p.nu = nu;
  p.epsilon = eps;
  p.k0 = k0;
  return p;
}

const double pi = std::numbers::pi;

struct ParamCase {
  double eps, k0;
};
const ParamCase kCases[] = {{4.0 * pi, 2.0}, {2.0 * pi, 1.0}, {8.0 * pi, 0.5}};

/// g = h |du|^2 + c |dv - γ du|^2 written out from the coordinates, with k(ξ) = i k0 (1 + Σ c_j ξ^j).
Mat4 closed_form_metric(const SemiFlatParams& p, const ChartPoint& x) {
  const cd I(0.0, 1.0);
  const cd u(x[0], x[1]);
  const double au = std::abs(u), abs_log = std::abs(std::log(au));
  double arg = std::arg(u);
  if (arg < 0.0) arg += 2.0 * pi;
  const cd log_u(std::log(au), arg);
  const double V = p.nu / pi * abs_log;
  const cd tau = double(p.nu) / (pi * I) * log_u;
  const cd v = x[2] + x[3] * tau;
  cd series = 1.0, power = 1.0;
  for (double c : p.k_series) {
    power *= u * u;
    series += c * power;
  }
  const cd k = I * p.k0 * series;
  const CVec4 du(1.0, I, 0.0, 0.0);
  const CVec4 dv = x[3] * double(p.nu) / (pi * I * u) * du + CVec4(0.0, 0.0, 1.0, tau);
  const cd gamma = v.imag() / (I * u * abs_log);
  const CVec4 alpha = dv - gamma * du;
  const double h = V * std::norm(k) / (p.epsilon * std::pow(au, 4));
  const double c = pi * p.epsilon / (p.nu * abs_log);
  return (h * du * du.adjoint() + c * alpha * alpha.adjoint()).real();
}

}  // namespace

TEST(SemiFlat, MetricMatchesClosedForm) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(0.02, 0.98);
  for (int nu = 1; nu <= 4; ++nu)
    for (const auto& pc : kCases)
      for (bool perturbed : {false, true}) {
        SemiFlatParams p = sf(nu, pc.eps, pc.k0);
        if (perturbed) p.k_series = {0.7, -0.2};
        const SemiFlatModel m(p);
        for (int k = 0; k < 5; ++k) {
          const ChartPoint x = m.sample_point({U(rng), U(rng), U(rng), U(rng)});
          const Mat4 want = closed_form_metric(p, x);
          EXPECT_LT(max_abs(m.metric_at(x) - want) / max_abs(want), 1e-12);
        }
      }
}

TEST(SemiFlat, HyperkahlerClosedAndDeckInvariant) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(0.02, 0.98);
  for (const auto& pc : kCases) {
    const SemiFlatModel m(sf(2, pc.eps, pc.k0));
    for (int k = 0; k < 5; ++k) {
      const ChartPoint x = m.sample_point({U(rng), U(rng), U(rng), U(rng)});
      EXPECT_LT(check_wedge_identities(m, x).residual, 1e-12);
      EXPECT_LT(quaternion_residual(complex_structures_at(m, x), m.metric_at(x)), 1e-12);
      for (int f = 1; f <= 3; ++f) EXPECT_TRUE(closedness_convergence(m, f, x, 1e-4).passes(1.9));
      for (std::size_t d = 0; d < m.deck_transformations().size(); ++d)
        EXPECT_LT(check_deck_invariance(m, x, d).max, 1e-12) << m.deck_transformations()[d].name;
    }
  }
}

TEST(SemiFlat, DomainExcludesCutAndOrigin) {
  const SemiFlatModel m(sf(1, 4.0 * pi, 2.0));
  EXPECT_FALSE(m.in_domain({0.1, 0.0, 0.0, 0.0}));
  EXPECT_FALSE(m.in_domain({0.0, 0.0, 0.0, 0.0}));
  EXPECT_FALSE(m.in_domain({0.5, 0.5, 0.0, 0.0}));
  EXPECT_TRUE(m.in_domain({-0.1, 0.0, 0.0, 0.0}));
}

TEST(SemiFlatBridge, IsometryWithGibbonsHawking) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(0.02, 0.98);
  for (int nu = 1; nu <= 4; ++nu)
    for (const auto& pc : kCases) {
      const SemiFlatParams p = sf(nu, pc.eps, pc.k0);
      const SemiFlatModel m(p);
      for (int k = 0; k < 10; ++k) {
        const ChartPoint x = m.sample_point({U(rng), U(rng), U(rng), U(rng)});
        const IsometryReport r = verify_isometry(p, x);
        EXPECT_LT(r.max, 1e-9);
        EXPECT_LT(r.jacobian_residual, 1e-6);
      }
    }
}

TEST(SemiFlatBridge, IsometryRejectsNonConstantK) {
  SemiFlatParams p = sf(1, 4.0 * pi, 2.0);
  p.k_series = {1.0};
  EXPECT_THROW(verify_isometry(p, {-0.1, 0.05, 0.2, 0.3}), InvalidParams);
}

TEST(SemiFlatBridge, DictionaryRoundTrip) {
  for (int nu = 1; nu <= 4; ++nu)
    for (const auto& pc : kCases) {
      const SemiFlatParams p = sf(nu, pc.eps, pc.k0);
      EXPECT_LT(dictionary_round_trip(p).relative_error, 1e-12);
      EXPECT_NEAR(p.L() * p.L() * 4.0 * pi * pi, p.epsilon, 1e-12 * p.epsilon);
    }
}

TEST(SemiFlatBridge, CoordinateChangeRoundTrip) {
  const SemiFlatParams p = sf(3, 2.0 * pi, 1.0);
  const ChartPoint x(-0.07, 0.11, 0.3, 0.8);
  const ChartPoint q = transform_to_gh(p, x);
  EXPECT_LT((transform_from_gh(p, q) - x).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(q[0], 2.0 * pi * p.k0 / (p.epsilon * std::hypot(x[0], x[1])), 1e-12);
}

TEST(SemiFlatBridge, TwinIsExactMatchAndPerturbationDecays) {
  const SemiFlatParams p = sf(2, 4.0 * pi, 2.0);
  const SemiFlatModel m(p);
  const auto twin = make_semiflat_gh_model(p);
  const auto radii = default_decay_radii(m.inner_radius());
  EXPECT_TRUE(decay_fit(m, *twin, radii, DecayQuantity::metric, 16).exact_match);

  SemiFlatParams q = p;
  q.k_series = {1.0};
  const SemiFlatModel perturbed(q);
  const DecayFit f = decay_fit(perturbed, *twin, radii, DecayQuantity::metric, 16);
  EXPECT_FALSE(f.exact_match);
  EXPECT_GT(f.order, 1.5);
  EXPECT_TRUE(f.log_correction);
  EXPECT_NEAR(f.order_with_log, 2.0, 0.2);
}

TEST(MomentMap, HamiltoniansGenerateTheCircleAction) {
  for (const auto& pc : kCases) {
    const SemiFlatParams p = sf(2, pc.eps, pc.k0);
    const SemiFlatModel m(p);
    for (double r : {3.0, 10.0, 40.0}) {
      const ChartPoint x = m.cross_section_point(r * m.inner_radius(), {0.3, 0.6, 0.2});
      for (int i = 1; i <= 3; ++i) EXPECT_TRUE(moment_map_check(p, x, i).passes(1.9)) << i;
    }
  }
}

TEST(MomentMap, OutsideSeriesRadiusRaisesBranchError) {
  SemiFlatParams p = sf(1, 4.0 * pi, 2.0);
  p.k_series = {0.5};
  p.series_radius = 1e-3;
  EXPECT_THROW(moment_map(p, {-0.1, 0.05, 0.2, 0.3}), BranchError);
  EXPECT_NO_THROW(moment_map(p, {-0.01, 0.005, 0.2, 0.3}));
}

TEST(Monodromy, MatchesIStarMatrixExactly) {
  for (int nu = 1; nu <= 4; ++nu) {
    const auto a = monodromy_action_check(nu);
    EXPECT_EQ(a[0][0], -1);
    EXPECT_EQ(a[0][1], -nu);
    EXPECT_EQ(a[1][0], 0);
    EXPECT_EQ(a[1][1], -1);
    const long det = (a[0][0] - 1) * (a[1][1] - 1) - a[0][1] * a[1][0];
    EXPECT_EQ(det, 4);
    EXPECT_LT(monodromy_action(nu).fit_residual, 1e-9);
  }
}

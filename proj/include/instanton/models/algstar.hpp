#pragma once

// Gibbons–Hawking ALG* model on (R, inf) x Nil^3_{2ν}, chart (r, θ1, θ2, θ3):
//   V = κ0 + (ν/π) log r,   Θ = (ν/π)(dθ3 - θ2 dθ1),
//   g = L² [V (dr² + r² dθ1² + dθ2²) + V^{-1} Θ²],
//   ω1 = L² (V dx^dy + dθ2^Θ), ω2 = L² (V dx^dθ2 - dy^Θ), ω3 = L² (dx^Θ + V dy^dθ2),
// with x + i y = r e^{iθ1}.

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "instanton/errors.hpp"
#include "instanton/geometry/forms.hpp"
#include "instanton/geometry/model.hpp"

namespace instanton {

struct AlgStarParams {
  int nu = 1;
  double kappa0 = 0.0;
  double L = 1.0;
  double R = 30.0;

  /// Smallest admissible R: the potential exceeds 1 beyond it.
  static double min_radius(int nu, double kappa0) {
    return std::exp(std::numbers::pi / nu * (1.0 - kappa0));
  }

  void validate() const {
    if (nu < 1) throw InvalidParams("ALG* model needs nu >= 1");
    if (!(L > 0.0)) throw InvalidParams("ALG* model needs L > 0");
    if (!(R > min_radius(nu, kappa0))) {
      std::ostringstream os;
      os << "ALG* model needs R > exp((pi/nu)(1 - kappa0)) = " << min_radius(nu, kappa0) << ", got R = " << R;
      throw InvalidParams(os.str());
    }
  }
};

/// κ0 + (ν/π) log r, for r > R.
inline double potential_V(const AlgStarParams& params, double r) {
  if (!(r > params.R)) throw DomainError("potential_V: r must exceed R");
  return params.kappa0 + params.nu / std::numbers::pi * std::log(r);
}

class AlgStarModel final : public GeometryModel {
 public:
  explicit AlgStarModel(const AlgStarParams& params) : params_(params) {
    params_.validate();
    build_decks();
  }

  const AlgStarParams& params() const { return params_; }

  std::string name() const override { return "ALG* Gibbons-Hawking model"; }
  std::string chart() const override { return "gibbons-hawking"; }

  double potential(double r) const { return params_.kappa0 + params_.nu / std::numbers::pi * std::log(r); }

  HyperkahlerTensors evaluate(const ChartPoint& p) const override {
    const double r = p[0], t1 = p[1], t2 = p[2];
    const double V = potential(r);
    const double c = params_.nu / std::numbers::pi;
    const double L2 = params_.L * params_.L;
    const Vec4 dr = Vec4::Unit(0), dt1 = Vec4::Unit(1), dt2 = Vec4::Unit(2), dt3 = Vec4::Unit(3);
    const Vec4 theta = c * (dt3 - t2 * dt1);
    const Vec4 dx = std::cos(t1) * dr - r * std::sin(t1) * dt1;
    const Vec4 dy = std::sin(t1) * dr + r * std::cos(t1) * dt1;

    HyperkahlerTensors t;
    t.metric = L2 * (V * (dr * dr.transpose() + r * r * dt1 * dt1.transpose() + dt2 * dt2.transpose()) +
                     theta * theta.transpose() / V);
    t.forms[0] = L2 * (V * r * wedge(dr, dt1) + wedge(dt2, theta));
    t.forms[1] = L2 * (V * wedge(dx, dt2) - wedge(dy, theta));
    t.forms[2] = L2 * (wedge(dx, theta) + V * wedge(dy, dt2));
    return t;
  }

  bool in_domain(const ChartPoint& p) const override {
    return p.allFinite() && p[0] > params_.R;
  }

  const std::vector<DeckTransformation>& deck_transformations() const override { return decks_; }

  double radial_proxy(const ChartPoint& p) const override { return proxy_at_radius(p[0]); }

  double proxy_at_radius(double r) const { return r * std::sqrt(potential(r)) * params_.L; }

  /// Inverse of r -> s(r) on (R, inf); s is increasing there because V > 1.
  double radius_for_proxy(double s) const {
    double lo = params_.R, hi = params_.R * 2.0;
    while (proxy_at_radius(hi) < s) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (proxy_at_radius(mid) < s ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

  Vec4 step_scales(const ChartPoint& p) const override { return {p[0], 1.0, 1.0, 1.0}; }

  double inner_radius() const override { return params_.R; }

  double theta3_period() const { return 2.0 * std::numbers::pi * std::numbers::pi / params_.nu; }

  ChartPoint cross_section_point(double radius, const std::array<double, 3>& u) const override {
    const double pi = std::numbers::pi;
    return {radius, -pi + 2.0 * pi * u[0], 2.0 * pi * u[1], theta3_period() * u[2]};
  }

  SamplingBox fundamental_box(double proxy_bound) const override {
    const double pi = std::numbers::pi;
    SamplingBox box;
    const double r_max = proxy_bound > proxy_at_radius(params_.R) ? radius_for_proxy(proxy_bound) : params_.R;
    box.lo = {params_.R, -pi, 0.0, 0.0};
    box.hi = {r_max, pi, 2.0 * pi, theta3_period()};
    box.quotient_weight = 0.5;  // ι
    return box;
  }

  bool in_fundamental_domain(const ChartPoint& p) const override {
    const double pi = std::numbers::pi;
    return p[1] >= -pi && p[1] < pi && p[2] >= 0.0 && p[2] < 2.0 * pi && p[3] >= 0.0 &&
           p[3] < theta3_period();
  }

 private:
  void build_decks() {
    const double pi = std::numbers::pi;
    decks_.push_back(detail::translation("theta1 + 2pi", {0.0, 2.0 * pi, 0.0, 0.0}));
    {
      Mat4 jac = Mat4::Identity();
      jac(3, 1) = 2.0 * pi;
      decks_.push_back({"theta2 + 2pi, theta3 + 2pi theta1",
                        [](const ChartPoint& p) {
                          return ChartPoint(p[0], p[1], p[2] + 2.0 * std::numbers::pi,
                                            p[3] + 2.0 * std::numbers::pi * p[1]);
                        },
                        [jac](const ChartPoint&) { return jac; }});
    }
    decks_.push_back(detail::translation("theta3 + 2pi^2/nu", {0.0, 0.0, 0.0, theta3_period()}));
    decks_.push_back({"iota",
                      [](const ChartPoint& p) {
                        return ChartPoint(p[0], p[1] + std::numbers::pi, -p[2], -p[3]);
                      },
                      [](const ChartPoint&) {
                        return Mat4(Vec4(1.0, 1.0, -1.0, -1.0).asDiagonal());
                      }});
  }

  AlgStarParams params_;
  std::vector<DeckTransformation> decks_;
};

inline AlgStarModel make_algstar_model(const AlgStarParams& params) { return AlgStarModel(params); }

}  // namespace instanton

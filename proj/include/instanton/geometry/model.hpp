#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "instanton/errors.hpp"
#include "instanton/geometry/forms.hpp"

namespace instanton {

/// Metric and the three Kähler forms at one chart point.
struct HyperkahlerTensors {
  Mat4 metric = Mat4::Identity();
  std::array<Mat4, 3> forms{Mat4::Zero(), Mat4::Zero(), Mat4::Zero()};

  /// 0 -> metric, 1..3 -> omega_1..omega_3.
  const Mat4& component(int index) const { return index == 0 ? metric : forms.at(index - 1); }
};

/// A smooth map of the chart that descends to the identity on the quotient.
struct DeckTransformation {
  std::string name;
  std::function<ChartPoint(const ChartPoint&)> map;
  std::function<Mat4(const ChartPoint&)> jacobian;  // exact; all current maps are affine
};

/// Coordinate box that contains a fundamental domain intersected with a proxy ball.
struct SamplingBox {
  Vec4 lo = Vec4::Zero();
  Vec4 hi = Vec4::Zero();
  double quotient_weight = 1.0;  // 1/|G| for finite quotients not cut out by the box

  double volume() const { return (hi - lo).prod(); }
};

/// Coordinate-chart geometry exposing a hyperkähler triple.
class GeometryModel {
 public:
  virtual ~GeometryModel() = default;

  virtual std::string name() const = 0;
  /// Identifies the chart; two models can only be compared when these agree.
  virtual std::string chart() const = 0;

  virtual HyperkahlerTensors evaluate(const ChartPoint& p) const = 0;
  virtual bool in_domain(const ChartPoint& p) const = 0;
  virtual const std::vector<DeckTransformation>& deck_transformations() const = 0;
  /// Distance proxy: s = r V^{1/2} L for ALG*, |U| for ALG.
  virtual double radial_proxy(const ChartPoint& p) const = 0;

  /// Characteristic coordinate lengths; relative FD steps are multiplied by these.
  virtual Vec4 step_scales(const ChartPoint& p) const = 0;

  /// Inner boundary of the chart in the model's radial coordinate.
  virtual double inner_radius() const = 0;
  /// Point on the cross-section at radial coordinate `radius`; `unit` in [0,1)^3.
  virtual ChartPoint cross_section_point(double radius, const std::array<double, 3>& unit) const = 0;

  virtual SamplingBox fundamental_box(double proxy_bound) const = 0;
  virtual bool in_fundamental_domain(const ChartPoint& p) const = 0;

  virtual Mat4 metric_at(const ChartPoint& p) const { return evaluate(p).metric; }

  /// Generic interior point: radius log-uniform in [lo, hi] * inner_radius().
  ChartPoint sample_point(const std::array<double, 4>& unit, double lo = 2.0,
                          double hi = 50.0) const {
    const double radius = inner_radius() * lo * std::exp(unit[0] * std::log(hi / lo));
    return cross_section_point(radius, {unit[1], unit[2], unit[3]});
  }

  void require_domain(const ChartPoint& p, const char* what) const {
    if (!in_domain(p))
      throw DomainError(std::string(what) + ": point outside the " + name() + " chart");
  }
};

namespace detail {

inline Mat4 identity_jacobian(const ChartPoint&) { return Mat4::Identity(); }

inline DeckTransformation translation(std::string name, const Vec4& shift) {
  return {std::move(name), [shift](const ChartPoint& p) { return ChartPoint(p + shift); },
          identity_jacobian};
}

}  // namespace detail

}  // namespace instanton

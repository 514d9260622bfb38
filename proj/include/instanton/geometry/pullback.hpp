#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "instanton/geometry/forms.hpp"
#include "instanton/geometry/model.hpp"

namespace instanton {

/// Target model tensors pulled back to the chart of a source model through an
/// explicit map with exact Jacobian. Shares the source chart, domain and
/// sampling geometry, so it can be compared pointwise against the source.
class PullbackModel final : public GeometryModel {
 public:
  using Map = std::function<ChartPoint(const ChartPoint&)>;
  using Jacobian = std::function<Mat4(const ChartPoint&)>;

  PullbackModel(std::shared_ptr<const GeometryModel> source, std::shared_ptr<const GeometryModel> target,
                Map map, Jacobian jacobian, std::string name)
      : source_(std::move(source)),
        target_(std::move(target)),
        map_(std::move(map)),
        jacobian_(std::move(jacobian)),
        name_(std::move(name)) {}

  std::string name() const override { return name_; }
  std::string chart() const override { return source_->chart(); }

  HyperkahlerTensors evaluate(const ChartPoint& p) const override {
    const HyperkahlerTensors t = target_->evaluate(map_(p));
    const Mat4 j = jacobian_(p);
    HyperkahlerTensors out;
    out.metric = pullback(t.metric, j);
    for (int i = 0; i < 3; ++i) out.forms[i] = pullback(t.forms[i], j);
    return out;
  }

  /// Source domain; the target formulas remain valid wherever the source ones are.
  bool in_domain(const ChartPoint& p) const override { return source_->in_domain(p); }

  /// Deck maps of the source chart; only meaningful when the map intertwines them.
  const std::vector<DeckTransformation>& deck_transformations() const override {
    return source_->deck_transformations();
  }

  double radial_proxy(const ChartPoint& p) const override { return source_->radial_proxy(p); }
  Vec4 step_scales(const ChartPoint& p) const override { return source_->step_scales(p); }
  double inner_radius() const override { return source_->inner_radius(); }
  ChartPoint cross_section_point(double radius, const std::array<double, 3>& unit) const override {
    return source_->cross_section_point(radius, unit);
  }
  SamplingBox fundamental_box(double proxy_bound) const override {
    return source_->fundamental_box(proxy_bound);
  }
  bool in_fundamental_domain(const ChartPoint& p) const override {
    return source_->in_fundamental_domain(p);
  }

  const GeometryModel& target() const { return *target_; }
  ChartPoint map(const ChartPoint& p) const { return map_(p); }

 private:
  std::shared_ptr<const GeometryModel> source_;
  std::shared_ptr<const GeometryModel> target_;
  Map map_;
  Jacobian jacobian_;
  std::string name_;
};

}  // namespace instanton

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "instanton/errors.hpp"
#include "instanton/geometry/forms.hpp"
#include "instanton/geometry/model.hpp"

namespace instanton {

/// Radical-inverse (van der Corput) value of `index` in `base`.
inline double radical_inverse(std::uint64_t index, unsigned base) {
  double inv = 1.0 / base, f = inv, out = 0.0;
  while (index > 0) {
    out += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return out;
}

/// Point `i` of the 3D Halton sequence (bases 2, 3, 5), skipping the origin.
inline std::array<double, 3> halton3(std::uint64_t i) {
  return {radical_inverse(i + 1, 2), radical_inverse(i + 1, 3), radical_inverse(i + 1, 5)};
}

enum class DecayQuantity { metric = 0, form1 = 1, form2 = 2, form3 = 3 };

inline const char* to_string(DecayQuantity q) {
  switch (q) {
    case DecayQuantity::metric: return "metric";
    case DecayQuantity::form1: return "form1";
    case DecayQuantity::form2: return "form2";
    case DecayQuantity::form3: return "form3";
  }
  return "?";
}

struct DecaySample {
  double radius = 0.0;
  double proxy = 0.0;       // s at this radius
  double difference = 0.0;  // sup over the cross-section of |T_a - T_b| measured in g_b
};

struct DecayFit {
  std::vector<DecaySample> samples;
  bool exact_match = false;
  double order = 0.0;           // n in |T_a - T_b| ~ s^{-n}
  double order_stderr = 0.0;
  double rms_residual = 0.0;    // of the power-law fit in log space
  // Fit log d = a - n' log s + c log log s.
  double order_with_log = 0.0;
  double order_with_log_stderr = 0.0;
  double log_coefficient = 0.0;
  double rms_residual_with_log = 0.0;
  bool log_correction = false;
};

inline constexpr double kExactMatchThreshold = 1e-10;

/// Geometric radii inner * 2^k for k = 1..8.
inline std::vector<double> default_decay_radii(double inner) {
  std::vector<double> r;
  for (int k = 1; k <= 8; ++k) r.push_back(inner * std::ldexp(1.0, k));
  return r;
}

namespace decay_detail {

struct LinearFit {
  Eigen::VectorXd coef;
  Eigen::VectorXd stderr_coef;
  double rms = 0.0;
};

inline LinearFit least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  LinearFit f;
  f.coef = X.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd res = y - X * f.coef;
  const auto n = static_cast<double>(y.size());
  f.rms = std::sqrt(res.squaredNorm() / n);
  const double dof = n - static_cast<double>(X.cols());
  const double sigma2 = dof > 0 ? res.squaredNorm() / dof : 0.0;
  const Eigen::MatrixXd cov = sigma2 * (X.transpose() * X).inverse();
  f.stderr_coef = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
  return f;
}

}  // namespace decay_detail

/// Fits the decay order of the difference between two models sharing a chart.
/// Cross-sections are sampled at `radii` in model_b's radial coordinate via a
/// Halton sequence; sup-norms are taken with model_b's metric.
inline DecayFit decay_fit(const GeometryModel& model_a, const GeometryModel& model_b,
                          const std::vector<double>& radii, DecayQuantity quantity,
                          std::size_t points_per_radius = 64) {
  if (model_a.chart() != model_b.chart())
    throw InvalidParams("decay_fit: models use different charts (" + model_a.chart() + " vs " +
                        model_b.chart() + ")");
  if (radii.size() < 4) throw InsufficientData("decay_fit needs at least 4 radii");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1])) throw InvalidParams("decay_fit radii must be strictly increasing");
  if (points_per_radius == 0) throw InvalidParams("decay_fit needs at least one point per radius");

  const int c = static_cast<int>(quantity);
  DecayFit fit;
  for (double radius : radii) {
    DecaySample s{radius, 0.0, 0.0};
    std::size_t used = 0;
    for (std::size_t i = 0; i < points_per_radius; ++i) {
      const ChartPoint p = model_b.cross_section_point(radius, halton3(i));
      if (!model_a.in_domain(p) || !model_b.in_domain(p)) continue;
      const HyperkahlerTensors ta = model_a.evaluate(p), tb = model_b.evaluate(p);
      s.difference = std::max(s.difference, tensor_norm(ta.component(c) - tb.component(c), tb.metric));
      s.proxy += model_b.radial_proxy(p);
      ++used;
    }
    if (used == 0) continue;
    s.proxy /= static_cast<double>(used);
    fit.samples.push_back(s);
  }
  if (fit.samples.size() < 4) throw InsufficientData("decay_fit: fewer than 4 radii lie in both domains");

  bool all_small = true;
  for (const auto& s : fit.samples) all_small = all_small && s.difference <= kExactMatchThreshold;
  if (all_small) {
    fit.exact_match = true;
    fit.order = fit.order_with_log = std::numeric_limits<double>::infinity();
    return fit;
  }

  std::vector<const DecaySample*> usable;
  for (const auto& s : fit.samples)
    if (s.difference > 0.0 && std::isfinite(s.difference) && s.proxy > 1.0) usable.push_back(&s);
  if (usable.size() < 4) throw InsufficientData("decay_fit: fewer than 4 radii with a measurable difference");

  const auto n = static_cast<Eigen::Index>(usable.size());
  Eigen::MatrixXd X(n, 2), Xl(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ls = std::log(usable[i]->proxy);
    X(i, 0) = Xl(i, 0) = 1.0;
    X(i, 1) = Xl(i, 1) = ls;
    Xl(i, 2) = std::log(ls);
    y(i) = std::log(usable[i]->difference);
  }
  const auto plain = decay_detail::least_squares(X, y);
  fit.order = -plain.coef(1);
  fit.order_stderr = plain.stderr_coef(1);
  fit.rms_residual = plain.rms;
  const auto with_log = decay_detail::least_squares(Xl, y);
  fit.order_with_log = -with_log.coef(1);
  fit.order_with_log_stderr = with_log.stderr_coef(1);
  fit.log_coefficient = with_log.coef(2);
  fit.rms_residual_with_log = with_log.rms;
  fit.log_correction = std::abs(fit.log_coefficient) >= 0.5 && with_log.rms * 2.0 < plain.rms;
  return fit;
}

}  // namespace instanton

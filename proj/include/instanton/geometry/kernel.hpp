#pragma once

// Model-agnostic numerical checks: closedness, complex structures, wedge
// identities, curvature, deck invariance.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "instanton/errors.hpp"
#include "instanton/geometry/forms.hpp"
#include "instanton/geometry/model.hpp"

namespace instanton {

inline constexpr double kDefaultRelativeStep = 1e-4;
inline constexpr double kDefaultConditionBound = 1e8;

/// Per-coordinate FD steps: relative step times the model's coordinate scales.
inline Vec4 fd_steps(const GeometryModel& model, const ChartPoint& p, double step) {
  if (!(step > 0.0)) throw InvalidParams("finite-difference step must be positive");
  return step * model.step_scales(p);
}

// ---------------------------------------------------------------------------
// Exterior derivatives by central differences (second order).

template <class FormField>
ThreeForm exterior_derivative_fd(const FormField& field, const ChartPoint& p, const Vec4& h) {
  std::array<Mat4, 4> partial;
  for (int a = 0; a < 4; ++a) {
    const Vec4 e = h[a] * Vec4::Unit(a);
    partial[a] = (field(ChartPoint(p + e)) - field(ChartPoint(p - e))) / (2.0 * h[a]);
  }
  ThreeForm out{};
  for (std::size_t k = 0; k < kThreeFormIndices.size(); ++k) {
    const auto [a, b, c] = kThreeFormIndices[k];
    out[k] = partial[a](b, c) + partial[b](c, a) + partial[c](a, b);
  }
  return out;
}

/// d of a 1-form field: (d alpha)_ab = d_a alpha_b - d_b alpha_a.
template <class OneFormField>
Mat4 exterior_derivative_1form_fd(const OneFormField& field, const ChartPoint& p, const Vec4& h) {
  Mat4 jac;  // jac(a, b) = d_a alpha_b
  for (int a = 0; a < 4; ++a) {
    const Vec4 e = h[a] * Vec4::Unit(a);
    jac.row(a) = ((field(ChartPoint(p + e)) - field(ChartPoint(p - e))) / (2.0 * h[a])).transpose();
  }
  return jac - jac.transpose();
}

/// Throws DomainError unless p +- k*h_a stays in the domain for k = 1..reach.
inline void require_stencil(const GeometryModel& model, const ChartPoint& p, const Vec4& h,
                            int reach, const char* what) {
  model.require_domain(p, what);
  for (int a = 0; a < 4; ++a)
    for (int k = 1; k <= reach; ++k)
      for (int s : {-1, 1}) {
        const ChartPoint q = p + s * k * h[a] * Vec4::Unit(a);
        if (!model.in_domain(q))
          throw DomainError(std::string(what) + ": finite-difference stencil leaves the " +
                            model.name() + " chart");
      }
}

/// dω_i at `p` (form_index in 1..3); exact answer is zero for every model form.
inline ThreeForm exterior_derivative_fd(const GeometryModel& model, int form_index,
                                        const ChartPoint& p, double step) {
  if (form_index < 1 || form_index > 3) throw InvalidParams("form index must be 1, 2 or 3");
  const Vec4 h = fd_steps(model, p, step);
  require_stencil(model, p, h, 1, "exterior_derivative_fd");
  return exterior_derivative_fd(
      [&](const ChartPoint& q) { return model.evaluate(q).forms[form_index - 1]; }, p, h);
}

/// Residual pair at step h and h/2 with the observed convergence order.
struct ConvergenceCheck {
  double coarse = 0.0;
  double fine = 0.0;
  double order = 0.0;
  bool roundoff_limited = false;  // both residuals at rounding level: nothing to measure

  bool passes(double min_order) const { return roundoff_limited || order >= min_order; }
};

/// Rounding level of a central difference of values of size `magnitude` with step `h`.
inline double roundoff_floor(double magnitude, double h) {
  return 100.0 * std::numeric_limits<double>::epsilon() * std::max(magnitude, 1e-300) / h;
}

inline ConvergenceCheck convergence(double coarse, double fine, double floor) {
  ConvergenceCheck c{coarse, fine, 0.0, false};
  if (coarse <= floor && fine <= 2.0 * floor) {
    c.roundoff_limited = true;
    c.order = std::numeric_limits<double>::infinity();
  } else if (fine <= 0.0) {
    c.order = std::numeric_limits<double>::infinity();
  } else {
    c.order = std::log2(coarse / fine);
  }
  return c;
}

/// Closedness of ω_i: max |dω_i| component at step and step/2.
inline ConvergenceCheck closedness_convergence(const GeometryModel& model, int form_index,
                                               const ChartPoint& p, double step) {
  const double coarse = max_abs(exterior_derivative_fd(model, form_index, p, step));
  const double fine = max_abs(exterior_derivative_fd(model, form_index, p, step / 2));
  const Vec4 h = fd_steps(model, p, step / 2);
  const double floor = roundoff_floor(max_abs(model.evaluate(p).forms[form_index - 1]), h.minCoeff());
  return convergence(coarse, fine, floor);
}

// ---------------------------------------------------------------------------
// Complex structures. Convention: ω(X, Y) = g(I X, Y), hence I = -g^{-1} ω.

struct ComplexStructures {
  Mat4 I = Mat4::Zero();
  Mat4 J = Mat4::Zero();
  Mat4 K = Mat4::Zero();

  const Mat4& operator[](int i) const { return i == 0 ? I : (i == 1 ? J : K); }
};

/// Diagonal of g^{-1/2}; conjugating by it puts tensors in a scale-free frame.
inline Vec4 jacobi_scaling(const Mat4& metric) {
  Vec4 d;
  for (int i = 0; i < 4; ++i) {
    if (!(metric(i, i) > 0.0)) throw SingularMetricError("metric has a non-positive diagonal entry");
    d[i] = 1.0 / std::sqrt(metric(i, i));
  }
  return d;
}

/// Condition number of D g D with D = diag(g)^{-1/2}.
inline double jacobi_condition_number(const Mat4& metric) {
  const Vec4 d = jacobi_scaling(metric);
  const Mat4 scaled = d.asDiagonal() * metric * d.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Mat4> eig(scaled, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 1e-14 * hi)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

inline ComplexStructures complex_structures(const HyperkahlerTensors& t) {
  if (!std::isfinite(jacobi_condition_number(t.metric)))
    throw SingularMetricError("metric is not invertible");
  const Mat4 inv = t.metric.inverse();
  return {-inv * t.forms[0], -inv * t.forms[1], -inv * t.forms[2]};
}

inline ComplexStructures complex_structures_at(const GeometryModel& model, const ChartPoint& p) {
  model.require_domain(p, "complex_structures_at");
  return complex_structures(model.evaluate(p));
}

/// max of |I²+1|, |J²+1|, |K²+1|, |IJ-K| in the Jacobi-scaled frame.
inline double quaternion_residual(const ComplexStructures& cs, const Mat4& metric) {
  const Vec4 d = jacobi_scaling(metric);
  const auto scaled = [&](const Mat4& a) -> Mat4 {
    return d.cwiseInverse().asDiagonal() * a * d.asDiagonal();
  };
  const Mat4 I = scaled(cs.I), J = scaled(cs.J), K = scaled(cs.K);
  const Mat4 id = Mat4::Identity();
  return std::max({max_abs(I * I + id), max_abs(J * J + id), max_abs(K * K + id), max_abs(I * J - K)});
}

// ---------------------------------------------------------------------------
// Wedge identities ω_i ^ ω_j = δ_ij ω_1 ^ ω_1.

struct WedgeReport {
  std::array<std::array<double, 3>, 3> products{};  // coefficient of the chart volume element
  double residual = 0.0;                            // relative to |ω_1 ^ ω_1|
};

inline WedgeReport wedge_identities(const HyperkahlerTensors& t) {
  WedgeReport r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.products[i][j] = wedge_top(t.forms[i], t.forms[j]);
  const double ref = r.products[0][0];
  if (ref == 0.0) throw SingularMetricError("omega_1 ^ omega_1 vanishes");
  double worst = std::max(std::abs(ref - r.products[1][1]), std::abs(ref - r.products[2][2]));
  worst = std::max({worst, std::abs(r.products[0][1]), std::abs(r.products[0][2]), std::abs(r.products[1][2])});
  r.residual = worst / std::abs(ref);
  return r;
}

inline WedgeReport check_wedge_identities(const GeometryModel& model, const ChartPoint& p) {
  model.require_domain(p, "check_wedge_identities");
  return wedge_identities(model.evaluate(p));
}

// ---------------------------------------------------------------------------
// Curvature from finite differences of the metric.

struct CurvatureReport {
  ChartPoint point = ChartPoint::Zero();
  double riemann_norm = 0.0;
  double step = 0.0;
  double truncation_estimate = 0.0;
};

struct MetricJet {
  Mat4 g;
  std::array<Mat4, 4> dg;                 // dg[a] = d_a g
  std::array<std::array<Mat4, 4>, 4> ddg;  // ddg[a][b] = d_a d_b g
};

/// Fourth-order first derivatives, second-order second derivatives.
inline MetricJet metric_jet_fd(const GeometryModel& model, const ChartPoint& p, const Vec4& h) {
  const auto g = [&](const ChartPoint& q) { return model.metric_at(q); };
  MetricJet jet;
  jet.g = g(p);
  std::array<std::array<Mat4, 4>, 4> shifted;  // [axis][k] for offsets -2,-1,+1,+2
  for (int a = 0; a < 4; ++a) {
    const Vec4 e = h[a] * Vec4::Unit(a);
    shifted[a] = {g(p - 2 * e), g(p - e), g(p + e), g(p + 2 * e)};
    jet.dg[a] = (shifted[a][0] - 8.0 * shifted[a][1] + 8.0 * shifted[a][2] - shifted[a][3]) / (12.0 * h[a]);
    jet.ddg[a][a] = (shifted[a][2] - 2.0 * jet.g + shifted[a][1]) / (h[a] * h[a]);
  }
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      const Vec4 ea = h[a] * Vec4::Unit(a), eb = h[b] * Vec4::Unit(b);
      jet.ddg[a][b] = (g(p + ea + eb) - g(p + ea - eb) - g(p - ea + eb) + g(p - ea - eb)) /
                      (4.0 * h[a] * h[b]);
      jet.ddg[b][a] = jet.ddg[a][b];
    }
  return jet;
}

/// |Rm| = sqrt(R_abcd R^abcd) from a metric jet.
inline double riemann_norm_from_jet(const MetricJet& jet) {
  const Mat4 inv = jet.g.inverse();
  // Christoffel symbols of the first kind: low[d](b, c) = Γ_{d b c}.
  std::array<Mat4, 4> low;
  for (int d = 0; d < 4; ++d)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        low[d](b, c) = 0.5 * (jet.dg[b](d, c) + jet.dg[c](d, b) - jet.dg[d](b, c));
  std::array<Mat4, 4> up;  // up[a](b, c) = Γ^a_{bc}
  for (int a = 0; a < 4; ++a) {
    up[a].setZero();
    for (int d = 0; d < 4; ++d) up[a] += inv(a, d) * low[d];
  }
  // R_abcd = 1/2 (g_ad,bc + g_bc,ad - g_ac,bd - g_bd,ac) + Γ_{f a d} Γ^f_{bc} - Γ_{f a c} Γ^f_{bd}
  std::array<double, 256> R{};
  const auto idx = [](int a, int b, int c, int d) { return ((a * 4 + b) * 4 + c) * 4 + d; };
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double v = 0.5 * (jet.ddg[b][c](a, d) + jet.ddg[a][d](b, c) - jet.ddg[b][d](a, c) -
                            jet.ddg[a][c](b, d));
          for (int f = 0; f < 4; ++f) v += low[f](a, d) * up[f](b, c) - low[f](a, c) * up[f](b, d);
          R[idx(a, b, c, d)] = v;
        }
  // Raise all indices and contract.
  std::array<double, 256> T = R;
  for (int slot = 0; slot < 4; ++slot) {
    std::array<double, 256> next{};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            double v = 0.0;
            for (int e = 0; e < 4; ++e) {
              std::array<int, 4> i{a, b, c, d};
              const int fixed = i[slot];
              i[slot] = e;
              v += inv(fixed, e) * T[idx(i[0], i[1], i[2], i[3])];
            }
            next[idx(a, b, c, d)] = v;
          }
    T = next;
  }
  double sq = 0.0;
  for (int k = 0; k < 256; ++k) sq += R[k] * T[k];
  return std::sqrt(std::max(0.0, sq));
}

inline double riemann_norm_at(const GeometryModel& model, const ChartPoint& p, const Vec4& h) {
  return riemann_norm_from_jet(metric_jet_fd(model, p, h));
}

/// |Rm| at relative step `step` with a step-halving truncation estimate.
inline CurvatureReport riemann_norm_fd(const GeometryModel& model, const ChartPoint& p,
                                       double step = kDefaultRelativeStep,
                                       double condition_bound = kDefaultConditionBound) {
  const Vec4 h = fd_steps(model, p, step);
  require_stencil(model, p, h, 2, "riemann_norm_fd");
  const double cond = jacobi_condition_number(model.metric_at(p));
  if (!(cond <= condition_bound))
    throw IllConditionedError("metric condition number " + std::to_string(cond) + " exceeds bound " +
                              std::to_string(condition_bound));
  const double coarse = riemann_norm_at(model, p, h);
  const double fine = riemann_norm_at(model, p, 0.5 * h);
  // e(h) ~ C h^2  =>  N(h) - N(h/2) ~ 3/4 e(h)
  return {p, coarse, step, 4.0 / 3.0 * std::abs(coarse - fine)};
}

// ---------------------------------------------------------------------------
// Deck invariance: F^*T at p versus T at p.

struct DeckResidual {
  std::string name;
  std::array<double, 4> component{};  // metric, ω1, ω2, ω3
  double max = 0.0;
};

inline double scaled_difference(const Mat4& a, const Mat4& b) {
  return max_abs(a - b) / std::max(1.0, max_abs(b));
}

inline DeckResidual check_deck_invariance(const GeometryModel& model, const ChartPoint& p,
                                          std::size_t transform_index) {
  const auto& decks = model.deck_transformations();
  if (transform_index >= decks.size())
    throw InvalidParams("deck transformation index " + std::to_string(transform_index) +
                        " out of range for " + model.name());
  const auto& deck = decks[transform_index];
  model.require_domain(p, "check_deck_invariance");
  const ChartPoint q = deck.map(p);
  model.require_domain(q, "check_deck_invariance (image)");
  const Mat4 jac = deck.jacobian(p);
  const HyperkahlerTensors at_p = model.evaluate(p);
  const HyperkahlerTensors at_q = model.evaluate(q);
  DeckResidual r{deck.name, {}, 0.0};
  for (int c = 0; c < 4; ++c) {
    r.component[c] = scaled_difference(pullback(at_q.component(c), jac), at_p.component(c));
    r.max = std::max(r.max, r.component[c]);
  }
  return r;
}

/// Central-difference Jacobian of a chart map; used to cross-check exact Jacobians.
template <class Map>
Mat4 jacobian_fd(const Map& map, const ChartPoint& p, const Vec4& h) {
  Mat4 jac;
  for (int a = 0; a < 4; ++a) {
    const Vec4 e = h[a] * Vec4::Unit(a);
    jac.col(a) = (map(ChartPoint(p + e)) - map(ChartPoint(p - e))) / (2.0 * h[a]);
  }
  return jac;
}

}  // namespace instanton

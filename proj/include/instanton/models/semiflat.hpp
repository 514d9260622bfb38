#pragma once

// Semi-flat hyperkähler structure on a punctured neighbourhood of an I_ν* fiber
// and its isometry onto the Gibbons–Hawking model.
//
// Chart (x, y, v1, v2) with u = x + iy, arg u ∈ (0, 2π), and
//   v = v1 + v2 (ν/(πi)) log u,   Γ = (1/i) Im v / (u |log|u||),   V = (ν/π)|log|u||,
//   ω1 = V |k(u²)|² / (ε|u|⁴) dx^dy + (πε/(ν|log|u||)) Re(dv - Γdu) ^ Im(dv - Γdu),
//   ω2 + iω3 = u^{-2} k(u²) du^dv,
// with k(ξ) = i k0 (1 + c1 ξ + c2 ξ² + ...). The metric is g(X, Y) = ω1(X, I Y) for the
// complex structure I in which u and v are holomorphic.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "instanton/errors.hpp"
#include "instanton/geometry/forms.hpp"
#include "instanton/geometry/kernel.hpp"
#include "instanton/geometry/model.hpp"
#include "instanton/geometry/pullback.hpp"
#include "instanton/models/algstar.hpp"

namespace instanton {

struct SemiFlatParams {
  int nu = 1;
  double epsilon = 4.0 * std::numbers::pi;
  double k0 = 2.0;
  /// c_j for j = 1, 2, ...: k(ξ) = i k0 (1 + Σ c_j ξ^j). Empty means constant k.
  std::vector<double> k_series;
  /// Declared convergence radius (in ξ) of the series the truncation came from.
  double series_radius = std::numeric_limits<double>::infinity();
  /// Outer bound on |u|.
  double u_max = std::exp(-1.0);

  bool constant_k() const {
    for (double c : k_series)
      if (c != 0.0) return false;
    return true;
  }

  /// GH potential offset: V = κ0 + (ν/π) log r under r = 2πk0/(ε|u|).
  double kappa0() const { return nu / std::numbers::pi * std::log(epsilon / (2.0 * std::numbers::pi * k0)); }
  /// GH scale: the GH metric with this L equals the semi-flat metric.
  double L() const { return std::sqrt(epsilon) / (2.0 * std::numbers::pi); }

  void validate() const {
    if (nu < 1) throw InvalidParams("semi-flat model needs nu >= 1");
    if (!(epsilon > 0.0)) throw InvalidParams("semi-flat model needs epsilon > 0");
    if (!(k0 > 0.0)) throw InvalidParams("semi-flat model needs k0 > 0");
    if (!(u_max > 0.0 && u_max < 1.0)) throw InvalidParams("semi-flat model needs 0 < u_max < 1");
    if (!(series_radius > 0.0)) throw InvalidParams("k-series convergence radius must be positive");
  }
};

struct DictionaryRoundTrip {
  double epsilon = 0.0;
  double k0 = 0.0;
  double relative_error = 0.0;
};

/// (κ0, L) -> (ε, k0) and the relative round-trip error against `params`.
inline DictionaryRoundTrip dictionary_round_trip(const SemiFlatParams& params) {
  const double pi = std::numbers::pi;
  const double kappa0 = params.kappa0(), L = params.L();
  DictionaryRoundTrip out;
  out.epsilon = 4.0 * pi * pi * L * L;
  out.k0 = out.epsilon / (2.0 * pi * std::exp(pi * kappa0 / params.nu));
  out.relative_error = std::max(std::abs(out.epsilon - params.epsilon) / params.epsilon,
                                std::abs(out.k0 - params.k0) / params.k0);
  return out;
}

namespace sf_detail {

using cplx = std::complex<double>;

inline double arg_0_2pi(cplx z) {
  double a = std::arg(z);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

inline cplx k_of(const SemiFlatParams& params, cplx xi) {
  cplx s = 1.0, power = 1.0;
  for (double c : params.k_series) {
    power *= xi;
    s += c * power;
  }
  return cplx(0.0, params.k0) * s;
}

inline const CVec4& du() {
  static const CVec4 v(1.0, cplx(0.0, 1.0), 0.0, 0.0);
  return v;
}

/// dv = dv1 + c dv2 + v2 c'(u) du with c = (ν/(πi)) log u.
inline CVec4 dv(const SemiFlatParams& params, const ChartPoint& p) {
  const cplx u(p[0], p[1]);
  const cplx log_u(std::log(std::abs(u)), arg_0_2pi(u));
  const cplx c = double(params.nu) / (std::numbers::pi * cplx(0.0, 1.0)) * log_u;
  const cplx dc = double(params.nu) / (std::numbers::pi * cplx(0.0, 1.0) * u);
  CVec4 out = p[3] * dc * du();
  out[2] += 1.0;
  out[3] += c;
  return out;
}

/// I acting on tangent vectors: I^*du = i du, I^*dv = i dv.
inline Mat4 elliptic_complex_structure(const CVec4& dv) {
  Mat4 q;
  q.col(0) = Vec4::Unit(0);
  q.col(1) = Vec4::Unit(1);
  q.col(2) = dv.real();
  q.col(3) = dv.imag();
  Mat4 n = Mat4::Zero();
  n(1, 0) = -1.0;
  n(0, 1) = 1.0;
  n(3, 2) = -1.0;
  n(2, 3) = 1.0;
  const Mat4 dual = q * n * q.inverse();  // action on covector columns
  return dual.transpose();
}

}  // namespace sf_detail

class SemiFlatModel final : public GeometryModel {
 public:
  explicit SemiFlatModel(const SemiFlatParams& params) : params_(params) {
    params_.validate();
    build_decks();
  }

  const SemiFlatParams& params() const { return params_; }

  std::string name() const override { return "semi-flat model"; }
  std::string chart() const override { return "semiflat"; }

  HyperkahlerTensors evaluate(const ChartPoint& p) const override {
    using sf_detail::cplx;
    const double pi = std::numbers::pi;
    const cplx u(p[0], p[1]);
    const double abs_u = std::abs(u);
    const double abs_log = std::abs(std::log(abs_u));
    const double V = params_.nu / pi * abs_log;
    const cplx log_u(std::log(abs_u), sf_detail::arg_0_2pi(u));
    const cplx v = p[2] + p[3] * double(params_.nu) / (pi * cplx(0.0, 1.0)) * log_u;
    const cplx gamma = v.imag() / (cplx(0.0, 1.0) * u * abs_log);
    const CVec4 dv = sf_detail::dv(params_, p);
    const CVec4 alpha = dv - gamma * sf_detail::du();
    const cplx k = sf_detail::k_of(params_, u * u);

    HyperkahlerTensors t;
    t.forms[0] = V * std::norm(k) / (params_.epsilon * std::pow(abs_u, 4)) * wedge(Vec4(Vec4::Unit(0)), Vec4(Vec4::Unit(1))) +
                 pi * params_.epsilon / (params_.nu * abs_log) * wedge(Vec4(alpha.real()), Vec4(alpha.imag()));
    const CMat4 omega = k / (u * u) * wedge(sf_detail::du(), dv);
    t.forms[1] = omega.real();
    t.forms[2] = omega.imag();
    const Mat4 g = t.forms[0] * sf_detail::elliptic_complex_structure(dv);
    t.metric = 0.5 * (g + g.transpose());
    return t;
  }

  bool in_domain(const ChartPoint& p) const override {
    if (!p.allFinite()) return false;
    const double abs_u = std::hypot(p[0], p[1]);
    if (!(abs_u > 0.0 && abs_u < params_.u_max)) return false;
    return !(p[1] == 0.0 && p[0] > 0.0);  // arg u = 0 is the cut of log u
  }

  const std::vector<DeckTransformation>& deck_transformations() const override { return decks_; }

  double gh_radius(const ChartPoint& p) const {
    return 2.0 * std::numbers::pi * params_.k0 / (params_.epsilon * std::hypot(p[0], p[1]));
  }

  /// s = r V^{1/2} L of the Gibbons–Hawking image.
  double radial_proxy(const ChartPoint& p) const override {
    const double abs_u = std::hypot(p[0], p[1]);
    const double V = params_.nu / std::numbers::pi * std::abs(std::log(abs_u));
    return gh_radius(p) * std::sqrt(V) * params_.L();
  }

  Vec4 step_scales(const ChartPoint& p) const override {
    const double abs_u = std::hypot(p[0], p[1]);
    return {abs_u, abs_u, 1.0, 1.0};
  }

  /// Radial coordinate is the GH radius r = 2πk0/(ε|u|).
  double inner_radius() const override {
    return 2.0 * std::numbers::pi * params_.k0 / (params_.epsilon * params_.u_max);
  }

  ChartPoint cross_section_point(double radius, const std::array<double, 3>& unit) const override {
    const double abs_u = 2.0 * std::numbers::pi * params_.k0 / (params_.epsilon * radius);
    const double arg = 2.0 * std::numbers::pi * (0.005 + 0.99 * unit[0]);
    return {abs_u * std::cos(arg), abs_u * std::sin(arg), unit[1], unit[2]};
  }

  SamplingBox fundamental_box(double) const override {
    SamplingBox box;
    box.lo = {-params_.u_max, 0.0, 0.0, 0.0};
    box.hi = {params_.u_max, params_.u_max, 1.0, 1.0};
    return box;
  }

  /// Upper half u-plane (the Z2 quotient) times the unit lattice cell in (v1, v2).
  bool in_fundamental_domain(const ChartPoint& p) const override {
    return p[1] > 0.0 && p[2] >= 0.0 && p[2] < 1.0 && p[3] >= 0.0 && p[3] < 1.0;
  }

 private:
  void build_decks() {
    const int nu = params_.nu;
    const auto sheet = [](const ChartPoint& p) {
      return sf_detail::arg_0_2pi({p[0], p[1]}) < std::numbers::pi ? 1.0 : -1.0;
    };
    decks_.push_back({"(u, v) -> (-u, -v)",
                      [nu, sheet](const ChartPoint& p) {
                        return ChartPoint(-p[0], -p[1], -p[2] + sheet(p) * nu * p[3], -p[3]);
                      },
                      [nu, sheet](const ChartPoint& p) {
                        Mat4 j = -Mat4::Identity();
                        j(2, 3) = sheet(p) * nu;
                        return j;
                      }});
    decks_.push_back(detail::translation("v + tau1", {0.0, 0.0, 1.0, 0.0}));
    decks_.push_back(detail::translation("v + tau2", {0.0, 0.0, 0.0, 1.0}));
    decks_.push_back(
        detail::translation("R-action, t = 1/2", {0.0, 0.0, 0.5 / std::sqrt(params_.epsilon), 0.0}));
  }

  SemiFlatParams params_;
  std::vector<DeckTransformation> decks_;
};

inline SemiFlatModel make_semiflat_model(const SemiFlatParams& params) { return SemiFlatModel(params); }

inline HyperkahlerTensors semiflat_forms_at(const SemiFlatParams& params, const ChartPoint& p) {
  const SemiFlatModel model(params);
  model.require_domain(p, "semiflat_forms_at");
  return model.evaluate(p);
}

// ---------------------------------------------------------------------------
// Moment map of Y = ε^{-1/2} ∂/∂v1.

struct MomentValue {
  double H1 = 0.0;
  std::complex<double> H23;
};

inline Vec4 moment_vector_field(const SemiFlatParams& params) {
  return {0.0, 0.0, 1.0 / std::sqrt(params.epsilon), 0.0};
}

/// H1 = ε^{1/2} v2, H2 + iH3 = -ε^{-1/2} ∫ u^{-2} k(u²) du with zero constant:
/// ∫ = i k0 (-1/u + Σ c_j u^{2j-1}/(2j-1)).
inline MomentValue moment_map(const SemiFlatParams& params, const ChartPoint& p) {
  using sf_detail::cplx;
  params.validate();
  const cplx u(p[0], p[1]);
  if (std::norm(u) >= params.series_radius)
    throw BranchError("moment_map: u^2 lies outside the convergence disc of the k-series");
  cplx integral = -1.0 / u;
  cplx power = 1.0 / u;
  for (std::size_t j = 1; j <= params.k_series.size(); ++j) {
    power *= u * u;
    integral += params.k_series[j - 1] * power / static_cast<double>(2 * j - 1);
  }
  integral *= cplx(0.0, params.k0);
  return {std::sqrt(params.epsilon) * p[3], -integral / std::sqrt(params.epsilon)};
}

inline std::array<double, 3> hamiltonians(const SemiFlatParams& params, const ChartPoint& p) {
  const MomentValue m = moment_map(params, p);
  return {m.H1, m.H23.real(), m.H23.imag()};
}

/// max |dH_i - ω_i(Y, .)| for one i at relative step `step`.
inline double moment_residual(const SemiFlatParams& params, const ChartPoint& p, int index, double step) {
  if (index < 1 || index > 3) throw InvalidParams("Hamiltonian index must be 1, 2 or 3");
  const SemiFlatModel model(params);
  const Vec4 h = fd_steps(model, p, step);
  require_stencil(model, p, h, 1, "moment_residual");
  Vec4 dH;
  for (int a = 0; a < 4; ++a) {
    const Vec4 e = h[a] * Vec4::Unit(a);
    dH[a] = (hamiltonians(params, p + e)[index - 1] - hamiltonians(params, p - e)[index - 1]) / (2.0 * h[a]);
  }
  const Vec4 want = interior(moment_vector_field(params), model.evaluate(p).forms[index - 1]);
  return (dH - want).cwiseAbs().maxCoeff();
}

inline ConvergenceCheck moment_map_check(const SemiFlatParams& params, const ChartPoint& p, int index,
                                         double step = kDefaultRelativeStep) {
  const double coarse = moment_residual(params, p, index, step);
  const double fine = moment_residual(params, p, index, step / 2);
  const SemiFlatModel model(params);
  const Vec4 h = fd_steps(model, p, step / 2);
  const double mag = std::abs(hamiltonians(params, p)[index - 1]) + 1.0;
  return convergence(coarse, fine, roundoff_floor(mag, h.minCoeff()));
}

// ---------------------------------------------------------------------------
// Coordinate change onto the Gibbons–Hawking chart:
//   r = 2πk0/(ε|u|), θ1 = π - arg u, θ2 = -2π v2, θ3 = (2π²/ν) v1,
//   θ̃3 = θ3 + θ1 θ2 - π θ2.

inline ChartPoint transform_to_gh(const SemiFlatParams& params, const ChartPoint& p) {
  const double pi = std::numbers::pi;
  const double abs_u = std::hypot(p[0], p[1]);
  if (!(abs_u > 0.0) || !p.allFinite()) throw DomainError("transform_to_gh: u must be nonzero");
  const double r = 2.0 * pi * params.k0 / (params.epsilon * abs_u);
  const double t1 = pi - sf_detail::arg_0_2pi({p[0], p[1]});
  const double t2 = -2.0 * pi * p[3];
  const double t3 = 2.0 * pi * pi / params.nu * p[2];
  return {r, t1, t2, t3 + t1 * t2 - pi * t2};
}

inline ChartPoint transform_from_gh(const SemiFlatParams& params, const ChartPoint& q) {
  const double pi = std::numbers::pi;
  const double abs_u = 2.0 * pi * params.k0 / (params.epsilon * q[0]);
  const double arg = pi - q[1];
  const double v2 = -q[2] / (2.0 * pi);
  const double t3 = q[3] - q[1] * q[2] + pi * q[2];
  return {abs_u * std::cos(arg), abs_u * std::sin(arg), params.nu * t3 / (2.0 * pi * pi), v2};
}

/// d(r, θ1, θ2, θ̃3) / d(x, y, v1, v2).
inline Mat4 transform_jacobian(const SemiFlatParams& params, const ChartPoint& p) {
  const double pi = std::numbers::pi;
  const double x = p[0], y = p[1];
  const double rho2 = x * x + y * y, rho = std::sqrt(rho2);
  const double c = 2.0 * pi * params.k0 / params.epsilon;
  const ChartPoint q = transform_to_gh(params, p);
  Mat4 j = Mat4::Zero();
  j(0, 0) = -c * x / (rho2 * rho);
  j(0, 1) = -c * y / (rho2 * rho);
  j(1, 0) = y / rho2;
  j(1, 1) = -x / rho2;
  j(2, 3) = -2.0 * pi;
  const Vec4 dt3 = 2.0 * pi * pi / params.nu * Vec4::Unit(2);
  // dθ̃3 = dθ3 + θ2 dθ1 + (θ1 - π) dθ2
  j.row(3) = (dt3 + q[2] * Vec4(j.row(1).transpose()) + (q[1] - pi) * Vec4(j.row(2).transpose())).transpose();
  return j;
}

inline AlgStarParams gh_params(const SemiFlatParams& params, double L) {
  AlgStarParams gh;
  gh.nu = params.nu;
  gh.kappa0 = params.kappa0();
  gh.L = L;
  gh.R = AlgStarParams::min_radius(gh.nu, gh.kappa0) * (1.0 + 1e-9);
  return gh;
}

/// The GH model with dictionary parameters, pulled back to the semi-flat chart.
/// For constant k this reproduces the semi-flat tensors.
inline std::shared_ptr<PullbackModel> make_semiflat_gh_model(const SemiFlatParams& params) {
  SemiFlatParams base = params;
  base.k_series.clear();
  auto source = std::make_shared<SemiFlatModel>(base);
  auto target = std::make_shared<AlgStarModel>(gh_params(base, base.L()));
  return std::make_shared<PullbackModel>(
      source, target, [base](const ChartPoint& p) { return transform_to_gh(base, p); },
      [base](const ChartPoint& p) { return transform_jacobian(base, p); }, "GH model in semi-flat chart");
}

struct IsometryReport {
  std::array<double, 4> component{};  // metric, ω1, ω2, ω3
  double max = 0.0;
  double jacobian_residual = 0.0;  // exact vs central-difference Jacobian, relative
};

/// Pulls back GH(κ0, L = 1) through the exact Jacobian and compares with
/// 4π²ε^{-1} times the semi-flat tensors.
inline IsometryReport verify_isometry(const SemiFlatParams& params, const ChartPoint& p,
                                      double step = kDefaultRelativeStep) {
  if (!params.constant_k()) throw InvalidParams("verify_isometry needs constant k");
  const SemiFlatModel sf(params);
  sf.require_domain(p, "verify_isometry");
  const AlgStarModel gh(gh_params(params, 1.0));
  const ChartPoint q = transform_to_gh(params, p);
  const Mat4 jac = transform_jacobian(params, p);
  const HyperkahlerTensors at_q = gh.evaluate(q);
  const HyperkahlerTensors at_p = sf.evaluate(p);
  const double scale = 4.0 * std::numbers::pi * std::numbers::pi / params.epsilon;
  IsometryReport r;
  for (int c = 0; c < 4; ++c) {
    r.component[c] = scaled_difference(pullback(at_q.component(c), jac), scale * at_p.component(c));
    r.max = std::max(r.max, r.component[c]);
  }
  const Vec4 h = fd_steps(sf, p, step);
  require_stencil(sf, p, h, 1, "verify_isometry");
  const Mat4 fd = jacobian_fd([&](const ChartPoint& s) { return transform_to_gh(params, s); }, p, h);
  r.jacobian_residual = max_abs(fd - jac) / max_abs(jac);
  return r;
}

// ---------------------------------------------------------------------------
// Periods in ξ = u² and their monodromy around ξ = 0.

using Periods = std::array<std::complex<double>, 2>;

/// τ1 = ξ^{1/2}, τ2 = (ν/(2πi)) ξ^{1/2} log ξ on the principal branch.
inline Periods model_periods(int nu, std::complex<double> xi) {
  if (xi == 0.0) throw DomainError("model_periods: xi must be nonzero");
  const std::complex<double> s = std::sqrt(xi);
  return {s, double(nu) / (2.0 * std::numbers::pi * std::complex<double>(0.0, 1.0)) * s * std::log(xi)};
}

/// Periods continued once counter-clockwise around the circle through ξ0,
/// tracking sqrt and log continuously along the path.
inline Periods continued_periods(int nu, std::complex<double> xi0, int steps = 256) {
  std::complex<double> s = std::sqrt(xi0);
  double arg = std::arg(xi0);
  const double radius = std::abs(xi0);
  for (int k = 1; k <= steps; ++k) {
    const double a = std::arg(xi0) + 2.0 * std::numbers::pi * k / steps;
    const std::complex<double> xi = std::polar(radius, a);
    const std::complex<double> root = std::sqrt(xi);
    s = std::abs(root - s) < std::abs(root + s) ? root : -root;
    arg = a;
  }
  const std::complex<double> log_xi(std::log(radius), arg);
  return {s, double(nu) / (2.0 * std::numbers::pi * std::complex<double>(0.0, 1.0)) * s * log_xi};
}

struct MonodromyResult {
  std::array<std::array<long, 2>, 2> matrix{};
  double fit_residual = 0.0;  // distance of the solved matrix from the nearest integer matrix
};

/// Solves (τ1', τ2') = (τ1, τ2) A from continuation at two base points.
inline MonodromyResult monodromy_action(int nu) {
  if (nu < 1) throw InvalidParams("monodromy needs nu >= 1");
  const std::array<std::complex<double>, 2> base{std::complex<double>(0.3, 0.2),
                                                 std::complex<double>(-0.7, 1.1)};
  Eigen::Matrix2cd P, Q;
  for (int row = 0; row < 2; ++row) {
    const Periods before = model_periods(nu, base[row]);
    const Periods after = continued_periods(nu, base[row]);
    P(row, 0) = before[0];
    P(row, 1) = before[1];
    Q(row, 0) = after[0];
    Q(row, 1) = after[1];
  }
  const Eigen::Matrix2cd A = P.inverse() * Q;
  MonodromyResult out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      out.matrix[i][j] = std::lround(A(i, j).real());
      out.fit_residual = std::max(out.fit_residual, std::abs(A(i, j) - static_cast<double>(out.matrix[i][j])));
    }
  return out;
}

inline std::array<std::array<long, 2>, 2> monodromy_action_check(int nu) { return monodromy_action(nu).matrix; }

}  // namespace instanton

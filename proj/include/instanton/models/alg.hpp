#pragma once

// Flat ALG model C_{β,τ,L}(R). Chart (Re U, Im U, Re V, Im V) on the universal
// cover; the sector rotation and the lattice generated by L and Lτ act as deck maps.
//   g = dU dŪ + dV dV̄ (identity matrix),  ω1 = (i/2)(dU^dŪ + dV^dV̄),  ω2 + iω3 = dU^dV.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "instanton/errors.hpp"
#include "instanton/geometry/forms.hpp"
#include "instanton/geometry/kernel.hpp"
#include "instanton/geometry/model.hpp"

namespace instanton {

using cplx = std::complex<double>;

struct AlgTableRow {
  int num;
  int den;
  const char* fiber;     // Kodaira type of the compactifying fiber
  const char* tau_name;  // "any", "i" or "omega"
};

/// Admissible cone angles with the fiber types and moduli they force.
inline constexpr std::array<AlgTableRow, 7> kAlgTable{{
    {1, 2, "I0*", "any"},
    {1, 6, "II", "omega"},
    {5, 6, "II*", "omega"},
    {1, 4, "III", "i"},
    {3, 4, "III*", "i"},
    {1, 3, "IV", "omega"},
    {2, 3, "IV*", "omega"},
}};

inline cplx tau_omega() { return std::polar(1.0, 2.0 * std::numbers::pi / 3.0); }

inline std::string admissible_beta_list() {
  std::string s;
  for (const auto& row : kAlgTable) {
    if (!s.empty()) s += ", ";
    s += std::to_string(row.num) + "/" + std::to_string(row.den) + " (" + row.fiber;
    s += std::string(row.tau_name) == "any" ? ", any tau" : std::string(", tau = ") + row.tau_name;
    s += ")";
  }
  return s;
}

struct AlgParams {
  int beta_num = 1;
  int beta_den = 2;
  cplx tau{0.0, 1.0};
  double L = 1.0;
  double R = 1.0;

  double beta() const { return static_cast<double>(beta_num) / beta_den; }

  const AlgTableRow* table_row() const {
    int g = std::gcd(beta_num, beta_den);
    if (g == 0) return nullptr;
    for (const auto& row : kAlgTable)
      if (row.num == beta_num / g && row.den == beta_den / g) return &row;
    return nullptr;
  }

  /// The modulus forced by the cone angle; i when β = 1/2.
  static cplx default_tau(int num, int den) {
    AlgParams p;
    p.beta_num = num;
    p.beta_den = den;
    const AlgTableRow* row = p.table_row();
    if (row && std::string(row->tau_name) == "omega") return tau_omega();
    return {0.0, 1.0};
  }

  void validate() const {
    const AlgTableRow* row = table_row();
    if (row == nullptr)
      throw InvalidParams("beta = " + std::to_string(beta_num) + "/" + std::to_string(beta_den) +
                          " is not admissible; admissible beta values: " + admissible_beta_list());
    if (!(tau.imag() > 0.0)) throw InvalidParams("tau must lie in the upper half plane");
    const std::string forced = row->tau_name;
    if (forced != "any") {
      const cplx want = forced == "i" ? cplx(0.0, 1.0) : tau_omega();
      if (std::abs(tau - want) > 1e-12)
        throw InvalidParams("beta = " + std::to_string(row->num) + "/" + std::to_string(row->den) +
                            " (" + row->fiber + ") requires tau = " +
                            (forced == "i" ? std::string("i") : std::string("exp(2 pi i/3)")));
    }
    if (!(L > 0.0)) throw InvalidParams("ALG model needs L > 0");
    if (!(R > 0.0)) throw InvalidParams("ALG model needs R > 0");
  }

  double fiber_area() const { return L * L * tau.imag(); }
};

namespace alg_detail {

inline cplx to_U(const ChartPoint& p) { return {p[0], p[1]}; }

/// arg in [0, 2π).
inline double arg_0_2pi(cplx z) {
  double a = std::arg(z);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

/// z^q on the branch arg z ∈ [0, 2π).
inline cplx branch_pow(cplx z, double q) {
  return std::polar(std::pow(std::abs(z), q), q * arg_0_2pi(z));
}

inline Mat4 rotation_jacobian(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  Mat4 j = Mat4::Zero();
  j.block<2, 2>(0, 0) << c, -s, s, c;
  j.block<2, 2>(2, 2) << c, s, -s, c;
  return j;
}

inline const CVec4& dU() {
  static const CVec4 v(1.0, cplx(0.0, 1.0), 0.0, 0.0);
  return v;
}

inline const CVec4& dVbar() {
  static const CVec4 v(0.0, 0.0, 1.0, cplx(0.0, -1.0));
  return v;
}

}  // namespace alg_detail

class AlgModel final : public GeometryModel {
 public:
  explicit AlgModel(const AlgParams& params) : params_(params) {
    params_.validate();
    build_tensors();
    build_decks();
  }

  const AlgParams& params() const { return params_; }

  std::string name() const override { return "ALG flat model"; }
  std::string chart() const override { return "alg-flat"; }

  HyperkahlerTensors evaluate(const ChartPoint&) const override { return tensors_; }

  bool in_domain(const ChartPoint& p) const override {
    return p.allFinite() && std::hypot(p[0], p[1]) > params_.R;
  }

  const std::vector<DeckTransformation>& deck_transformations() const override { return decks_; }

  double radial_proxy(const ChartPoint& p) const override { return std::hypot(p[0], p[1]); }

  Vec4 step_scales(const ChartPoint& p) const override {
    return Vec4::Constant(std::hypot(p[0], p[1]));
  }

  double inner_radius() const override { return params_.R; }

  ChartPoint cross_section_point(double radius, const std::array<double, 3>& u) const override {
    const double phi = 2.0 * std::numbers::pi * params_.beta() * u[0];
    const cplx v = params_.L * (u[1] + u[2] * params_.tau);
    return {radius * std::cos(phi), radius * std::sin(phi), v.real(), v.imag()};
  }

  SamplingBox fundamental_box(double proxy_bound) const override {
    const cplx a = params_.L, b = params_.L * params_.tau;
    SamplingBox box;
    const double t = std::max(proxy_bound, 0.0);
    const double vx_lo = std::min({0.0, a.real(), b.real(), (a + b).real()});
    const double vx_hi = std::max({0.0, a.real(), b.real(), (a + b).real()});
    const double vy_lo = std::min({0.0, a.imag(), b.imag(), (a + b).imag()});
    const double vy_hi = std::max({0.0, a.imag(), b.imag(), (a + b).imag()});
    const double beta = params_.beta();
    // Sectors of angle <= π/2 sit in the first quadrant; otherwise use the full square.
    const double ux_lo = beta <= 0.25 ? 0.0 : -t;
    const double uy_lo = beta <= 0.5 ? 0.0 : -t;
    box.lo = {ux_lo, uy_lo, vx_lo, vy_lo};
    box.hi = {t, t, vx_hi, vy_hi};
    return box;
  }

  bool in_fundamental_domain(const ChartPoint& p) const override {
    const double arg = alg_detail::arg_0_2pi({p[0], p[1]});
    if (!(arg < 2.0 * std::numbers::pi * params_.beta())) return false;
    // V = L (s + t τ) with s, t ∈ [0, 1).
    const double t = p[3] / (params_.L * params_.tau.imag());
    const double s = (p[2] - t * params_.L * params_.tau.real()) / params_.L;
    return s >= 0.0 && s < 1.0 && t >= 0.0 && t < 1.0;
  }

 private:
  void build_tensors() {
    const Vec4 dx1 = Vec4::Unit(0), dy1 = Vec4::Unit(1), dx2 = Vec4::Unit(2), dy2 = Vec4::Unit(3);
    tensors_.metric = Mat4::Identity();
    tensors_.forms[0] = wedge(dx1, dy1) + wedge(dx2, dy2);
    tensors_.forms[1] = wedge(dx1, dx2) - wedge(dy1, dy2);
    tensors_.forms[2] = wedge(dx1, dy2) + wedge(dy1, dx2);
  }

  void build_decks() {
    const double phi = 2.0 * std::numbers::pi * params_.beta();
    const Mat4 jac = alg_detail::rotation_jacobian(phi);
    decks_.push_back({"rotation by 2 pi beta", [jac](const ChartPoint& p) { return ChartPoint(jac * p); },
                      [jac](const ChartPoint&) { return jac; }});
    const cplx a = params_.L, b = params_.L * params_.tau;
    decks_.push_back(detail::translation("V + L", {0.0, 0.0, a.real(), a.imag()}));
    decks_.push_back(detail::translation("V + L tau", {0.0, 0.0, b.real(), b.imag()}));
  }

  AlgParams params_;
  HyperkahlerTensors tensors_;
  std::vector<DeckTransformation> decks_;
};

inline AlgModel make_alg_model(const AlgParams& params) { return AlgModel(params); }

/// Re and Im of U^{1/β-2} dU ^ dV̄.
struct AsdFormValue {
  Mat4 re = Mat4::Zero();
  Mat4 im = Mat4::Zero();
};

inline AsdFormValue asd_forms_raw(const AlgParams& params, const ChartPoint& p) {
  const cplx coeff = alg_detail::branch_pow(alg_detail::to_U(p), 1.0 / params.beta() - 2.0);
  const CMat4 w = coeff * wedge(alg_detail::dU(), alg_detail::dVbar());
  return {w.real(), w.imag()};
}

inline AsdFormValue asd_forms_at(const AlgParams& params, const ChartPoint& p) {
  params.validate();
  if (!(std::hypot(p[0], p[1]) > params.R) || !p.allFinite())
    throw DomainError("asd_forms_at: point outside the ALG model chart");
  return asd_forms_raw(params, p);
}

/// Hyperkähler orientation of the ALG chart: sign of ω1 ^ ω1.
inline int alg_orientation() { return 1; }

enum class LieField { Y, IY, JY, KY };

inline const char* to_string(LieField f) {
  switch (f) {
    case LieField::Y: return "Y";
    case LieField::IY: return "IY";
    case LieField::JY: return "JY";
    case LieField::KY: return "KY";
  }
  return "?";
}

namespace alg_detail {

inline void require_lie_regime(const AlgParams& params) {
  params.validate();
  if (!(params.beta() > 0.5))
    throw InvalidParams("Lie-derivative identities need beta > 1/2");
}

/// Z = (complex structure) applied to the metric dual of η = Re(U^{1/β-1} dU).
inline Vec4 lie_field(const AlgModel& model, LieField which, const ChartPoint& p) {
  const cplx c = branch_pow(to_U(p), 1.0 / model.params().beta() - 1.0);
  const Vec4 eta = (c * dU()).real();
  const HyperkahlerTensors t = model.evaluate(p);
  const Vec4 y = t.metric.inverse() * eta;
  if (which == LieField::Y) return y;
  const ComplexStructures cs = complex_structures(t);
  return cs[static_cast<int>(which) - 1] * y;
}

/// Away from the branch cut of U^p along the positive real axis.
inline void require_off_cut(const ChartPoint& p, const Vec4& h, int reach) {
  for (int a = 0; a < 2; ++a)
    for (int s : {-1, 1}) {
      const ChartPoint q = p + s * reach * h[a] * Vec4::Unit(a);
      if (q[0] > 0.0 && (q[1] >= 0.0) != (p[1] >= 0.0))
        throw DomainError("finite-difference stencil crosses the branch cut of U^p");
    }
}

}  // namespace alg_detail

/// d(ι_Z ω_i) by central differences.
inline Mat4 lie_derivative_fd(const AlgParams& params, const ChartPoint& p, LieField which,
                              int form_index, double step) {
  alg_detail::require_lie_regime(params);
  if (form_index < 1 || form_index > 3) throw InvalidParams("form index must be 1, 2 or 3");
  const AlgModel model(params);
  const Vec4 h = fd_steps(model, p, step);
  require_stencil(model, p, h, 1, "lie_derivative_checks");
  alg_detail::require_off_cut(p, h, 1);
  return exterior_derivative_1form_fd(
      [&](const ChartPoint& q) {
        return interior(alg_detail::lie_field(model, which, q), model.evaluate(q).forms[form_index - 1]);
      },
      p, h);
}

/// Closed-form right-hand sides as multiples of the ASD pair, p = 1/β - 1:
///   ℒ_Y ω2 = p Re A,  ℒ_Y ω3 = -p Im A,  ℒ_{IY} ω2 = p Im A,  ℒ_{IY} ω3 = p Re A,
///   ℒ_{JY} ω1 = -p Im A,  ℒ_{KY} ω1 = -p Re A,  all others zero.
inline Mat4 lie_derivative_expected(const AlgParams& params, const ChartPoint& p, LieField which,
                                    int form_index) {
  alg_detail::require_lie_regime(params);
  const double k = 1.0 / params.beta() - 1.0;
  const AsdFormValue a = asd_forms_raw(params, p);
  double cre = 0.0, cim = 0.0;
  switch (which) {
    case LieField::Y:
      if (form_index == 2) cre = k;
      if (form_index == 3) cim = -k;
      break;
    case LieField::IY:
      if (form_index == 2) cim = k;
      if (form_index == 3) cre = k;
      break;
    case LieField::JY:
      if (form_index == 1) cim = -k;
      break;
    case LieField::KY:
      if (form_index == 1) cre = -k;
      break;
  }
  return cre * a.re + cim * a.im;
}

/// |ℒ_Z ω_i - expected| at step and step/2.
inline ConvergenceCheck lie_derivative_checks(const AlgParams& params, const ChartPoint& p,
                                              LieField which, int form_index,
                                              double step = kDefaultRelativeStep) {
  const Mat4 want = lie_derivative_expected(params, p, which, form_index);
  const double coarse = max_abs(lie_derivative_fd(params, p, which, form_index, step) - want);
  const double fine = max_abs(lie_derivative_fd(params, p, which, form_index, step / 2) - want);
  const AlgModel model(params);
  const Vec4 h = fd_steps(model, p, step / 2);
  const double mag = std::abs(alg_detail::branch_pow(alg_detail::to_U(p), 1.0 / params.beta() - 1.0));
  return convergence(coarse, fine, roundoff_floor(mag, h.minCoeff()));
}

}  // namespace instanton

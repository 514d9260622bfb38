#pragma once

// Verification suites and the four report jobs behind the instanton_lab CLI.
// Every suite draws its sample points from seeded substreams indexed by sample
// number and merges per-sample results in index order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "instanton/errors.hpp"
#include "instanton/geometry/decay_fit.hpp"
#include "instanton/geometry/kernel.hpp"
#include "instanton/geometry/volume.hpp"
#include "instanton/parallel.hpp"
#include "instanton/reports/model_spec.hpp"
#include "instanton/reports/report.hpp"
#include "instanton/weierstrass/families.hpp"
#include "instanton/weierstrass/json_io.hpp"

namespace instanton {

struct RunOptions {
  std::uint64_t seed = 1;
  std::optional<std::size_t> samples;
  std::optional<double> step;
  std::optional<double> tol;
  unsigned workers = default_workers();

  ojson to_json() const {
    ojson j;
    j["seed"] = seed;
    j["samples"] = samples ? ojson(*samples) : ojson(nullptr);
    j["step"] = step ? json_number(*step) : ojson(nullptr);
    j["tol"] = tol ? json_number(*tol) : ojson(nullptr);
    return j;
  }
};

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s{"hyperkahler", "closedness", "deck",      "curvature-decay",
                                          "volume",      "isometry",   "lie-derivative", "moment-map"};
  return s;
}

namespace jobs_detail {

inline std::array<double, 4> coords(const ChartPoint& p) { return {p[0], p[1], p[2], p[3]}; }

/// Points on cross-sections at radius inner * [lo, hi] (log-uniform), angles kept
/// 2% away from the edges of the fundamental sector.
inline std::vector<ChartPoint> sample_points(const GeometryModel& model, std::size_t n, std::uint64_t seed,
                                             double lo = 2.0, double hi = 50.0) {
  std::vector<ChartPoint> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::mt19937_64 rng(substream_seed(seed, i));
    const double radius = model.inner_radius() * lo * std::pow(hi / lo, uniform01(rng));
    std::array<double, 3> u{};
    for (double& v : u) v = 0.02 + 0.96 * uniform01(rng);
    pts[i] = model.cross_section_point(radius, u);
  }
  return pts;
}

inline void threshold_check(ReportBuilder& rb, const std::string& suite, const std::string& name,
                            const std::vector<ChartPoint>& pts, const std::vector<double>& values, double tol,
                            ojson details = ojson::object()) {
  double worst = 0.0;
  bool pass = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const bool ok = values[i] <= tol;
    pass = pass && ok;
    worst = std::max(worst, values[i]);
    if (std::isnan(values[i])) worst = values[i];
    rb.add_row({suite, name, i, coords(pts[i]), values[i], tol, ok});
  }
  rb.add_check({suite, name, "<=", worst, tol, values.size(), pass, std::move(details)});
}

inline void order_check(ReportBuilder& rb, const std::string& suite, const std::string& name,
                        const std::vector<ChartPoint>& pts, const std::vector<ConvergenceCheck>& checks,
                        double min_order) {
  double worst = std::numeric_limits<double>::infinity();
  double max_coarse = 0.0, max_fine = 0.0;
  std::size_t roundoff = 0;
  bool pass = true;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const ConvergenceCheck& c = checks[i];
    const bool ok = c.passes(min_order);
    pass = pass && ok;
    if (c.roundoff_limited) ++roundoff;
    else worst = std::min(worst, c.order);
    max_coarse = std::max(max_coarse, c.coarse);
    max_fine = std::max(max_fine, c.fine);
    rb.add_row({suite, name, i, coords(pts[i]), c.order, min_order, ok});
  }
  ojson d;
  d["max_residual_h"] = json_number(max_coarse);
  d["max_residual_h_over_2"] = json_number(max_fine);
  d["roundoff_limited_samples"] = roundoff;
  rb.add_check({suite, name, ">=", worst, min_order, checks.size(), pass, std::move(d)});
}

inline const char* form_name(int i) {
  static const char* names[] = {"metric", "omega1", "omega2", "omega3"};
  return names[i];
}

}  // namespace jobs_detail

// ---------------------------------------------------------------------------
// Suites.

inline void suite_hyperkahler(const ModelSpec& spec, const RunOptions& opt, ReportBuilder& rb) {
  const GeometryModel& m = *spec.model;
  const auto pts = jobs_detail::sample_points(m, opt.samples.value_or(50), opt.seed);
  std::vector<double> wedge(pts.size()), quat(pts.size());
  parallel_for(
      pts.size(),
      [&](std::size_t i) {
        wedge[i] = check_wedge_identities(m, pts[i]).residual;
        quat[i] = quaternion_residual(complex_structures_at(m, pts[i]), m.metric_at(pts[i]));
      },
      opt.workers);
  const double tol = opt.tol.value_or(1e-10);
  jobs_detail::threshold_check(rb, "hyperkahler", "wedge", pts, wedge, tol);
  jobs_detail::threshold_check(rb, "hyperkahler", "quaternion", pts, quat, tol);
}

inline void suite_closedness(const ModelSpec& spec, const RunOptions& opt, ReportBuilder& rb) {
  const GeometryModel& m = *spec.model;
  const auto pts = jobs_detail::sample_points(m, opt.samples.value_or(10), opt.seed);
  const double step = opt.step.value_or(kDefaultRelativeStep);
  std::vector<std::vector<ConvergenceCheck>> res(3, std::vector<ConvergenceCheck>(pts.size()));
  parallel_for(
      pts.size(),
      [&](std::size_t i) {
        for (int f = 1; f <= 3; ++f) res[f - 1][i] = closedness_convergence(m, f, pts[i], step);
      },
      opt.workers);
  for (int f = 1; f <= 3; ++f)
    jobs_detail::order_check(rb, "closedness", std::string("d") + jobs_detail::form_name(f), pts, res[f - 1], 1.9);
}

inline void suite_deck(const ModelSpec& spec, const RunOptions& opt, ReportBuilder& rb) {
  const GeometryModel& m = *spec.model;
  const auto pts = jobs_detail::sample_points(m, opt.samples.value_or(20), opt.seed);
  const auto& decks = m.deck_transformations();
  std::vector<std::vector<double>> res(decks.size(), std::vector<double>(pts.size()));
  parallel_for(
      pts.size(),
      [&](std::size_t i) {
        for (std::size_t d = 0; d < decks.size(); ++d) res[d][i] = check_deck_invariance(m, pts[i], d).max;
      },
      opt.workers);
  const double tol = opt.tol.value_or(1e-9);
  for (std::size_t d = 0; d < decks.size(); ++d)
    jobs_detail::threshold_check(rb, "deck", decks[d].name, pts, res[d], tol);
}

/// Curvature at the step (among step * {10, 1, 1/10}) with the smallest truncation estimate.
inline CurvatureReport best_curvature(const GeometryModel& m, const ChartPoint& p, double step) {
  CurvatureReport best;
  bool have = false;
  for (double s : {10.0 * step, step, 0.1 * step}) {
    const CurvatureReport c = riemann_norm_fd(m, p, s);
    if (!have || c.truncation_estimate < best.truncation_estimate) best = c;
    have = true;
  }
  return best;
}

inline void suite_curvature(const ModelSpec& spec, const RunOptions& opt, ReportBuilder& rb) {
  const GeometryModel& m = *spec.model;
  if (spec.is_alg()) {
    const auto pts = jobs_detail::sample_points(m, opt.samples.value_or(20), opt.seed);
    const double step = opt.step.value_or(kDefaultRelativeStep);
    std::vector<CurvatureReport> res(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { res[i] = riemann_norm_fd(m, pts[i], step); }, opt.workers);
    double worst = -std::numeric_limits<double>::infinity(), max_rm = 0.0;
    bool pass = true;
    for (std::size_t i = 0; i < res.size(); ++i) {
      const bool ok = res[i].riemann_norm <= res[i].truncation_estimate;
      pass = pass && ok;
      worst = std::max(worst, res[i].riemann_norm - res[i].truncation_estimate);
      max_rm = std::max(max_rm, res[i].riemann_norm);
      rb.add_row({"curvature-decay", "flatness", i, jobs_detail::coords(pts[i]), res[i].riemann_norm,
                  res[i].truncation_estimate, ok});
    }
    rb.add_check({"curvature-decay", "flatness (|Rm| - truncation estimate)", "<=", worst, 0.0, res.size(), pass,
                  {{"max_riemann_norm", json_number(max_rm)}, {"step", step}}});
    return;
  }

  // Decay band of |Rm| s^2 log s over r in [10, 1000] * inner radius.
  const std::size_t n = std::max<std::size_t>(opt.samples.value_or(12), 2);
  const double step = opt.step.value_or(1e-3);
  std::vector<ChartPoint> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::mt19937_64 rng(substream_seed(opt.seed, i));
    std::array<double, 3> u{};
    for (double& v : u) v = 0.02 + 0.96 * uniform01(rng);
    const double r = m.inner_radius() * 10.0 * std::pow(100.0, static_cast<double>(i) / static_cast<double>(n - 1));
    pts[i] = m.cross_section_point(r, u);
  }
  std::vector<CurvatureReport> res(n);
  parallel_for(n, [&](std::size_t i) { res[i] = best_curvature(m, pts[i], step); }, opt.workers);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0, worst_rel = 0.0;
  std::vector<double> rel(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = m.radial_proxy(pts[i]);
    const double prod = res[i].riemann_norm * s * s * std::log(s);
    lo = std::min(lo, prod);
    hi = std::max(hi, prod);
    rel[i] = res[i].truncation_estimate / res[i].riemann_norm;
    worst_rel = std::max(worst_rel, rel[i]);
    rb.add_row({"curvature-decay", "Rm s^2 log s", i, jobs_detail::coords(pts[i]), prod, 4.0, true});
  }
  const double ratio = hi / lo;
  rb.add_check({"curvature-decay", "band of |Rm| s^2 log s (max/min)", "<=", ratio, 4.0, n, ratio <= 4.0,
                {{"min", json_number(lo)}, {"max", json_number(hi)}, {"radius_range", {10.0, 1000.0}}}});
  jobs_detail::threshold_check(rb, "curvature-decay", "relative truncation estimate", pts, rel,
                               opt.tol.value_or(0.05));
}

inline void suite_volume(const ModelSpec& spec, const RunOptions& opt, ReportBuilder& rb) {
  const GeometryModel& m = *spec.model;
  const std::size_t n = opt.samples.value_or(200000);
  const ChartPoint center = m.cross_section_point(2.0 * m.inner_radius(), {0.5, 0.5, 0.5});
  std::size_t row = 0;
  const auto estimate = [&](double t, std::uint64_t seed) {
    const VolumeEstimate e = volume_of_ball_mc(m, center, t, n, seed, opt.workers);
    rb.add_row({"volume", "ball estimate", row++, {t, e.estimate, e.standard_error, static_cast<double>(e.accepted)},
                e.estimate, e.standard_error, true});
    return e;
  };
  if (spec.is_alg()) {
    const AlgParams& p = spec.alg;
    const double t = 100.0 * p.R;
    const VolumeEstimate a = estimate(t, opt.seed), b = estimate(t, opt.seed + 1);
    const double limit = std::numbers::pi * p.beta() * p.fiber_area();
    const double z = std::abs(a.estimate / (t * t) - limit) / (a.standard_error / (t * t));
    const double tol = opt.tol.value_or(3.0);
    rb.add_check({"volume", "|vol/t^2 - pi beta L^2 Im tau| in standard errors", "<=", z, tol, n, z <= tol,
                  {{"t", t},
                   {"estimate", a.estimate},
                   {"standard_error", a.standard_error},
                   {"limit_constant", limit},
                   {"estimate_over_t2", a.estimate / (t * t)}}});
    const double zs = std::abs(a.estimate - b.estimate) / std::hypot(a.standard_error, b.standard_error);
    rb.add_check({"volume", "independent seeds agree (combined standard errors)", "<=", zs, 4.0, n, zs <= 4.0,
                  {{"estimate_seed", a.estimate}, {"estimate_seed_plus_1", b.estimate}}});
    return;
  }
  if (spec.is_algstar()) {
    const auto& gh = static_cast<const AlgStarModel&>(m);
    const double t = gh.proxy_at_radius(100.0 * spec.algstar.R);
    const VolumeEstimate a = estimate(t, opt.seed), b = estimate(2.0 * t, opt.seed + 1);
    const double ratio = b.estimate / a.estimate;
    const double err = ratio * std::hypot(a.standard_error / a.estimate, b.standard_error / b.estimate);
    rb.add_check({"volume", "doubling ratio vol(2t)/vol(t)", "in (3.5, 4.5)", ratio, 0.5, n,
                  ratio > 3.5 && ratio < 4.5,
                  {{"t", t}, {"vol_t", a.estimate}, {"vol_2t", b.estimate}, {"ratio_standard_error", err}}});
    return;
  }
  throw InvalidParams("volume suite supports alg and algstar models");
}

inline void suite_isometry(const ModelSpec& spec, const RunOptions& opt, ReportBuilder& rb) {
  if (!spec.is_semiflat()) throw InvalidParams("isometry suite needs a semiflat or semiflat-gh model");
  const SemiFlatParams& p = spec.semiflat;
  const GeometryModel& m = *spec.model;
  const auto pts = jobs_detail::sample_points(m, opt.samples.value_or(20), opt.seed);
  const double step = opt.step.value_or(kDefaultRelativeStep);
  std::vector<double> pull(pts.size()), jac(pts.size());
  parallel_for(
      pts.size(),
      [&](std::size_t i) {
        const IsometryReport r = verify_isometry(p, pts[i], step);
        pull[i] = r.max;
        jac[i] = r.jacobian_residual;
      },
      opt.workers);
  jobs_detail::threshold_check(rb, "isometry", "pullback residual (metric and forms)", pts, pull,
                               opt.tol.value_or(1e-9));
  jobs_detail::threshold_check(rb, "isometry", "exact vs central-difference Jacobian", pts, jac, 1e-6);
  const DictionaryRoundTrip d = dictionary_round_trip(p);
  rb.add_check({"isometry", "parameter dictionary round trip", "<=", d.relative_error, 1e-12, 1,
                d.relative_error <= 1e-12,
                {{"kappa0", p.kappa0()}, {"L", p.L()}, {"epsilon", d.epsilon}, {"k0", d.k0}}});
}

inline void suite_lie(const ModelSpec& spec, const RunOptions& opt, ReportBuilder& rb) {
  if (!spec.is_alg()) throw InvalidParams("lie-derivative suite needs an alg model");
  const AlgParams& p = spec.alg;
  alg_detail::require_lie_regime(p);
  const GeometryModel& m = *spec.model;
  const auto pts = jobs_detail::sample_points(m, opt.samples.value_or(20), opt.seed);
  const double step = opt.step.value_or(kDefaultRelativeStep);
  const LieField fields[] = {LieField::Y, LieField::IY, LieField::JY, LieField::KY};
  std::vector<std::vector<ConvergenceCheck>> res(12, std::vector<ConvergenceCheck>(pts.size()));
  parallel_for(
      pts.size(),
      [&](std::size_t i) {
        for (int z = 0; z < 4; ++z)
          for (int f = 1; f <= 3; ++f) res[z * 3 + f - 1][i] = lie_derivative_checks(p, pts[i], fields[z], f, step);
      },
      opt.workers);
  for (int z = 0; z < 4; ++z)
    for (int f = 1; f <= 3; ++f)
      jobs_detail::order_check(rb, "lie-derivative",
                               std::string("L_") + to_string(fields[z]) + " " + jobs_detail::form_name(f), pts,
                               res[z * 3 + f - 1], 1.9);
}

inline void suite_moment(const ModelSpec& spec, const RunOptions& opt, ReportBuilder& rb) {
  if (!spec.is_semiflat()) throw InvalidParams("moment-map suite needs a semiflat or semiflat-gh model");
  const SemiFlatParams& p = spec.semiflat;
  const auto pts = jobs_detail::sample_points(*spec.model, opt.samples.value_or(20), opt.seed);
  const double step = opt.step.value_or(kDefaultRelativeStep);
  std::vector<std::vector<ConvergenceCheck>> res(3, std::vector<ConvergenceCheck>(pts.size()));
  parallel_for(
      pts.size(),
      [&](std::size_t i) {
        for (int k = 1; k <= 3; ++k) res[k - 1][i] = moment_map_check(p, pts[i], k, step);
      },
      opt.workers);
  for (int k = 1; k <= 3; ++k)
    jobs_detail::order_check(rb, "moment-map", "dH" + std::to_string(k) + " - omega" + std::to_string(k) + "(Y, .)",
                             pts, res[k - 1], 1.9);
}

// ---------------------------------------------------------------------------
// Jobs.

inline ReportBuilder run_verify(const std::string& model_spec, const std::string& suite, const RunOptions& opt) {
  const ModelSpec spec = parse_model_spec(model_spec);
  ojson params;
  params["model"] = model_spec;
  params["resolved"] = spec.resolved();
  params["suite"] = suite;
  params["options"] = opt.to_json();
  ReportBuilder rb("verify", params);
  rb.set_seed(opt.seed);
  if (suite == "hyperkahler") suite_hyperkahler(spec, opt, rb);
  else if (suite == "closedness") suite_closedness(spec, opt, rb);
  else if (suite == "deck") suite_deck(spec, opt, rb);
  else if (suite == "curvature-decay") suite_curvature(spec, opt, rb);
  else if (suite == "volume") suite_volume(spec, opt, rb);
  else if (suite == "isometry") suite_isometry(spec, opt, rb);
  else if (suite == "lie-derivative") suite_lie(spec, opt, rb);
  else if (suite == "moment-map") suite_moment(spec, opt, rb);
  else {
    std::string list;
    for (const auto& s : verify_suites()) list += (list.empty() ? "" : ", ") + s;
    throw ParseError("unknown suite '" + suite + "' (expected one of " + list + ")");
  }
  return rb;
}

inline ReportBuilder run_classify(const std::string& input_path, const RunOptions& opt) {
  const WeierstrassData raw = read_weierstrass_file(input_path);
  const SurfaceClassification cls = classify_surface(raw);
  ojson params;
  params["input"] = input_path;
  ReportBuilder rb("classify", params);
  rb.set_seed(opt.seed);
  const int euler = euler_ledger(cls);
  rb.add_check({"classify", "allowable (no place with a_p >= 4 and b_p >= 6)", "==", 1.0, 1.0, 1, cls.allowable, {}});
  rb.add_check({"classify", "degree count sum delta_p deg p", "==", static_cast<double>(cls.delta_total), 12.0, 1,
                cls.delta_total == 12, {}});
  rb.add_check({"classify", "Euler sum", "==", static_cast<double>(euler), 12.0, 1, euler == 12, {}});
  ojson data;
  data["weierstrass"] = weierstrass_json(raw);
  data["discriminant"] = discriminant(raw).to_string();
  data["classification"] = classification_json(cls);
  rb.set_data(std::move(data));
  return rb;
}

inline std::vector<double> parse_radii(const std::string& text, const GeometryModel& model_b) {
  if (text.empty() || text == "default") return default_decay_radii(model_b.inner_radius());
  std::vector<double> r;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) r.push_back(parse_real(item, "radii"));
  return r;
}

inline DecayQuantity parse_quantity(const std::string& q) {
  for (DecayQuantity v : {DecayQuantity::metric, DecayQuantity::form1, DecayQuantity::form2, DecayQuantity::form3})
    if (q == to_string(v)) return v;
  throw ParseError("unknown decay quantity '" + q + "' (expected metric, form1, form2 or form3)");
}

/// model_b may be "twin": the GH model pulled back to model_a's semi-flat chart.
/// expect: "" (report only), "exact", "log", or a target for the fitted order, compared with --tol (default 0.2).
inline ReportBuilder run_decay_fit(const std::string& spec_a, const std::string& spec_b, const std::string& radii,
                                   const std::string& quantity, const std::string& expect, const RunOptions& opt) {
  const ModelSpec a = parse_model_spec(spec_a);
  std::shared_ptr<const GeometryModel> b;
  ojson resolved_b;
  if (spec_b == "twin") {
    if (!a.is_semiflat()) throw ParseError("'twin' needs a semiflat model_a");
    b = make_semiflat_gh_model(a.semiflat);
    resolved_b = {{"kind", "semiflat-gh"}, {"twin_of", spec_a}};
  } else {
    const ModelSpec sb = parse_model_spec(spec_b);
    b = sb.model;
    resolved_b = sb.resolved();
  }
  const DecayQuantity q = parse_quantity(quantity);
  const std::vector<double> r = parse_radii(radii, *b);
  const DecayFit fit = decay_fit(*a.model, *b, r, q, opt.samples.value_or(64));

  ojson params;
  params["model_a"] = spec_a;
  params["model_b"] = spec_b;
  params["resolved_a"] = a.resolved();
  params["resolved_b"] = resolved_b;
  params["radii"] = r;
  params["quantity"] = quantity;
  params["expect"] = expect;
  params["options"] = opt.to_json();
  ReportBuilder rb("decay-fit", params);
  rb.set_seed(opt.seed);

  double max_diff = 0.0;
  for (std::size_t i = 0; i < fit.samples.size(); ++i) {
    const DecaySample& s = fit.samples[i];
    max_diff = std::max(max_diff, s.difference);
    rb.add_row({"decay-fit", quantity, i, {s.radius, s.proxy, std::log(s.proxy), std::log(s.difference)},
                s.difference, kExactMatchThreshold, true});
  }
  // A flagged log correction means d ~ s^-n (log s)^c, and the exponent comes from that fit.
  const double fitted = fit.log_correction ? fit.order_with_log : fit.order;
  const double band = 2.0 * (fit.log_correction ? fit.order_with_log_stderr : fit.order_stderr);
  ojson fit_json;
  fit_json["exact_match"] = fit.exact_match;
  fit_json["order"] = json_number(fit.order);
  fit_json["order_stderr"] = json_number(fit.order_stderr);
  fit_json["rms_residual"] = json_number(fit.rms_residual);
  fit_json["order_with_log"] = json_number(fit.order_with_log);
  fit_json["order_with_log_stderr"] = json_number(fit.order_with_log_stderr);
  fit_json["log_coefficient"] = json_number(fit.log_coefficient);
  fit_json["rms_residual_with_log"] = json_number(fit.rms_residual_with_log);
  fit_json["log_correction"] = fit.log_correction;
  fit_json["fitted_order"] = json_number(fitted);
  fit_json["confidence_band"] = {json_number(fitted - band), json_number(fitted + band)};
  fit_json["max_difference"] = json_number(max_diff);
  rb.set_data({{"fit", fit_json}});

  if (expect.empty()) {
    rb.add_check({"decay-fit", "fit computed", "none", fit.exact_match ? 0.0 : fitted, 0.0, r.size(), true,
                  fit_json});
  } else if (expect == "exact") {
    rb.add_check({"decay-fit", "exact match (max difference)", "<=", max_diff, kExactMatchThreshold, r.size(),
                  fit.exact_match, fit_json});
  } else if (expect == "log") {
    rb.add_check({"decay-fit", "logarithmic correction flagged (|c|)", ">=", std::abs(fit.log_coefficient), 0.5,
                  r.size(), fit.log_correction, fit_json});
  } else {
    const double target = parse_real(expect, "expect");
    const double tol = opt.tol.value_or(0.2);
    const double dev = fit.exact_match ? std::numeric_limits<double>::infinity() : std::abs(fitted - target);
    fit_json["expected_order"] = target;
    rb.add_check({"decay-fit", "|order - expected|", "<=", dev, tol, r.size(), dev <= tol, fit_json});
  }
  return rb;
}

inline ReportBuilder run_families(const std::string& type, const RunOptions& opt) {
  std::vector<FamilyType> types;
  if (type == "all") types.assign(kAllFamilies.begin(), kAllFamilies.end());
  else types.push_back(parse_family_type(type));
  const std::size_t n = opt.samples.value_or(100);

  ojson params;
  params["type"] = type;
  params["options"] = opt.to_json();
  ReportBuilder rb("families", params);
  rb.set_seed(opt.seed);

  ojson families = ojson::array();
  for (std::size_t t = 0; t < types.size(); ++t) {
    const FamilyType ft = types[t];
    const KodairaFiber want = expected_fiber(ft);
    struct Sample {
      FamilyParameters params;
      WeierstrassData data;
      SurfaceClassification cls;
    };
    std::vector<Sample> out(n);
    parallel_for(
        n,
        [&](std::size_t i) {
          std::mt19937_64 rng(substream_seed(opt.seed, t * 1000003ULL + i));
          out[i].params = random_family_parameters(ft, rng);
          out[i].data = family_generator(ft, out[i].params);
          out[i].cls = classify_surface(out[i].data);
        },
        opt.workers);
    std::size_t type_ok = 0, euler_ok = 0;
    ojson samples = ojson::array();
    for (const auto& s : out) {
      const int euler = euler_ledger(s.cls);
      type_ok += s.cls.at_infinity.type == want ? 1 : 0;
      euler_ok += euler == 12 ? 1 : 0;
      ojson p;
      for (const auto& [k, v] : s.params) p[k] = rational_string(v);
      ojson fibers = ojson::array();
      for (const auto& r : s.cls.records) fibers.push_back(r.type.name() + " at " + r.place.label());
      samples.push_back({{"parameters", p},
                         {"A", s.data.A.to_string()},
                         {"B", s.data.B.to_string()},
                         {"type_at_infinity", s.cls.at_infinity.type.name()},
                         {"fibers", fibers},
                         {"euler_sum", euler}});
    }
    const std::string name = to_string(ft);
    rb.add_check({"families", name + ": fiber type at [0:1] is " + want.name(), "==", static_cast<double>(type_ok),
                  static_cast<double>(n), n, type_ok == n, {}});
    rb.add_check({"families", name + ": Euler sum 12", "==", static_cast<double>(euler_ok), static_cast<double>(n), n,
                  euler_ok == n, {}});
    families.push_back({{"type", name}, {"free_parameters", family_free_parameters(ft)}, {"samples", samples}});
  }
  rb.set_data({{"families", families}});
  return rb;
}

}  // namespace instanton

#pragma once

// Flat key=value model specs, e.g.
//   "alg beta=1/6 tau=default L=1 R=5"
//   "algstar nu=1 kappa0=0 L=1 R=30"
//   "semiflat nu=2 epsilon=4pi k0=2 k_series=0.5,0.1"
//   "semiflat-gh nu=2 epsilon=4pi k0=2"   (the GH model pulled back to the semi-flat chart)
// Real values accept decimals, rationals p/q and multiples of pi (4pi, 2*pi, pi/2).

#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "instanton/errors.hpp"
#include "instanton/geometry/model.hpp"
#include "instanton/models/alg.hpp"
#include "instanton/models/algstar.hpp"
#include "instanton/models/semiflat.hpp"
#include "json.hpp"

namespace instanton {

namespace spec_detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

inline double parse_plain(const std::string& s, const std::string& key) {
  if (s.empty()) throw ParseError("empty value for '" + key + "'");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("cannot parse '" + s + "' as a number for '" + key + "'");
  }
  if (used != s.size()) throw ParseError("cannot parse '" + s + "' as a number for '" + key + "'");
  return v;
}

/// Decimal or p/q.
inline double parse_ratio(const std::string& s, const std::string& key) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_plain(s, key);
  const double den = parse_plain(s.substr(slash + 1), key);
  if (den == 0.0) throw ParseError("zero denominator in '" + s + "' for '" + key + "'");
  return parse_plain(s.substr(0, slash), key) / den;
}

}  // namespace spec_detail

inline double parse_real(const std::string& text, const std::string& key = "value") {
  const std::string s = spec_detail::trim(text);
  const auto pos = s.find("pi");
  if (pos == std::string::npos) return spec_detail::parse_ratio(s, key);
  std::string coef = s.substr(0, pos);
  const std::string rest = s.substr(pos + 2);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double c = 1.0;
  if (coef == "-") c = -1.0;
  else if (!coef.empty() && coef != "+") c = spec_detail::parse_ratio(coef, key);
  double d = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') throw ParseError("cannot parse '" + s + "' for '" + key + "'");
    d = spec_detail::parse_plain(rest.substr(1), key);
    if (d == 0.0) throw ParseError("zero denominator in '" + s + "' for '" + key + "'");
  }
  return c * std::numbers::pi / d;
}

inline int parse_int(const std::string& text, const std::string& key) {
  const std::string s = spec_detail::trim(text);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw ParseError("'" + key + "' must be an integer, got '" + s + "'");
  }
  if (used != s.size()) throw ParseError("'" + key + "' must be an integer, got '" + s + "'");
  return static_cast<int>(v);
}

/// "default", "i", "omega", or a + bi / bi (e.g. "0.5+2i", "1.5i").
inline cplx parse_tau(const std::string& text, int beta_num, int beta_den) {
  const std::string s = spec_detail::trim(text);
  if (s == "default") return AlgParams::default_tau(beta_num, beta_den);
  if (s == "i") return {0.0, 1.0};
  if (s == "omega") return tau_omega();
  if (s.empty() || s.back() != 'i') throw ParseError("tau must be default, i, omega or a+bi, got '" + s + "'");
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string::npos) return {0.0, body.empty() || body == "+" ? 1.0 : parse_real(body, "tau")};
  const std::string im = body.substr(split);
  const double imag = im == "+" ? 1.0 : (im == "-" ? -1.0 : parse_real(im, "tau"));
  return {parse_real(body.substr(0, split), "tau"), imag};
}

struct ModelSpec {
  std::string text;
  std::string kind;  // alg | algstar | semiflat | semiflat-gh
  std::vector<std::pair<std::string, std::string>> given;
  AlgParams alg;
  AlgStarParams algstar;
  SemiFlatParams semiflat;
  std::shared_ptr<const GeometryModel> model;

  bool is_alg() const { return kind == "alg"; }
  bool is_algstar() const { return kind == "algstar"; }
  bool is_semiflat() const { return kind == "semiflat" || kind == "semiflat-gh"; }

  /// Resolved parameter record for reports.
  nlohmann::ordered_json resolved() const {
    nlohmann::ordered_json j;
    j["kind"] = kind;
    if (is_alg()) {
      j["beta"] = std::to_string(alg.beta_num) + "/" + std::to_string(alg.beta_den);
      j["tau"] = {alg.tau.real(), alg.tau.imag()};
      j["L"] = alg.L;
      j["R"] = alg.R;
    } else if (is_algstar()) {
      j["nu"] = algstar.nu;
      j["kappa0"] = algstar.kappa0;
      j["L"] = algstar.L;
      j["R"] = algstar.R;
    } else {
      j["nu"] = semiflat.nu;
      j["epsilon"] = semiflat.epsilon;
      j["k0"] = semiflat.k0;
      j["k_series"] = semiflat.k_series;
      j["series_radius"] = std::isfinite(semiflat.series_radius) ? nlohmann::ordered_json(semiflat.series_radius)
                                                                 : nlohmann::ordered_json("inf");
      j["u_max"] = semiflat.u_max;
      j["gh_kappa0"] = semiflat.kappa0();
      j["gh_L"] = semiflat.L();
    }
    return j;
  }
};

inline ModelSpec parse_model_spec(const std::string& text) {
  std::istringstream in(text);
  ModelSpec spec;
  spec.text = text;
  if (!(in >> spec.kind)) throw ParseError("empty model spec");
  std::map<std::string, std::string> kv;
  for (std::string tok; in >> tok;) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    if (kv.count(key)) throw ParseError("duplicate key '" + key + "'");
    kv[key] = tok.substr(eq + 1);
    spec.given.emplace_back(key, tok.substr(eq + 1));
  }

  const auto require_keys = [&](const std::vector<std::string>& allowed) {
    for (const auto& [k, v] : kv) {
      bool ok = false;
      for (const auto& a : allowed) ok = ok || a == k;
      if (!ok) {
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
        throw ParseError("unknown key '" + k + "' for " + spec.kind + " (allowed: " + list + ")");
      }
    }
  };
  const auto get = [&](const std::string& k) -> const std::string* {
    const auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };

  try {
    if (spec.kind == "alg") {
      require_keys({"beta", "tau", "L", "R"});
      AlgParams& p = spec.alg;
      if (const auto* b = get("beta")) {
        const auto slash = b->find('/');
        if (slash == std::string::npos) {
          p.beta_num = parse_int(*b, "beta");
          p.beta_den = 1;
        } else {
          p.beta_num = parse_int(b->substr(0, slash), "beta");
          p.beta_den = parse_int(b->substr(slash + 1), "beta");
        }
        if (p.beta_den <= 0) throw ParseError("beta needs a positive denominator; admissible beta values: " +
                                              admissible_beta_list());
      }
      p.tau = parse_tau(get("tau") ? *get("tau") : "default", p.beta_num, p.beta_den);
      if (const auto* v = get("L")) p.L = parse_real(*v, "L");
      if (const auto* v = get("R")) p.R = parse_real(*v, "R");
      p.validate();
      spec.model = std::make_shared<AlgModel>(p);
    } else if (spec.kind == "algstar") {
      require_keys({"nu", "kappa0", "L", "R"});
      AlgStarParams& p = spec.algstar;
      if (const auto* v = get("nu")) p.nu = parse_int(*v, "nu");
      if (const auto* v = get("kappa0")) p.kappa0 = parse_real(*v, "kappa0");
      if (const auto* v = get("L")) p.L = parse_real(*v, "L");
      if (const auto* v = get("R")) p.R = parse_real(*v, "R");
      p.validate();
      spec.model = std::make_shared<AlgStarModel>(p);
    } else if (spec.kind == "semiflat" || spec.kind == "semiflat-gh") {
      require_keys({"nu", "epsilon", "k0", "k_series", "series_radius", "u_max"});
      SemiFlatParams& p = spec.semiflat;
      if (const auto* v = get("nu")) p.nu = parse_int(*v, "nu");
      if (const auto* v = get("epsilon")) p.epsilon = parse_real(*v, "epsilon");
      if (const auto* v = get("k0")) p.k0 = parse_real(*v, "k0");
      if (const auto* v = get("series_radius")) p.series_radius = parse_real(*v, "series_radius");
      if (const auto* v = get("u_max")) p.u_max = parse_real(*v, "u_max");
      if (const auto* v = get("k_series")) {
        std::stringstream ss(*v);
        for (std::string item; std::getline(ss, item, ',');) p.k_series.push_back(parse_real(item, "k_series"));
      }
      p.validate();
      if (spec.kind == "semiflat") {
        spec.model = std::make_shared<SemiFlatModel>(p);
      } else {
        if (!p.constant_k()) throw ParseError("semiflat-gh is the twin of a constant-k model; drop k_series");
        spec.model = make_semiflat_gh_model(p);
      }
    } else {
      throw ParseError("unknown model kind '" + spec.kind + "' (expected alg, algstar, semiflat or semiflat-gh)");
    }
  } catch (const InvalidParams& e) {
    throw ParseError(std::string("invalid model spec '") + text + "': " + e.what());
  }
  return spec;
}

}  // namespace instanton

#pragma once

// Polynomial input files and the classification ledger as JSON.
//
// Input:
//   {"A": {"degree": 4, "coefficients": ["1", "0", "-3/2", "0", "0"]},
//    "B": {"degree": 6, "coefficients": [...]}}
// Coefficient j multiplies z1^(d-j) z2^j (lowest z2-power first).

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "instanton/errors.hpp"
#include "instanton/weierstrass/weierstrass.hpp"
#include "json.hpp"

namespace instanton {

/// Parses "p", "-p" or "p/q" with decimal integers; q must be nonzero.
inline mpq_class parse_rational(const std::string& text) {
  const auto digits = [](const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!digits(num, true) || !digits(den, false)) throw ParseError("not a rational number: '" + text + "'");
  mpz_class n(num.front() == '+' ? num.substr(1) : num, 10), d(den, 10);
  if (d == 0) throw ParseError("zero denominator in '" + text + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

inline std::string rational_string(const mpq_class& q) { return q.get_str(); }

namespace json_io_detail {

inline HomogPoly parse_form(const nlohmann::json& doc, const char* key, int expected_degree) {
  if (!doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  const auto& f = doc.at(key);
  if (!f.is_object() || !f.contains("degree") || !f.contains("coefficients"))
    throw ParseError(std::string("field '") + key + "' needs 'degree' and 'coefficients'");
  if (!f.at("degree").is_number_integer()) throw ParseError(std::string(key) + ".degree must be an integer");
  const int degree = f.at("degree").get<int>();
  if (degree != expected_degree)
    throw ParseError(std::string(key) + " must have degree " + std::to_string(expected_degree) + ", got " +
                     std::to_string(degree));
  const auto& c = f.at("coefficients");
  if (!c.is_array() || c.size() != static_cast<std::size_t>(degree) + 1)
    throw ParseError(std::string(key) + ".coefficients must be an array of " + std::to_string(degree + 1) +
                     " strings");
  std::vector<mpq_class> coeffs;
  for (const auto& v : c) {
    if (v.is_string()) coeffs.push_back(parse_rational(v.get<std::string>()));
    else if (v.is_number_integer()) coeffs.push_back(mpq_class(mpz_class(std::to_string(v.get<long long>()), 10)));
    else throw ParseError(std::string(key) + ".coefficients entries must be strings like \"3/4\"");
  }
  return HomogPoly::from_z2_ascending(degree, coeffs);
}

inline nlohmann::ordered_json form_json(const HomogPoly& h) {
  nlohmann::ordered_json j;
  j["degree"] = h.degree();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& v : h.z2_ascending()) arr.push_back(rational_string(v));
  j["coefficients"] = arr;
  return j;
}

}  // namespace json_io_detail

/// Parses the polynomial document without checking allowability.
inline WeierstrassData parse_weierstrass_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("polynomial file must be a JSON object");
  return {json_io_detail::parse_form(doc, "A", 4), json_io_detail::parse_form(doc, "B", 6)};
}

inline WeierstrassData read_weierstrass_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_weierstrass_json(ss.str());
}

inline nlohmann::ordered_json weierstrass_json(const WeierstrassData& d) {
  nlohmann::ordered_json j;
  j["A"] = json_io_detail::form_json(d.A);
  j["B"] = json_io_detail::form_json(d.B);
  return j;
}

inline nlohmann::ordered_json fiber_record_json(const FiberRecord& r) {
  nlohmann::ordered_json j;
  j["place"] = r.place.label();
  j["place_kind"] = r.place.is_infinity() ? "infinity"
                    : r.place.kind == PlacePoint::Kind::rational_point ? "rational_point"
                                                                       : "irreducible_factor";
  j["degree"] = r.place.degree();
  j["a"] = r.a == kInfiniteOrder ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(r.a);
  j["b"] = r.b == kInfiniteOrder ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(r.b);
  j["delta"] = r.delta;
  j["type"] = r.type.name();
  j["euler"] = r.euler;
  return j;
}

inline nlohmann::ordered_json classification_json(const SurfaceClassification& cls) {
  nlohmann::ordered_json j;
  auto recs = nlohmann::ordered_json::array();
  for (const auto& r : cls.records) recs.push_back(fiber_record_json(r));
  j["records"] = recs;
  j["at_infinity"] = fiber_record_json(cls.at_infinity);
  j["allowable"] = cls.allowable;
  j["good"] = cls.good;
  j["delta_total"] = cls.delta_total;
  j["euler_sum"] = euler_ledger(cls);
  return j;
}

}  // namespace instanton

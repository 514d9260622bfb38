#pragma once

#include <limits>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "instanton/errors.hpp"
#include "instanton/weierstrass/qpoly.hpp"

namespace instanton {

inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

/// Homogeneous form of fixed degree d in (z1, z2); coefficient i multiplies z1^i z2^(d-i).
class HomogPoly {
 public:
  HomogPoly() = default;
  explicit HomogPoly(int degree) : degree_(degree), c_(static_cast<std::size_t>(degree) + 1) {
    if (degree < 0) throw InvalidParams("homogeneous degree must be nonnegative");
  }
  HomogPoly(int degree, std::vector<mpq_class> by_z1_exponent) : degree_(degree), c_(std::move(by_z1_exponent)) {
    if (degree < 0) throw InvalidParams("homogeneous degree must be nonnegative");
    if (c_.size() != static_cast<std::size_t>(degree) + 1)
      throw InvalidParams("homogeneous polynomial of degree " + std::to_string(degree) + " needs " +
                          std::to_string(degree + 1) + " coefficients");
  }

  /// Coefficients listed by z2-exponent (lowest first): entry j multiplies z1^(d-j) z2^j.
  static HomogPoly from_z2_ascending(int degree, const std::vector<mpq_class>& coeffs) {
    if (coeffs.size() != static_cast<std::size_t>(degree) + 1)
      throw InvalidParams("homogeneous polynomial of degree " + std::to_string(degree) + " needs " +
                          std::to_string(degree + 1) + " coefficients");
    std::vector<mpq_class> c(coeffs.size());
    for (std::size_t j = 0; j < coeffs.size(); ++j) c[static_cast<std::size_t>(degree) - j] = coeffs[j];
    return {degree, std::move(c)};
  }

  /// c z1^i z2^(d-i).
  static HomogPoly monomial(int degree, int z1_exponent, const mpq_class& c = 1) {
    HomogPoly h(degree);
    h.c_.at(static_cast<std::size_t>(z1_exponent)) = c;
    return h;
  }

  int degree() const { return degree_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  /// Coefficient of z1^i z2^(d-i).
  const mpq_class& coeff(int z1_exponent) const { return c_.at(static_cast<std::size_t>(z1_exponent)); }
  void set_coeff(int z1_exponent, const mpq_class& v) { c_.at(static_cast<std::size_t>(z1_exponent)) = v; }

  /// Entry j multiplies z1^(d-j) z2^j.
  std::vector<mpq_class> z2_ascending() const { return {c_.rbegin(), c_.rend()}; }

  bool is_zero() const {
    for (const auto& v : c_)
      if (v != 0) return false;
    return true;
  }

  /// Order of vanishing along z1 = 0, i.e. at [0:1].
  int order_at_z1() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) return static_cast<int>(i);
    return kInfiniteOrder;
  }

  /// f(1, t) as a polynomial in t = z2/z1.
  QPoly dehomogenize() const {
    std::vector<mpq_class> q(c_.size());
    for (int i = 0; i <= degree_; ++i) q[static_cast<std::size_t>(degree_ - i)] = c_[static_cast<std::size_t>(i)];
    return QPoly(std::move(q));
  }

  friend HomogPoly operator+(const HomogPoly& a, const HomogPoly& b) {
    if (a.degree_ != b.degree_) throw InvalidParams("cannot add homogeneous forms of different degree");
    HomogPoly out = a;
    for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] += b.c_[i];
    return out;
  }
  friend HomogPoly operator-(const HomogPoly& a, const HomogPoly& b) { return a + (mpq_class(-1) * b); }
  friend HomogPoly operator*(const HomogPoly& a, const HomogPoly& b) {
    HomogPoly out(a.degree_ + b.degree_);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    return out;
  }
  friend HomogPoly operator*(const mpq_class& s, const HomogPoly& a) {
    HomogPoly out = a;
    for (auto& v : out.c_) v *= s;
    return out;
  }
  friend bool operator==(const HomogPoly& a, const HomogPoly& b) { return a.degree_ == b.degree_ && a.c_ == b.c_; }

  HomogPoly pow(int e) const {
    HomogPoly out = monomial(0, 0);
    for (int i = 0; i < e; ++i) out = out * *this;
    return out;
  }

  mpq_class evaluate(const mpq_class& z1, const mpq_class& z2) const {
    mpq_class acc = 0;
    for (int i = 0; i <= degree_; ++i) {
      mpq_class term = c_[static_cast<std::size_t>(i)];
      for (int k = 0; k < i; ++k) term *= z1;
      for (int k = 0; k < degree_ - i; ++k) term *= z2;
      acc += term;
    }
    return acc;
  }

  std::string to_string() const {
    std::string s;
    for (int i = degree_; i >= 0; --i) {
      mpq_class v = c_[static_cast<std::size_t>(i)];
      if (v == 0) continue;
      if (!s.empty()) {
        s += v < 0 ? " - " : " + ";
        v = abs(v);
      } else if (v < 0) {
        s += "-";
        v = -v;
      }
      const int j = degree_ - i;
      const bool unit = v == 1 && (i > 0 || j > 0);
      std::string mono;
      if (i > 0) mono += "z1" + (i > 1 ? "^" + std::to_string(i) : std::string());
      if (j > 0) mono += std::string(mono.empty() ? "" : "*") + "z2" + (j > 1 ? "^" + std::to_string(j) : std::string());
      s += unit ? mono : v.get_str() + (mono.empty() ? "" : "*" + mono);
    }
    return s.empty() ? "0" : s;
  }

 private:
  int degree_ = 0;
  std::vector<mpq_class> c_{mpq_class(0)};
};

}  // namespace instanton

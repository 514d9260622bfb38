#pragma once

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "instanton/errors.hpp"

namespace instanton {

/// Dense univariate polynomial over Q; c[i] is the coefficient of t^i.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }
  static QPoly constant(const mpq_class& v) { return QPoly(std::vector<mpq_class>{v}); }
  static QPoly monomial(const mpq_class& v, int degree) {
    std::vector<mpq_class> c(static_cast<std::size_t>(degree) + 1);
    c.back() = v;
    return QPoly(std::move(c));
  }
  static QPoly x() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  mpq_class coeff(int i) const { return i >= 0 && i <= degree() ? c_[i] : mpq_class(0); }
  const mpq_class& leading() const {
    if (c_.empty()) throw DegenerateError("leading coefficient of the zero polynomial");
    return c_.back();
  }

  QPoly monic() const {
    if (is_zero()) return *this;
    QPoly out = *this;
    const mpq_class lc = leading();
    for (auto& v : out.c_) v /= lc;
    return out;
  }

  QPoly derivative() const {
    std::vector<mpq_class> d;
    for (int i = 1; i <= degree(); ++i) d.push_back(c_[i] * i);
    return QPoly(std::move(d));
  }

  mpq_class evaluate(const mpq_class& t) const {
    mpq_class acc = 0;
    for (int i = degree(); i >= 0; --i) acc = acc * t + c_[i];
    return acc;
  }

  friend QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<mpq_class> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return QPoly(std::move(c));
  }
  friend QPoly operator-(const QPoly& a) {
    QPoly out = a;
    for (auto& v : out.c_) v = -v;
    return out;
  }
  friend QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }
  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpq_class> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return QPoly(std::move(c));
  }
  friend QPoly operator*(const mpq_class& s, const QPoly& a) { return QPoly::constant(s) * a; }
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division a = q b + r with deg r < deg b.
  static std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw DegenerateError("polynomial division by zero");
    std::vector<mpq_class> r = a.c_;
    const int db = b.degree();
    std::vector<mpq_class> q(a.degree() >= db ? a.degree() - db + 1 : 0);
    for (int i = a.degree(); i >= db; --i) {
      if (r[i] == 0) continue;
      const mpq_class f = r[i] / b.c_[db];
      q[i - db] = f;
      for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.c_[j];
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
  }
  friend QPoly operator/(const QPoly& a, const QPoly& b) { return divmod(a, b).first; }
  friend QPoly operator%(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

  bool divides(const QPoly& a) const { return (a % *this).is_zero(); }

  /// Monic gcd; gcd(0, 0) = 0.
  static QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
      QPoly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  std::string to_string(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      if (c_[i] == 0) continue;
      mpq_class v = c_[i];
      if (!s.empty()) {
        s += v < 0 ? " - " : " + ";
        v = abs(v);
      } else if (v < 0) {
        s += "-";
        v = -v;
      }
      const bool unit = v == 1 && i > 0;
      if (!unit) s += v.get_str();
      if (i > 0) {
        if (!unit) s += "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<mpq_class> c_;
};

struct SquarefreeFactor {
  QPoly factor;  // monic, squarefree, pairwise coprime across the decomposition
  int multiplicity = 0;
};

/// Yun's algorithm: f = lc * Π a_i^i with a_i squarefree and pairwise coprime.
inline std::vector<SquarefreeFactor> squarefree_decomposition(const QPoly& f) {
  if (f.is_zero()) throw DegenerateError("squarefree decomposition of the zero polynomial");
  std::vector<SquarefreeFactor> out;
  if (f.degree() == 0) return out;
  const QPoly df = f.derivative();
  const QPoly a0 = QPoly::gcd(f, df);
  QPoly b = f / a0;
  QPoly c = df / a0;
  QPoly d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    const QPoly a = QPoly::gcd(b, d);
    b = b / a;
    c = d / a;
    d = c - b.derivative();
    if (a.degree() > 0) out.push_back({a.monic(), i});
  }
  return out;
}

}  // namespace instanton

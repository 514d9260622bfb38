#pragma once

// Dense 4D tensor algebra in a coordinate basis. A 2-form is stored as the
// antisymmetric matrix w(i, j) = w(d_i, d_j), so dx^0 ^ dx^1 has w(0,1) = 1.

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace instanton {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using CVec4 = Eigen::Vector4cd;
using CMat4 = Eigen::Matrix4cd;

/// Point in a model chart; the meaning of the coordinates is fixed per model.
using ChartPoint = Vec4;

/// The four independent components of a 3-form, ordered (012), (013), (023), (123).
using ThreeForm = std::array<double, 4>;

inline constexpr std::array<std::array<int, 3>, 4> kThreeFormIndices{
    {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};

inline Vec4 basis_covector(int i) { return Vec4::Unit(i); }

inline Mat4 wedge(const Vec4& a, const Vec4& b) {
  return a * b.transpose() - b * a.transpose();
}

inline CMat4 wedge(const CVec4& a, const CVec4& b) {
  return a * b.transpose() - b * a.transpose();
}

/// Coefficient of dx^0 ^ dx^1 ^ dx^2 ^ dx^3 in a ^ b.
inline double wedge_top(const Mat4& a, const Mat4& b) {
  return a(0, 1) * b(2, 3) - a(0, 2) * b(1, 3) + a(0, 3) * b(1, 2) +
         a(1, 2) * b(0, 3) - a(1, 3) * b(0, 2) + a(2, 3) * b(0, 1);
}

/// Interior product: (i_X w)_b = X^a w_ab.
inline Vec4 interior(const Vec4& x, const Mat4& w) { return w.transpose() * x; }

/// Pullback of a covariant 2-tensor through a map with Jacobian `jac` (d target / d source).
inline Mat4 pullback(const Mat4& t, const Mat4& jac) { return jac.transpose() * t * jac; }

inline int permutation_sign(int a, int b, int c, int d) {
  const std::array<int, 4> p{a, b, c, d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] == p[j]) return 0;
  int inversions = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

/// Hodge star of a 2-form. `orientation` is +1 when dx^0^dx^1^dx^2^dx^3 is positive.
inline Mat4 hodge_star(const Mat4& metric, const Mat4& w, int orientation) {
  const Mat4 inv = metric.inverse();
  const Mat4 raised = inv * w * inv.transpose();
  const double vol = std::sqrt(std::abs(metric.determinant())) * orientation;
  Mat4 out = Mat4::Zero();
  for (int c = 0; c < 4; ++c)
    for (int d = 0; d < 4; ++d) {
      if (c == d) continue;
      double acc = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) acc += permutation_sign(a, b, c, d) * raised(a, b);
      out(c, d) = 0.5 * vol * acc;
    }
  return out;
}

/// Full tensor norm |h|^2 = g^{ac} g^{bd} h_ab h_cd (no 1/2 for forms).
inline double tensor_norm(const Mat4& h, const Mat4& metric) {
  const Mat4 inv = metric.inverse();
  return std::sqrt(std::max(0.0, (inv * h * inv * h.transpose()).trace()));
}

inline double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

inline double max_abs(const ThreeForm& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace instanton

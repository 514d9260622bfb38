#pragma once

// Weierstraß data (A, B) of degrees (4, 6) over P^1, the discriminant
// Δ = 4A³ + 27B², vanishing orders per place, Tate's table and the surface ledger.
// The distinguished place p_∞ is [0:1], i.e. z1 = 0; finite places are
// irreducible factors of f(1, t) in t = z2/z1.

#include <string>
#include <vector>

#include <gmpxx.h>

#include "instanton/errors.hpp"
#include "instanton/weierstrass/factor.hpp"
#include "instanton/weierstrass/homog_poly.hpp"
#include "instanton/weierstrass/qpoly.hpp"

namespace instanton {

/// A rational point [z1:z2] or a monic irreducible factor in t standing for its Galois orbit.
struct PlacePoint {
  enum class Kind { rational_point, irreducible_factor };
  Kind kind = Kind::rational_point;
  mpq_class z1 = 0, z2 = 1;
  QPoly factor;  // empty for p_∞

  static PlacePoint infinity() { return {}; }

  static PlacePoint from_factor(const QPoly& monic_irreducible) {
    PlacePoint p;
    p.factor = monic_irreducible;
    if (monic_irreducible.degree() == 1) {
      p.kind = Kind::rational_point;
      p.z1 = 1;
      p.z2 = -monic_irreducible.coeff(0);
    } else {
      p.kind = Kind::irreducible_factor;
    }
    return p;
  }

  bool is_infinity() const { return kind == Kind::rational_point && z1 == 0; }
  int degree() const { return kind == Kind::rational_point ? 1 : factor.degree(); }

  std::string label() const {
    if (kind == Kind::rational_point) return "[" + z1.get_str() + ":" + z2.get_str() + "]";
    return factor.to_string("t") + " = 0";
  }
};

/// Multiplicity of an irreducible q in f; zero f vanishes to infinite order.
inline int multiplicity(QPoly f, const QPoly& q) {
  if (f.is_zero()) return kInfiniteOrder;
  int m = 0;
  for (;;) {
    auto [quot, r] = QPoly::divmod(f, q);
    if (!r.is_zero()) return m;
    f = std::move(quot);
    ++m;
  }
}

inline std::string order_string(int order) { return order == kInfiniteOrder ? "inf" : std::to_string(order); }

struct WeierstrassData {
  HomogPoly A{4};
  HomogPoly B{6};
};

namespace weierstrass_detail {

inline void require_degrees(const HomogPoly& A, const HomogPoly& B) {
  if (A.degree() != 4) throw InvalidParams("A must have degree 4, got " + std::to_string(A.degree()));
  if (B.degree() != 6) throw InvalidParams("B must have degree 6, got " + std::to_string(B.degree()));
}

inline std::string violation(const std::string& where, int a, int b) {
  return "not allowable: a_p >= 4 and b_p >= 6 at " + where + " (a_p = " + order_string(a) +
         ", b_p = " + order_string(b) + ")";
}

}  // namespace weierstrass_detail

/// Validates degrees and the minimality constraint (no place with a_p >= 4 and b_p >= 6).
inline WeierstrassData make_weierstrass(const HomogPoly& A, const HomogPoly& B) {
  weierstrass_detail::require_degrees(A, B);
  const int a_inf = A.order_at_z1(), b_inf = B.order_at_z1();
  if (A.is_zero() && B.is_zero()) throw NotAllowableError("not allowable: A and B vanish identically");
  if (a_inf >= 4 && b_inf >= 6)
    throw NotAllowableError(weierstrass_detail::violation(PlacePoint::infinity().label(), a_inf, b_inf));
  const QPoly a1 = A.dehomogenize(), b1 = B.dehomogenize();
  const QPoly common = QPoly::gcd(a1, b1);
  if (common.degree() > 0)
    for (const auto& f : factor_over_q(common)) {
      const int a = multiplicity(a1, f.factor), b = multiplicity(b1, f.factor);
      if (a >= 4 && b >= 6)
        throw NotAllowableError(weierstrass_detail::violation(PlacePoint::from_factor(f.factor).label(), a, b));
    }
  return {A, B};
}

/// Δ = 4A³ + 27B² (degree 12).
inline HomogPoly discriminant(const WeierstrassData& data) {
  weierstrass_detail::require_degrees(data.A, data.B);
  HomogPoly d = mpq_class(4) * data.A.pow(3) + mpq_class(27) * data.B.pow(2);
  if (d.is_zero()) throw DegenerateError("discriminant vanishes identically");
  return d;
}

struct PlaceOrders {
  PlacePoint place;
  int a = 0;
  int b = 0;
  int delta = 0;
};

/// p_∞ first (always, even when δ = 0), then every irreducible factor of Δ(1, t).
inline std::vector<PlaceOrders> vanishing_orders(const WeierstrassData& data) {
  const HomogPoly delta = discriminant(data);
  std::vector<PlaceOrders> out;
  out.push_back({PlacePoint::infinity(), data.A.order_at_z1(), data.B.order_at_z1(), delta.order_at_z1()});
  const QPoly a1 = data.A.dehomogenize(), b1 = data.B.dehomogenize(), d1 = delta.dehomogenize();
  for (const auto& f : factor_over_q(d1))
    out.push_back({PlacePoint::from_factor(f.factor), multiplicity(a1, f.factor), multiplicity(b1, f.factor),
                   f.multiplicity});
  return out;
}

// ---------------------------------------------------------------------------
// Tate's table.

struct KodairaFiber {
  enum class Family { I, Istar, II, III, IV, IVstar, IIIstar, IIstar };
  Family family = Family::I;
  int N = 0;  // subscript for I_N and I_N*

  std::string name() const {
    switch (family) {
      case Family::I: return "I" + std::to_string(N);
      case Family::Istar: return "I" + std::to_string(N) + "*";
      case Family::II: return "II";
      case Family::III: return "III";
      case Family::IV: return "IV";
      case Family::IVstar: return "IV*";
      case Family::IIIstar: return "III*";
      case Family::IIstar: return "II*";
    }
    return "?";
  }

  friend bool operator==(const KodairaFiber&, const KodairaFiber&) = default;
};

struct TateResult {
  KodairaFiber type;
  int euler = 0;
};

inline TateResult tate_classify(int a, int b, int delta) {
  using F = KodairaFiber::Family;
  if (a < 0 || b < 0 || delta < 0) throw InvalidParams("vanishing orders must be nonnegative");
  if (delta == kInfiniteOrder) throw DegenerateError("discriminant vanishes identically");
  if (delta == 0) return {{F::I, 0}, 0};
  if (a == 0 && b == 0) return {{F::I, delta}, delta};
  if (delta == 6 && a >= 2 && b >= 3) return {{F::Istar, 0}, 6};
  if (a == 2 && b == 3 && delta > 6) return {{F::Istar, delta - 6}, delta};
  if (delta == 2 && a >= 1 && b == 1) return {{F::II, 0}, 2};
  if (delta == 3 && a == 1 && b >= 2) return {{F::III, 0}, 3};
  if (delta == 4 && a >= 2 && b == 2) return {{F::IV, 0}, 4};
  if (delta == 8 && a >= 3 && b == 4) return {{F::IVstar, 0}, 8};
  if (delta == 9 && a == 3 && b >= 5) return {{F::IIIstar, 0}, 9};
  if (delta == 10 && a >= 4 && b == 5) return {{F::IIstar, 0}, 10};
  throw UnclassifiableError("no Kodaira type for (a, b, delta) = (" + order_string(a) + ", " + order_string(b) +
                            ", " + std::to_string(delta) + ")");
}

struct FiberRecord {
  PlacePoint place;
  int a = 0;
  int b = 0;
  int delta = 0;
  KodairaFiber type;
  int euler = 0;
};

struct SurfaceClassification {
  std::vector<FiberRecord> records;  // places with δ > 0
  FiberRecord at_infinity;           // p_∞, reported even when smooth
  bool allowable = true;
  bool good = false;
  int delta_total = 0;  // Σ δ_p deg p
};

inline SurfaceClassification classify_surface(const WeierstrassData& data) {
  const WeierstrassData checked = make_weierstrass(data.A, data.B);
  SurfaceClassification out;
  out.allowable = true;
  out.good = true;
  for (const auto& po : vanishing_orders(checked)) {
    const TateResult t = tate_classify(po.a, po.b, po.delta);
    const FiberRecord rec{po.place, po.a, po.b, po.delta, t.type, t.euler};
    if (po.place.is_infinity()) out.at_infinity = rec;
    if (po.delta == 0) continue;
    out.records.push_back(rec);
    out.delta_total += po.delta * po.place.degree();
    if (!po.place.is_infinity() && po.delta != 1) out.good = false;
  }
  if (out.delta_total != 12)
    throw Error("internal: discriminant degree count " + std::to_string(out.delta_total) + " != 12");
  return out;
}

/// Σ e_p deg p over the singular places.
inline int euler_ledger(const SurfaceClassification& cls) {
  int total = 0;
  for (const auto& r : cls.records) total += r.euler * r.place.degree();
  return total;
}

}  // namespace instanton

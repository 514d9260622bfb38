#pragma once

// Weierstraß data with a prescribed fiber at p_∞ = [0:1]. Coefficient names follow
// A = Σ a_j z1^(4-j) z2^j and B = Σ b_j z1^(6-j) z2^j. For I_N* (N >= 1) the curve
// 4a2³ + 27b3² = 0 is parametrized by a2 = -3t², b3 = 2t³, and the dependent
// coefficients are solved in the order b2, b1, b0.

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "instanton/errors.hpp"
#include "instanton/weierstrass/weierstrass.hpp"

namespace instanton {

enum class FamilyType { I0s, I1s, I2s, I3s, I4s, II, III, IV, IVs, IIIs, IIs };

inline constexpr std::array<FamilyType, 11> kAllFamilies{FamilyType::I0s, FamilyType::I1s, FamilyType::I2s,
                                                         FamilyType::I3s, FamilyType::I4s, FamilyType::II,
                                                         FamilyType::III, FamilyType::IV,  FamilyType::IVs,
                                                         FamilyType::IIIs, FamilyType::IIs};

inline std::string to_string(FamilyType t) {
  switch (t) {
    case FamilyType::I0s: return "I0*";
    case FamilyType::I1s: return "I1*";
    case FamilyType::I2s: return "I2*";
    case FamilyType::I3s: return "I3*";
    case FamilyType::I4s: return "I4*";
    case FamilyType::II: return "II";
    case FamilyType::III: return "III";
    case FamilyType::IV: return "IV";
    case FamilyType::IVs: return "IV*";
    case FamilyType::IIIs: return "III*";
    case FamilyType::IIs: return "II*";
  }
  return "?";
}

inline FamilyType parse_family_type(const std::string& s) {
  for (FamilyType t : kAllFamilies)
    if (to_string(t) == s) return t;
  std::string known;
  for (FamilyType t : kAllFamilies) known += (known.empty() ? "" : ", ") + to_string(t);
  throw ParseError("unknown fiber type '" + s + "'; expected one of " + known);
}

inline KodairaFiber expected_fiber(FamilyType t) {
  using F = KodairaFiber::Family;
  switch (t) {
    case FamilyType::I0s: return {F::Istar, 0};
    case FamilyType::I1s: return {F::Istar, 1};
    case FamilyType::I2s: return {F::Istar, 2};
    case FamilyType::I3s: return {F::Istar, 3};
    case FamilyType::I4s: return {F::Istar, 4};
    case FamilyType::II: return {F::II, 0};
    case FamilyType::III: return {F::III, 0};
    case FamilyType::IV: return {F::IV, 0};
    case FamilyType::IVs: return {F::IVstar, 0};
    case FamilyType::IIIs: return {F::IIIstar, 0};
    case FamilyType::IIs: return {F::IIstar, 0};
  }
  return {};
}

inline int istar_index(FamilyType t) {
  switch (t) {
    case FamilyType::I1s: return 1;
    case FamilyType::I2s: return 2;
    case FamilyType::I3s: return 3;
    case FamilyType::I4s: return 4;
    default: return 0;
  }
}

/// Free parameters of each family (besides t, a2, b3 for I_N*, N >= 1).
inline std::vector<std::string> family_free_parameters(FamilyType t) {
  switch (t) {
    case FamilyType::I0s: return {"a0", "a1", "a2", "b0", "b1", "b2", "b3"};
    case FamilyType::I1s: return {"a0", "a1", "b0", "b1", "b2"};
    case FamilyType::I2s: return {"a0", "a1", "b0", "b1"};
    case FamilyType::I3s: return {"a0", "a1", "b0"};
    case FamilyType::I4s: return {"a0", "a1"};
    case FamilyType::II: return {"a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3", "b4", "b5"};
    case FamilyType::III: return {"a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3", "b4"};
    case FamilyType::IV: return {"a0", "a1", "a2", "b0", "b1", "b2", "b3", "b4"};
    case FamilyType::IVs: return {"a0", "a1", "b0", "b1", "b2"};
    case FamilyType::IIIs: return {"a0", "a1", "b0", "b1"};
    case FamilyType::IIs: return {"a0", "b0", "b1"};
  }
  return {};
}

using FamilyParameters = std::map<std::string, mpq_class>;

/// The seven coefficients of Δ for A = a0 z1⁴ + a1 z1³z2 + a2 z1²z2², B = b0 z1⁶ + ... + b3 z1³z2³,
/// from z1⁶z2⁶ up to z1¹².
inline std::array<mpq_class, 7> istar_discriminant_coefficients(const std::array<mpq_class, 3>& a,
                                                                const std::array<mpq_class, 4>& b) {
  return {4 * a[2] * a[2] * a[2] + 27 * b[3] * b[3],
          12 * a[1] * a[2] * a[2] + 54 * b[2] * b[3],
          12 * a[1] * a[1] * a[2] + 12 * a[0] * a[2] * a[2] + 54 * b[1] * b[3] + 27 * b[2] * b[2],
          4 * a[1] * a[1] * a[1] + 24 * a[0] * a[1] * a[2] + 54 * b[0] * b[3] + 54 * b[1] * b[2],
          12 * a[0] * a[0] * a[2] + 12 * a[0] * a[1] * a[1] + 27 * b[1] * b[1] + 54 * b[0] * b[2],
          12 * a[0] * a[0] * a[1] + 54 * b[0] * b[1],
          4 * a[0] * a[0] * a[0] + 27 * b[0] * b[0]};
}

inline WeierstrassData family_generator(FamilyType type, const FamilyParameters& params) {
  const std::vector<std::string> free = family_free_parameters(type);
  const int N = istar_index(type);
  std::set<std::string> allowed(free.begin(), free.end());
  if (N >= 1) allowed.insert({"t", "a2", "b3"});
  for (const auto& [k, v] : params)
    if (!allowed.count(k)) {
      std::string names;
      for (const auto& n : allowed) names += (names.empty() ? "" : ", ") + n;
      throw InvalidParams("parameter '" + k + "' is not used by the " + to_string(type) + " family (allowed: " +
                          names + ")");
    }
  const auto get = [&](const std::string& k) {
    const auto it = params.find(k);
    return it == params.end() ? mpq_class(0) : it->second;
  };

  std::array<mpq_class, 5> a{};
  std::array<mpq_class, 7> b{};
  for (const auto& k : free) {
    const int j = k[1] - '0';
    (k[0] == 'a' ? a[j] : b[j]) = get(k);
  }

  const auto require = [&](const mpq_class& v, const std::string& what) {
    if (v == 0) throw ConstraintError(to_string(type) + " family needs " + what + " != 0");
  };

  if (N >= 1) {
    const bool has_pair = params.count("a2") || params.count("b3");
    if (has_pair && params.count("t")) throw InvalidParams("give either t or (a2, b3), not both");
    if (has_pair) {
      a[2] = get("a2");
      b[3] = get("b3");
      require(a[2], "a2");
      require(b[3], "b3");
      if (4 * a[2] * a[2] * a[2] + 27 * b[3] * b[3] != 0)
        throw ConstraintError(to_string(type) + " family needs 4 a2^3 + 27 b3^2 = 0");
    } else {
      const mpq_class t = params.count("t") ? get("t") : mpq_class(1);
      require(t, "t");
      a[2] = -3 * t * t;
      b[3] = 2 * t * t * t;
    }
    if (N >= 2) b[2] = -12 * a[1] * a[2] * a[2] / (54 * b[3]);
    if (N >= 3) b[1] = -(12 * a[1] * a[1] * a[2] + 12 * a[0] * a[2] * a[2] + 27 * b[2] * b[2]) / (54 * b[3]);
    if (N >= 4) b[0] = -(4 * a[1] * a[1] * a[1] + 24 * a[0] * a[1] * a[2] + 54 * b[1] * b[2]) / (54 * b[3]);
    const auto c = istar_discriminant_coefficients({a[0], a[1], a[2]}, {b[0], b[1], b[2], b[3]});
    static const std::array<const char*, 5> names{"", "12 a1 a2^2 + 54 b2 b3",
                                                  "12 a1^2 a2 + 12 a0 a2^2 + 54 b1 b3 + 27 b2^2",
                                                  "4 a1^3 + 24 a0 a1 a2 + 54 b0 b3 + 54 b1 b2",
                                                  "12 a0^2 a2 + 12 a0 a1^2 + 27 b1^2 + 54 b0 b2"};
    require(c[static_cast<std::size_t>(N)], names[static_cast<std::size_t>(N)]);
  } else {
    switch (type) {
      case FamilyType::I0s: require(4 * a[2] * a[2] * a[2] + 27 * b[3] * b[3], "4 a2^3 + 27 b3^2"); break;
      case FamilyType::II: require(b[5], "b5"); break;
      case FamilyType::III: require(a[3], "a3"); break;
      case FamilyType::IV: require(b[4], "b4"); break;
      case FamilyType::IVs: require(b[2], "b2"); break;
      case FamilyType::IIIs: require(a[1], "a1"); break;
      case FamilyType::IIs: require(b[1], "b1"); break;
      default: break;
    }
  }
  return make_weierstrass(HomogPoly::from_z2_ascending(4, {a.begin(), a.end()}),
                          HomogPoly::from_z2_ascending(6, {b.begin(), b.end()}));
}

// ---------------------------------------------------------------------------
// Deterministic random sampling.

/// Uniform integer in [lo, hi] from raw engine output (platform independent).
inline long uniform_int(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline mpq_class random_rational(std::mt19937_64& rng, long max_num = 9, long max_den = 4) {
  mpq_class q(uniform_int(rng, -max_num, max_num), uniform_int(rng, 1, max_den));
  q.canonicalize();
  return q;
}

/// Parameters satisfying the family's open conditions.
inline FamilyParameters random_family_parameters(FamilyType type, std::mt19937_64& rng) {
  for (;;) {
    FamilyParameters p;
    for (const auto& k : family_free_parameters(type)) p[k] = random_rational(rng);
    if (istar_index(type) >= 1) {
      mpq_class t;
      do t = random_rational(rng, 3, 3);
      while (t == 0);
      p["t"] = t;
    }
    try {
      family_generator(type, p);
      return p;
    } catch (const ConstraintError&) {
    } catch (const NotAllowableError&) {
    }
  }
}

/// Random allowable data with nonzero discriminant: half from the families,
/// half generic forms with random sparsity.
inline WeierstrassData random_allowable_data(std::mt19937_64& rng) {
  for (;;) {
    try {
      if (rng() % 2 == 0) {
        const FamilyType t = kAllFamilies[rng() % kAllFamilies.size()];
        const WeierstrassData d = family_generator(t, random_family_parameters(t, rng));
        discriminant(d);
        return d;
      }
      const auto draw = [&](int degree) {
        std::vector<mpq_class> c(static_cast<std::size_t>(degree) + 1);
        const long density = uniform_int(rng, 1, 4);
        for (auto& v : c) v = uniform_int(rng, 0, 3) < density ? random_rational(rng) : mpq_class(0);
        return HomogPoly(degree, std::move(c));
      };
      const WeierstrassData d = make_weierstrass(draw(4), draw(6));
      discriminant(d);
      return d;
    } catch (const NotAllowableError&) {
    } catch (const DegenerateError&) {
    }
  }
}

}  // namespace instanton

#pragma once

// Irreducible factorization over Q of squarefree polynomials (Zassenhaus):
// distinct- and equal-degree factorization modulo a small prime, linear Hensel
// lifting past a Mignotte-type bound, and recombination of lifted factors.
// Degree patterns across several primes certify irreducibility without lifting.

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "instanton/errors.hpp"
#include "instanton/weierstrass/qpoly.hpp"

namespace instanton {
namespace factor_detail {

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;  // coefficient i of t^i, reduced mod p
using ZPoly = std::vector<mpz_class>;

inline void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

inline u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }

inline u64 pow_mod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  for (a %= p; e; e >>= 1, a = mul_mod(a, a, p))
    if (e & 1) r = mul_mod(r, a, p);
  return r;
}

inline u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

inline ModPoly add(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    c[i] = (x + y) % p;
  }
  trim(c);
  return c;
}

inline ModPoly sub(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    c[i] = (x + p - y) % p;
  }
  trim(c);
  return c;
}

inline ModPoly mul(const ModPoly& a, const ModPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mul_mod(a[i], b[j], p)) % p;
  trim(c);
  return c;
}

inline std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b, u64 p) {
  if (b.empty()) throw DegenerateError("modular polynomial division by zero");
  ModPoly r = a;
  const int db = deg(b);
  const u64 inv = inv_mod(b.back(), p);
  ModPoly q(deg(a) >= db ? deg(a) - db + 1 : 0, 0);
  for (int i = deg(a); i >= db; --i) {
    if (r[i] == 0) continue;
    const u64 f = mul_mod(r[i], inv, p);
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] = (r[i - db + j] + p - mul_mod(f, b[j], p)) % p;
  }
  trim(q);
  trim(r);
  return {q, r};
}

inline ModPoly rem(const ModPoly& a, const ModPoly& b, u64 p) { return divmod(a, b, p).second; }

inline ModPoly monic(ModPoly a, u64 p) {
  if (a.empty()) return a;
  const u64 inv = inv_mod(a.back(), p);
  for (auto& v : a) v = mul_mod(v, inv, p);
  return a;
}

inline ModPoly gcd(ModPoly a, ModPoly b, u64 p) {
  while (!b.empty()) {
    ModPoly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a), p);
}

/// s, t with s a + t b = 1 for coprime a, b.
inline std::pair<ModPoly, ModPoly> ext_gcd(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, p);
    r0 = std::move(r1);
    r1 = std::move(r);
    ModPoly s2 = sub(s0, mul(q, s1, p), p);
    ModPoly t2 = sub(t0, mul(q, t1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (deg(r0) != 0) throw DegenerateError("Hensel lifting needs coprime modular factors");
  const u64 inv = inv_mod(r0[0], p);
  for (auto& v : s0) v = mul_mod(v, inv, p);
  for (auto& v : t0) v = mul_mod(v, inv, p);
  return {s0, t0};
}

/// base^e mod f for a multiprecision exponent.
inline ModPoly pow_mod_poly(const ModPoly& base, const mpz_class& e, const ModPoly& f, u64 p) {
  ModPoly result{1};
  ModPoly b = rem(base, f, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, p), f, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, b, p), f, p);
  }
  return result;
}

/// (factor of all irreducible factors of degree d, d) for a monic squarefree f.
inline std::vector<std::pair<ModPoly, int>> distinct_degree(ModPoly f, u64 p) {
  std::vector<std::pair<ModPoly, int>> out;
  const ModPoly x{0, 1};
  ModPoly h = x;
  for (int d = 1; 2 * d <= deg(f); ++d) {
    h = pow_mod_poly(h, mpz_class(p), f, p);
    ModPoly g = gcd(f, sub(h, x, p), p);
    if (deg(g) > 0) {
      f = divmod(f, g, p).first;
      h = rem(h, f, p);
      out.emplace_back(std::move(g), d);
    }
  }
  if (deg(f) > 0) out.emplace_back(f, deg(f));
  return out;
}

/// Cantor–Zassenhaus split of g, a product of irreducibles of degree d (p odd).
inline void equal_degree(const ModPoly& g, int d, u64 p, std::mt19937_64& rng, std::vector<ModPoly>& out) {
  if (deg(g) == d) {
    out.push_back(monic(g, p));
    return;
  }
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, static_cast<unsigned long>(d));
  const mpz_class e = (q - 1) / 2;
  for (;;) {
    ModPoly a(static_cast<std::size_t>(deg(g)), 0);
    for (auto& v : a) v = rng() % p;
    trim(a);
    if (deg(a) < 1) continue;
    ModPoly b = sub(pow_mod_poly(a, e, g, p), ModPoly{1}, p);
    ModPoly s = gcd(g, b, p);
    if (deg(s) > 0 && deg(s) < deg(g)) {
      equal_degree(s, d, p, rng, out);
      equal_degree(divmod(g, s, p).first, d, p, rng, out);
      return;
    }
  }
}

inline ModPoly reduce(const ZPoly& f, u64 p) {
  ModPoly out(f.size());
  const mpz_class P(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < f.size(); ++i) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), f[i].get_mpz_t(), P.get_mpz_t());
    out[i] = r.get_ui();
  }
  trim(out);
  return out;
}

inline ZPoly lift_mod(const ModPoly& f) {
  ZPoly out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = static_cast<unsigned long>(f[i]);
  return out;
}

inline void trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

inline void reduce_mod(ZPoly& a, const mpz_class& m) {
  for (auto& v : a) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  trim(a);
}

/// Primitive integer polynomial with positive leading coefficient, proportional to f.
inline ZPoly primitive_integer(const QPoly& f) {
  mpz_class den = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  ZPoly z;
  for (const auto& c : f.coeffs()) z.push_back(mpz_class(c * den));
  mpz_class g = 0;
  for (const auto& v : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (z.back() < 0) g = -g;
  for (auto& v : z) v /= g;
  return z;
}

inline QPoly to_qpoly(const ZPoly& z) {
  std::vector<mpq_class> c(z.begin(), z.end());
  return QPoly(std::move(c));
}

inline ZPoly symmetric(ZPoly a, const mpz_class& m) {
  const mpz_class half = m / 2;
  for (auto& v : a) {
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    if (v > half) v -= m;
  }
  trim(a);
  return a;
}

inline ZPoly primitive_part(ZPoly a) {
  trim(a);
  mpz_class g = 0;
  for (const auto& v : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g == 0) return a;
  if (a.back() < 0) g = -g;
  for (auto& v : a) v /= g;
  return a;
}

/// Lifts f ≡ g h (mod p), g monic, to f ≡ G H (mod p^k).
inline std::pair<ZPoly, ZPoly> hensel_lift(const ZPoly& f, const ModPoly& g, const ModPoly& h, u64 p, int k) {
  const auto [s, t] = ext_gcd(g, h, p);
  ZPoly G = lift_mod(g), H = lift_mod(h);
  const mpz_class P(static_cast<unsigned long>(p));
  mpz_class m = P;
  for (int j = 1; j < k; ++j) {
    const mpz_class next = m * P;
    ZPoly e(f.size() + 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) e[i] = f[i];
    const ZPoly gh = zmul(G, H);
    if (gh.size() > e.size()) e.resize(gh.size(), 0);
    for (std::size_t i = 0; i < gh.size(); ++i) e[i] -= gh[i];
    reduce_mod(e, next);
    for (auto& v : e) v /= m;  // exact: f ≡ G H (mod m)
    const ModPoly ep = reduce(e, p);
    const ModPoly dg = rem(mul(t, ep, p), g, p);
    const ModPoly dh = divmod(sub(ep, mul(dg, h, p), p), g, p).first;
    const ZPoly DG = lift_mod(dg), DH = lift_mod(dh);
    if (G.size() < DG.size()) G.resize(DG.size(), 0);
    if (H.size() < DH.size()) H.resize(DH.size(), 0);
    for (std::size_t i = 0; i < DG.size(); ++i) G[i] += m * DG[i];
    for (std::size_t i = 0; i < DH.size(); ++i) H[i] += m * DH[i];
    reduce_mod(G, next);
    reduce_mod(H, next);
    m = next;
  }
  return {G, H};
}

inline const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = [] {
    std::vector<u64> out;
    for (u64 n = 3; out.size() < 200; n += 2) {
      bool prime = true;
      for (u64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) {
          prime = false;
          break;
        }
      if (prime) out.push_back(n);
    }
    return out;
  }();
  return primes;
}

/// Degrees of proper-or-not factor products allowed by a modular degree pattern.
inline std::vector<bool> subset_degrees(const std::vector<std::pair<ModPoly, int>>& ddf, int n) {
  std::vector<bool> reach(static_cast<std::size_t>(n) + 1, false);
  reach[0] = true;
  for (const auto& [g, d] : ddf)
    for (int c = 0; c < deg(g) / d; ++c)
      for (int s = n; s >= d; --s)
        if (reach[s - d]) reach[s] = true;
  return reach;
}

}  // namespace factor_detail

/// Monic irreducible factors over Q of a squarefree polynomial of positive degree,
/// sorted by degree and then by coefficients.
inline std::vector<QPoly> irreducible_factors(const QPoly& f) {
  using namespace factor_detail;
  if (f.is_zero()) throw DegenerateError("factorization of the zero polynomial");
  if (f.degree() <= 0) return {};
  if (f.degree() == 1) return {f.monic()};

  ZPoly F = primitive_integer(f);
  const int n = static_cast<int>(F.size()) - 1;
  const mpz_class lc = F.back();

  // Modular images: pick the prime with the fewest factors; intersect degree patterns.
  std::vector<bool> possible(static_cast<std::size_t>(n) + 1, true);
  u64 best_p = 0;
  std::vector<std::pair<ModPoly, int>> best_ddf;
  std::size_t best_count = static_cast<std::size_t>(-1);
  int good_primes = 0;
  for (u64 p : small_primes()) {
    if (lc % static_cast<unsigned long>(p) == 0) continue;
    const ModPoly fp = monic(reduce(F, p), p);
    ModPoly dfp;
    for (int i = 1; i <= deg(fp); ++i) dfp.push_back(mul_mod(fp[i], static_cast<u64>(i) % p, p));
    trim(dfp);
    if (dfp.empty() || deg(gcd(fp, dfp, p)) > 0) continue;
    auto ddf = distinct_degree(fp, p);
    std::size_t count = 0;
    for (const auto& [g, d] : ddf) count += static_cast<std::size_t>(deg(g) / d);
    const auto reach = subset_degrees(ddf, n);
    for (int s = 0; s <= n; ++s) possible[s] = possible[s] && reach[s];
    if (count < best_count) {
      best_count = count;
      best_p = p;
      best_ddf = std::move(ddf);
    }
    bool certified = true;
    for (int s = 1; s < n; ++s) certified = certified && !possible[s];
    if (certified || best_count == 1) return {f.monic()};
    if (++good_primes >= 6) break;
  }
  if (best_p == 0) throw DegenerateError("no suitable prime for modular factorization");

  const u64 p = best_p;
  std::mt19937_64 rng(0x5eed5eedULL ^ p);
  std::vector<ModPoly> modular;
  for (const auto& [g, d] : best_ddf) equal_degree(g, d, p, rng, modular);

  // p^k > 2 * |lc| * 2^n * (n+1) * max|F_i| bounds every factor's coefficients times lc.
  mpz_class maxc = 0;
  for (const auto& v : F) maxc = std::max(maxc, mpz_class(abs(v)));
  mpz_class bound = 2 * abs(lc) * (mpz_class(1) << n) * (n + 1) * maxc;
  int k = 1;
  mpz_class M(static_cast<unsigned long>(p));
  while (M <= bound) {
    M *= static_cast<unsigned long>(p);
    ++k;
  }

  // Sequential two-factor lifting.
  std::vector<ZPoly> lifted;
  ZPoly rest = F;
  for (std::size_t i = 0; i + 1 < modular.size(); ++i) {
    ModPoly h{reduce(ZPoly{lc}, p)};
    for (std::size_t j = i + 1; j < modular.size(); ++j) h = mul(h, modular[j], p);
    auto [G, H] = hensel_lift(rest, modular[i], h, p, k);
    lifted.push_back(std::move(G));
    rest = std::move(H);
  }
  {
    mpz_class inv;
    mpz_class lead = rest.back();
    mpz_invert(inv.get_mpz_t(), lead.get_mpz_t(), M.get_mpz_t());
    for (auto& v : rest) v *= inv;
    reduce_mod(rest, M);
    lifted.push_back(std::move(rest));
  }

  // Recombination over subsets of increasing size.
  std::vector<QPoly> out;
  std::vector<ZPoly> pool = std::move(lifted);
  ZPoly current = F;
  for (std::size_t s = 1; 2 * s <= pool.size();) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      ZPoly cand{current.back()};
      for (std::size_t i : idx) cand = symmetric(zmul(cand, pool[i]), M);
      cand = primitive_part(symmetric(cand, M));
      const QPoly cq = to_qpoly(cand), fq = to_qpoly(current);
      if (cq.degree() > 0 && cq.divides(fq)) {
        out.push_back(cq.monic());
        current = primitive_integer(fq / cq);
        for (std::size_t i = s; i-- > 0;) pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx[i]));
        found = true;
        break;
      }
      // next combination
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == pool.size() - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (current.size() > 1) out.push_back(to_qpoly(current).monic());

  std::sort(out.begin(), out.end(), [](const QPoly& a, const QPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
      if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    return false;
  });
  return out;
}

struct IrreducibleFactor {
  QPoly factor;  // monic irreducible
  int multiplicity = 0;
};

/// Full factorization f = lc * Π factor^multiplicity over Q.
inline std::vector<IrreducibleFactor> factor_over_q(const QPoly& f) {
  std::vector<IrreducibleFactor> out;
  for (const auto& sf : squarefree_decomposition(f))
    for (auto& g : irreducible_factors(sf.factor)) out.push_back({std::move(g), sf.multiplicity});
  std::sort(out.begin(), out.end(), [](const IrreducibleFactor& a, const IrreducibleFactor& b) {
    if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
    for (int i = a.factor.degree(); i >= 0; --i)
      if (a.factor.coeff(i) != b.factor.coeff(i)) return a.factor.coeff(i) < b.factor.coeff(i);
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

}  // namespace instanton

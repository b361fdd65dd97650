#pragma once

#include <cmath>
#include <optional>

#include "reclab/tower.hpp"

// The multiplicative formal group F(X,Y) = X + Y + XY acting on the maximal
// ideal of O_M. Every operation has a closed form in terms of 1 + x.

namespace reclab {

namespace detail {

inline void require_max_ideal(const TowerElement& x, const char* what) {
  Valuation v = pi_val(x);
  if (!v.exhausted && v.value < 1) fail(Errc::NotInMaximalIdeal, std::string(what) + ": argument is not in the maximal ideal");
}

}  // namespace detail

inline TowerElement f_add(const TowerElement& x, const TowerElement& y) {
  detail::require_max_ideal(x, "f_add");
  detail::require_max_ideal(y, "f_add");
  return x + y + x * y;
}

inline TowerElement f_neg(const TowerElement& x) {
  detail::require_max_ideal(x, "f_neg");
  const auto one = TowerElement::one(x.params());
  return inv_unit(one + x) - one;
}

inline TowerElement f_sub(const TowerElement& x, const TowerElement& y) { return f_add(x, f_neg(y)); }

/// [a](x) = (1+x)^â - 1 with â the representative of a in [0, p^P).
/// For v(x) >= 1 every p-th power raises v((1+x)^{p^k} - 1) by at least p-1,
/// so (1+x)^{p^P} ≡ 1 mod Π^{1+P(p-1)}: the result depends on a mod p^P only.
inline TowerElement f_int_mult(const PAdicScalar& a, const TowerElement& x) {
  detail::require_max_ideal(x, "f_int_mult");
  const int prec = std::min(a.precision(), x.precision());
  const u64 lift = a.with_precision(prec).value();
  const auto one = TowerElement::one(x.params());
  return (one + x).with_precision(prec).pow(lift) - one;
}

inline TowerElement f_int_mult(i64 a, const TowerElement& x) {
  return f_int_mult(PAdicScalar(x.prime(), x.precision(), a), x);
}

/// λ(x) = log(1 + x). Costs one p-digit of precision (x is divided by Π once).
inline TowerElement f_log(const TowerElement& x) {
  detail::require_max_ideal(x, "f_log");
  const auto& tp = x.params();
  const int n = tp->n_pi;
  const u64 p = tp->p;
  Valuation v = pi_val(x);
  TowerElement x1 = div_exact_pi(x, 1);
  const int prec = x1.precision();
  TowerElement sum = TowerElement::zero(tp).with_precision(prec);
  if (v.exhausted) return sum;
  const int cap = n * prec;
  const TowerElement eps = detail::eps(tp).with_precision(prec);
  const u64 m = sum.mod();

  TowerElement x1k = TowerElement::one(tp).with_precision(prec);
  for (int k = 1;; ++k) {
    // h(k) = k·v - (p-1)·log_p(k) bounds the valuation of the k-th term and
    // increases for k > (p-1)/(v ln p); stop once it clears the precision cap.
    const double h = k * v.value - n * std::log(static_cast<double>(k)) / std::log(static_cast<double>(p));
    if (k > 2 * n && h >= cap + 1) break;
    x1k = x1k * x1;
    const int vk = detail::val(static_cast<u64>(k), p);
    const u64 b = static_cast<u64>(k) / detail::ipow(p, static_cast<unsigned>(vk));
    TowerElement term = x1k.times_pi_pow(k - vk * n) * eps.pow(static_cast<u64>(vk));
    u64 coef = detail::inv_mod_pn(b % m, p, m);
    if (k % 2 == 0) coef = (m - coef) % m;
    sum = sum + PAdicScalar::from_residue(p, prec, coef) * term;
  }
  return sum;
}

/// exp(x) - 1 for v(x) >= 2; diverges at v(x) = 1 = v(p)/(p-1).
inline TowerElement f_exp(const TowerElement& x) {
  Valuation v = pi_val(x);
  if (!v.exhausted && v.value < 2) fail(Errc::ExpDiverges, "exp needs v(x) >= 2");
  const auto& tp = x.params();
  const int n = tp->n_pi;
  const u64 p = tp->p;
  TowerElement x2 = div_exact_pi(x, 2);
  const int prec = x2.precision();
  TowerElement sum = TowerElement::zero(tp).with_precision(prec);
  if (v.exhausted) return sum;
  const int cap = n * prec;
  const TowerElement eps = detail::eps(tp).with_precision(prec);
  const u64 m = sum.mod();

  TowerElement x2k = TowerElement::one(tp).with_precision(prec);
  int a = 0;         // v_p(k!)
  u64 unit = 1 % m;  // k! / p^a mod p^prec
  for (int k = 1;; ++k) {
    const int vk = detail::val(static_cast<u64>(k), p);
    a += vk;
    unit = detail::mulmod(unit, (static_cast<u64>(k) / detail::ipow(p, static_cast<unsigned>(vk))) % m, m);
    if (k * (v.value - 1) + 1 >= cap) break;  // lower bound on every later term
    x2k = x2k * x2;
    TowerElement term = x2k.times_pi_pow(2 * k - n * a) * eps.pow(static_cast<u64>(a));
    sum = sum + PAdicScalar::from_residue(p, prec, detail::inv_mod_pn(unit, p, m)) * term;
  }
  return sum;
}

/// N_F(x) = x +_F σx +_F ... = N_{M/L}(1 + x) - 1.
inline TowerElement f_norm_operator(const TowerElement& x) {
  detail::require_max_ideal(x, "f_norm_operator");
  const auto one = TowerElement::one(x.params());
  return norm_ML(one + x) - one;
}

/// j in [0, p) with 1 + x = η^j at precision, if any.
inline std::optional<int> torsion_exponent(const TowerElement& x) {
  const auto& tp = x.params();
  const auto one = TowerElement::one(tp);
  const auto eta = TowerElement::eta(tp);
  TowerElement e = one;
  for (int j = 0; j < static_cast<int>(tp->p); ++j) {
    if (one + x == e) return j;
    e = e * eta;
  }
  return std::nullopt;
}

}  // namespace reclab

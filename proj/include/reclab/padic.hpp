#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "reclab/error.hpp"

namespace reclab {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

namespace detail {

// Moduli are kept below 2^40 so that sums of a few hundred products fit in 128 bits.
inline constexpr u64 kMaxModulus = u64{1} << 40;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
inline u64 addmod(u64 a, u64 b, u64 m) { return (a + b) % m; }
inline u64 submod(u64 a, u64 b, u64 m) { return (a + m - b % m) % m; }

inline u64 reduce_signed(i64 v, u64 m) {
  i64 r = v % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

inline u64 ipow(u64 base, unsigned e) {
  u64 r = 1;
  while (e-- > 0) r *= base;
  return r;
}

inline u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// p-adic valuation of v (v != 0).
inline int val(u64 v, u64 p) {
  int k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

/// Inverse of a unit modulo p^n via Newton lifting from the inverse mod p.
inline u64 inv_mod_pn(u64 a, u64 p, u64 modulus) {
  a %= modulus;
  u64 x = powmod(a % p, p - 2, p);  // inverse mod p
  u64 cur = p;
  while (cur < modulus) {
    cur = (cur > modulus / cur) ? modulus : cur * cur;
    // x <- x (2 - a x)
    u64 ax = mulmod(a % cur, x, cur);
    x = mulmod(x, submod(2 % cur, ax, cur), cur);
  }
  return x % modulus;
}

}  // namespace detail

/// Valuation that may be exhausted by the available precision ("≥ bound").
struct Valuation {
  int value = 0;
  bool exhausted = false;

  friend bool operator==(const Valuation&, const Valuation&) = default;
  std::string to_string() const {
    return exhausted ? ">=" + std::to_string(value) : std::to_string(value);
  }
};

/// An element of Z/p^N for an odd prime p, carrying its precision N.
class PAdicScalar {
 public:
  PAdicScalar(u64 p, int precision, i64 value = 0) : p_(p), n_(precision) {
    if (p == 2 || !detail::is_prime(p)) fail(Errc::InvalidPrime, "prime must be an odd prime, got " + std::to_string(p));
    if (precision < 0) fail(Errc::PrecisionTooLow, "negative precision");
    mod_ = detail::ipow(p, static_cast<unsigned>(precision));
    if (mod_ > detail::kMaxModulus) fail(Errc::PrecisionTooHigh, "p^N exceeds 2^40");
    v_ = detail::reduce_signed(value, mod_);
  }

  static PAdicScalar from_residue(u64 p, int precision, u64 value) {
    PAdicScalar r(p, precision, 0);
    r.v_ = value % r.mod_;
    return r;
  }

  u64 prime() const { return p_; }
  int precision() const { return n_; }
  u64 value() const { return v_; }
  u64 modulus() const { return mod_; }
  bool is_zero() const { return v_ == 0; }

  /// Symmetric representative in (-p^N/2, p^N/2].
  i64 centered() const {
    return v_ > mod_ / 2 ? static_cast<i64>(v_) - static_cast<i64>(mod_) : static_cast<i64>(v_);
  }

  PAdicScalar with_precision(int n) const {
    if (n > n_) fail(Errc::PrecisionTooLow, "cannot raise precision of a scalar");
    return from_residue(p_, n, v_);
  }

  PAdicScalar operator-() const { return from_residue(p_, n_, (mod_ - v_) % mod_); }

  friend PAdicScalar operator+(const PAdicScalar& a, const PAdicScalar& b) {
    auto [x, y] = coerce(a, b);
    return from_residue(x.p_, x.n_, detail::addmod(x.v_, y.v_, x.mod_));
  }
  friend PAdicScalar operator-(const PAdicScalar& a, const PAdicScalar& b) {
    auto [x, y] = coerce(a, b);
    return from_residue(x.p_, x.n_, detail::submod(x.v_, y.v_, x.mod_));
  }
  friend PAdicScalar operator*(const PAdicScalar& a, const PAdicScalar& b) {
    auto [x, y] = coerce(a, b);
    return from_residue(x.p_, x.n_, detail::mulmod(x.v_, y.v_, x.mod_));
  }
  friend bool operator==(const PAdicScalar& a, const PAdicScalar& b) {
    auto [x, y] = coerce(a, b);
    return x.v_ == y.v_;
  }

  friend std::ostream& operator<<(std::ostream& os, const PAdicScalar& a) {
    return os << a.v_ << " (mod " << a.p_ << "^" << a.n_ << ")";
  }

 private:
  static std::pair<PAdicScalar, PAdicScalar> coerce(const PAdicScalar& a, const PAdicScalar& b) {
    if (a.p_ != b.p_) fail(Errc::PrimeMismatch, "scalars over different primes");
    int n = std::min(a.n_, b.n_);
    return {a.with_precision(n), b.with_precision(n)};
  }

  u64 p_;
  int n_;
  u64 mod_;
  u64 v_ = 0;
};

/// Largest k <= N with p^k | a; exhausted when a == 0 at its precision.
inline Valuation val_p(const PAdicScalar& a) {
  if (a.is_zero()) return {a.precision(), true};
  return {detail::val(a.value(), a.prime()), false};
}

inline PAdicScalar inv_unit(const PAdicScalar& a) {
  if (a.precision() == 0 || a.value() % a.prime() == 0) fail(Errc::NotAUnit, "scalar is divisible by p");
  return PAdicScalar::from_residue(a.prime(), a.precision(), detail::inv_mod_pn(a.value(), a.prime(), a.modulus()));
}

/// Exact division by p^k; the result has precision N - k.
inline PAdicScalar div_exact_p(const PAdicScalar& a, int k) {
  if (k < 0) fail(Errc::NotDivisible, "negative exponent");
  auto v = val_p(a);
  if (v.value < k) fail(Errc::NotDivisible, "valuation " + v.to_string() + " < " + std::to_string(k));
  u64 pk = detail::ipow(a.prime(), static_cast<unsigned>(k));
  return PAdicScalar::from_residue(a.prime(), a.precision() - k, a.value() / pk);
}

}  // namespace reclab

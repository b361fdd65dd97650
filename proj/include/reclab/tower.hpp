#pragma once

#include <memory>
#include <random>
#include <vector>

#include "reclab/padic.hpp"
#include "reclab/residue.hpp"

// Arithmetic in O_L = Z_p[Π]/(f), f(T) = ((1+T)^p - 1)/T, and in the unramified
// extension O_M = O_L[u]/(g) of degree p^m. Elements are stored in the basis
// Π^i u^j (0 <= i < p-1, 0 <= j < p^m) with coefficients in Z/p^prec.

namespace reclab {

struct TowerParams {
  u64 p = 0;
  int m = 0;
  int N = 0;
  int n_pi = 0;  // p - 1
  int n_u = 0;   // p^m
  std::vector<u64> f;        // f_0..f_{p-1}, monic
  std::vector<u64> g;        // g_0..g_{n_u}, monic
  ResidueFieldPtr residue;   // F_p[u]/(g mod p)
  std::vector<u64> eps;      // Π^{p-1} = p·ε, ε in O_L (length n_pi)
  std::vector<u64> eps_inv;  // ε^{-1}
  std::vector<u64> trace_pi_pow;  // Tr_{L/Q_p}(Π^i), i < n_pi
  // sigma_mat[j][l] = O_L coefficients (length n_pi) of σ(u)^j at u^l.
  std::vector<std::vector<std::vector<u64>>> sigma_mat;
  std::vector<u64> sigma_u;  // full coefficient vector of σ(u)

  u64 modulus() const { return detail::ipow(p, static_cast<unsigned>(N)); }
  std::size_t size() const { return static_cast<std::size_t>(n_pi) * n_u; }
  int galois_order() const { return n_u; }
};

using TowerParamsPtr = std::shared_ptr<const TowerParams>;

/// σ^k with k taken mod p^m.
struct GaloisIndex {
  int k = 0;
  GaloisIndex() = default;
  GaloisIndex(int k_, int order) : k(((k_ % order) + order) % order) {}
};

class TowerElement {
 public:
  explicit TowerElement(TowerParamsPtr params)
      : params_(std::move(params)), c_(params_->size(), 0), prec_(params_->N) {}

  TowerElement(TowerParamsPtr params, std::vector<u64> coeffs, int prec, int pi_shift = 0)
      : params_(std::move(params)), c_(std::move(coeffs)), prec_(prec), shift_(pi_shift) {
    if (c_.size() != params_->size()) fail(Errc::ParamsMismatch, "coefficient count does not match tower");
    if (prec_ > params_->N) prec_ = params_->N;
    if (prec_ < 0) prec_ = 0;
    reduce();
    absorb_shift();
  }

  static TowerElement zero(const TowerParamsPtr& t) { return TowerElement(t); }
  static TowerElement from_int(const TowerParamsPtr& t, i64 v) {
    TowerElement r(t);
    r.c_[0] = detail::reduce_signed(v, r.mod());
    return r;
  }
  static TowerElement one(const TowerParamsPtr& t) { return from_int(t, 1); }
  static TowerElement pi(const TowerParamsPtr& t) { return monomial(t, 1, 0); }
  static TowerElement u(const TowerParamsPtr& t) { return monomial(t, 0, 1); }
  /// η = 1 + Π, a primitive p-th root of unity.
  static TowerElement eta(const TowerParamsPtr& t) { return one(t) + pi(t); }
  /// Π^i u^j, reducing i and j through f and g when out of range.
  static TowerElement monomial(const TowerParamsPtr& t, int i, int j) {
    TowerElement r(t);
    if (i < t->n_pi && j < t->n_u) {
      r.c_[static_cast<std::size_t>(i) * t->n_u + j] = 1;
      return r;
    }
    TowerElement pu = one(t);
    for (int k = 0; k < i; ++k) pu = pu.times_pi();
    TowerElement uu = one(t);
    TowerElement base = u(t);
    for (int k = 0; k < j; ++k) uu = uu * base;
    return pu * uu;
  }
  static TowerElement from_scalar(const TowerParamsPtr& t, const PAdicScalar& s) {
    if (s.prime() != t->p) fail(Errc::PrimeMismatch, "scalar prime differs from tower prime");
    TowerElement r(t);
    r.prec_ = std::min(t->N, s.precision());
    r.c_[0] = s.value() % r.mod();
    return r;
  }
  /// Lift of a residue element with zero Π-part coefficients beyond the constant.
  static TowerElement lift(const TowerParamsPtr& t, const ResidueElement& r) {
    if (r.field() != t->residue) fail(Errc::ParamsMismatch, "residue element from a foreign field");
    TowerElement e(t);
    for (int j = 0; j < t->n_u; ++j) e.c_[j] = r.coeffs()[j];
    return e;
  }

  const TowerParamsPtr& params() const { return params_; }
  u64 prime() const { return params_->p; }
  int precision() const { return prec_; }
  int pi_shift() const { return shift_; }
  u64 mod() const { return detail::ipow(params_->p, static_cast<unsigned>(prec_)); }
  const std::vector<u64>& raw() const { return c_; }
  u64 raw(int i, int j) const { return c_[static_cast<std::size_t>(i) * params_->n_u + j]; }
  PAdicScalar coeff(int i, int j) const { return PAdicScalar::from_residue(params_->p, prec_, raw(i, j)); }

  bool is_zero() const {
    for (auto c : c_)
      if (c) return false;
    return true;
  }

  /// True when every u^j coefficient with j > 0 vanishes at precision.
  bool in_base_field() const {
    for (int i = 0; i < params_->n_pi; ++i)
      for (int j = 1; j < params_->n_u; ++j)
        if (raw(i, j) != 0) return false;
    return true;
  }

  TowerElement with_precision(int prec) const {
    if (prec > prec_) fail(Errc::PrecisionTooLow, "cannot raise element precision");
    return TowerElement(params_, c_, prec, shift_);
  }

  TowerElement operator-() const {
    TowerElement r = *this;
    const u64 m = mod();
    for (auto& c : r.c_) c = (m - c) % m;
    return r;
  }

  friend TowerElement operator+(const TowerElement& a, const TowerElement& b) { return add(a, b, false); }
  friend TowerElement operator-(const TowerElement& a, const TowerElement& b) { return add(a, b, true); }

  friend TowerElement operator*(const TowerElement& a, const TowerElement& b) {
    check_same(a, b);
    TowerElement r(a.params_);
    r.prec_ = std::min(a.prec_, b.prec_);
    r.shift_ = a.shift_ + b.shift_;
    r.c_ = mul_raw(*a.params_, a.c_, b.c_, r.mod());
    r.absorb_shift();
    return r;
  }

  friend TowerElement operator*(const PAdicScalar& s, const TowerElement& a) {
    if (s.prime() != a.prime()) fail(Errc::PrimeMismatch, "scalar prime differs from tower prime");
    TowerElement r = a;
    r.prec_ = std::min(a.prec_, s.precision());
    const u64 m = r.mod();
    for (auto& c : r.c_) c = detail::mulmod(c % m, s.value() % m, m);
    return r;
  }
  friend TowerElement operator*(i64 s, const TowerElement& a) {
    return PAdicScalar(a.prime(), a.prec_, s) * a;
  }

  /// Equality at the smaller of the two precisions.
  friend bool operator==(const TowerElement& a, const TowerElement& b) { return (a - b).is_zero(); }

  TowerElement pow(u64 e) const {
    TowerElement r = one(params_).with_precision(prec_);
    TowerElement b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  /// Multiplication by Π without touching pi_shift.
  TowerElement times_pi() const {
    const auto& t = *params_;
    TowerElement r = *this;
    const u64 m = mod();
    for (int j = 0; j < t.n_u; ++j) {
      const u64 top = raw(t.n_pi - 1, j);
      for (int i = t.n_pi - 1; i > 0; --i) r.at(i, j) = raw(i - 1, j);
      r.at(0, j) = 0;
      if (top)
        for (int i = 0; i < t.n_pi; ++i)
          r.at(i, j) = detail::submod(r.at(i, j), detail::mulmod(top, t.f[i] % m, m), m);
    }
    return r;
  }

  /// Multiplies the stored polynomial by Π^k (k >= 0), keeping pi_shift.
  TowerElement times_pi_pow(int k) const {
    TowerElement r = *this;
    for (int i = 0; i < k; ++i) r = r.times_pi();
    return r;
  }

  /// Returns a copy whose pi_shift is set to `shift` (the polynomial is unchanged).
  TowerElement with_pi_shift(int shift) const {
    TowerElement r = *this;
    r.shift_ = shift;
    r.absorb_shift();
    return r;
  }

  /// Multiplication by Π^k for any integer k, recorded in pi_shift when k < 0.
  TowerElement shift_pi(int k) const { return with_pi_shift(shift_ + k); }

  /// Same coefficients read in another tower with the same p, m and g, with the
  /// representatives taken as exact at the new working precision.
  TowerElement reinterpret(const TowerParamsPtr& other) const {
    if (other->p != params_->p || other->m != params_->m || other->g.size() != params_->g.size())
      fail(Errc::ParamsMismatch, "towers differ in shape");
    return TowerElement(other, c_, other->N, shift_);
  }

 private:
  friend class TowerAccess;

  u64& at(int i, int j) { return c_[static_cast<std::size_t>(i) * params_->n_u + j]; }

  void reduce() {
    const u64 m = mod();
    for (auto& c : c_) c %= m;
  }

  void absorb_shift() {
    if (shift_ > 0) {
      int k = shift_;
      shift_ = 0;
      *this = times_pi_pow(k);
    }
  }

  static void check_same(const TowerElement& a, const TowerElement& b) {
    if (a.params_ != b.params_) fail(Errc::ParamsMismatch, "elements from different towers");
  }

  static TowerElement add(const TowerElement& a, const TowerElement& b, bool negate) {
    check_same(a, b);
    const int s = std::min(a.shift_, b.shift_);
    TowerElement x = a.times_pi_pow(a.shift_ - s);
    TowerElement y = b.times_pi_pow(b.shift_ - s);
    TowerElement r(a.params_);
    r.prec_ = std::min(a.prec_, b.prec_);
    r.shift_ = s;
    const u64 m = r.mod();
    for (std::size_t k = 0; k < r.c_.size(); ++k)
      r.c_[k] = negate ? detail::submod(x.c_[k] % m, y.c_[k] % m, m) : detail::addmod(x.c_[k] % m, y.c_[k] % m, m);
    r.absorb_shift();
    return r;
  }

 public:
  /// Product of coefficient vectors reduced mod f(Π), g(u) and the modulus m.
  static std::vector<u64> mul_raw(const TowerParams& t, const std::vector<u64>& a, const std::vector<u64>& b, u64 m) {
    const int ni = 2 * t.n_pi - 1, nj = 2 * t.n_u - 1;
    std::vector<u128> acc(static_cast<std::size_t>(ni) * nj, 0);
    for (int i1 = 0; i1 < t.n_pi; ++i1)
      for (int j1 = 0; j1 < t.n_u; ++j1) {
        const u64 x = a[static_cast<std::size_t>(i1) * t.n_u + j1] % m;
        if (!x) continue;
        for (int i2 = 0; i2 < t.n_pi; ++i2) {
          u128* row = &acc[static_cast<std::size_t>(i1 + i2) * nj + j1];
          const u64* brow = &b[static_cast<std::size_t>(i2) * t.n_u];
          for (int j2 = 0; j2 < t.n_u; ++j2) row[j2] += static_cast<u128>(x) * (brow[j2] % m);
        }
      }
    std::vector<u64> tmp(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k) tmp[k] = static_cast<u64>(acc[k] % m);
    auto T = [&](int i, int j) -> u64& { return tmp[static_cast<std::size_t>(i) * nj + j]; };
    for (int j = nj - 1; j >= t.n_u; --j)
      for (int i = 0; i < ni; ++i) {
        const u64 c = T(i, j);
        if (!c) continue;
        T(i, j) = 0;
        for (int s = 0; s < t.n_u; ++s)
          T(i, j - t.n_u + s) = detail::submod(T(i, j - t.n_u + s), detail::mulmod(c, t.g[s] % m, m), m);
      }
    for (int i = ni - 1; i >= t.n_pi; --i)
      for (int j = 0; j < t.n_u; ++j) {
        const u64 c = T(i, j);
        if (!c) continue;
        T(i, j) = 0;
        for (int s = 0; s < t.n_pi; ++s)
          T(i - t.n_pi + s, j) = detail::submod(T(i - t.n_pi + s, j), detail::mulmod(c, t.f[s] % m, m), m);
      }
    std::vector<u64> r(t.size());
    for (int i = 0; i < t.n_pi; ++i)
      for (int j = 0; j < t.n_u; ++j) r[static_cast<std::size_t>(i) * t.n_u + j] = T(i, j);
    return r;
  }

 private:
  TowerParamsPtr params_;
  std::vector<u64> c_;
  int prec_ = 0;
  int shift_ = 0;  // element = Π^shift · Σ c_ij Π^i u^j; only negative values are stored
};

/// Π-adic valuation with v(Π) = 1 (so v(p) = p - 1); exhausted at the precision cap.
inline Valuation pi_val(const TowerElement& a) {
  const auto& t = *a.params();
  int best = -1;
  for (int i = 0; i < t.n_pi; ++i)
    for (int j = 0; j < t.n_u; ++j) {
      const u64 c = a.raw(i, j);
      if (!c) continue;
      const int v = (t.n_pi) * detail::val(c, t.p) + i;
      if (best < 0 || v < best) best = v;
    }
  if (best < 0) return {t.n_pi * a.precision() + a.pi_shift(), true};
  return {best + a.pi_shift(), false};
}

namespace detail {

inline TowerElement from_base_coeffs(const TowerParamsPtr& t, const std::vector<u64>& base, int prec) {
  std::vector<u64> c(t->size(), 0);
  for (int i = 0; i < t->n_pi; ++i) c[static_cast<std::size_t>(i) * t->n_u] = base[i];
  return TowerElement(t, std::move(c), prec);
}

inline TowerElement eps(const TowerParamsPtr& t) { return from_base_coeffs(t, t->eps, t->N); }
inline TowerElement eps_inv(const TowerParamsPtr& t) { return from_base_coeffs(t, t->eps_inv, t->N); }

/// Divides every stored coefficient by p^k (exact, checked); precision drops by k.
inline TowerElement div_coeffs_p(const TowerElement& a, int k) {
  const u64 pk = ipow(a.prime(), static_cast<unsigned>(k));
  std::vector<u64> c = a.raw();
  for (auto& x : c) {
    if (x % pk != 0) fail(Errc::NotDivisible, "coefficient not divisible by p^" + std::to_string(k));
    x /= pk;
  }
  return TowerElement(a.params(), std::move(c), std::max(0, a.precision() - k), a.pi_shift());
}

}  // namespace detail

/// Residue class in F_q of an integral element.
inline ResidueElement residue(const TowerElement& a);

/// Exact quotient by Π^k. Costs ceil(k/(p-1)) p-digits of precision.
inline TowerElement div_exact_pi(const TowerElement& a, int k) {
  const auto& tp = a.params();
  const int n = tp->n_pi;
  Valuation v = pi_val(a);
  if (!v.exhausted && v.value < k)
    fail(Errc::NotDivisible, "valuation " + v.to_string() + " < " + std::to_string(k));
  int need = k - a.pi_shift();  // power of Π to remove from the stored polynomial
  TowerElement w = a.with_pi_shift(0);
  if (need <= 0) return w.times_pi_pow(-need);
  if (v.exhausted) {
    int loss = (need + n - 1) / n;
    return TowerElement::zero(tp).with_precision(std::max(0, a.precision() - loss));
  }
  const int q = need / n, r = need % n;
  TowerElement einv = detail::eps_inv(tp);
  if (r > 0) {
    TowerElement x = w.times_pi_pow(n - r) * einv.pow(static_cast<u64>(q + 1));
    return detail::div_coeffs_p(x, q + 1);
  }
  return detail::div_coeffs_p(w * einv.pow(static_cast<u64>(q)), q);
}

inline ResidueElement residue(const TowerElement& a) {
  const auto& t = *a.params();
  FpPoly c(t.n_u, 0);
  if (a.pi_shift() < 0) {
    Valuation v = pi_val(a);
    if (!v.exhausted && v.value < 0) fail(Errc::NotDivisible, "element is not integral");
    if (v.exhausted || v.value > 0) return ResidueElement(t.residue, std::move(c));
    return residue(div_exact_pi(a, 0));
  }
  for (int j = 0; j < t.n_u; ++j) c[j] = a.raw(0, j) % t.p;
  return ResidueElement(t.residue, std::move(c));
}

/// Inverse of a unit by Newton iteration from the residue-field inverse.
inline TowerElement inv_unit(const TowerElement& a) {
  if (a.pi_shift() != 0) fail(Errc::NotAUnit, "element has a Π-power factor");
  ResidueElement r = residue(a);
  if (r.is_zero()) fail(Errc::NotAUnit, "element lies in the maximal ideal");
  const auto& tp = a.params();
  TowerElement one = TowerElement::one(tp).with_precision(a.precision());
  TowerElement z = TowerElement::lift(tp, r.inverse()).with_precision(a.precision());
  for (int iter = 0; iter < 64; ++iter) {
    TowerElement e = one - a * z;
    if (e.is_zero()) return z;
    z = z + z * e;
  }
  fail(Errc::ConvergenceStall, "unit inverse did not converge");
}

/// Inverse of any nonzero element, returned as Π^{-v} times a unit.
inline TowerElement invert(const TowerElement& a) {
  Valuation v = pi_val(a);
  if (v.exhausted) fail(Errc::NotAUnit, "zero at working precision");
  TowerElement unit = div_exact_pi(a, v.value);
  return inv_unit(unit).with_pi_shift(-v.value);
}

/// Exact quotient a / b for nonzero b with v(b) <= v(a).
inline TowerElement div(const TowerElement& a, const TowerElement& b) {
  Valuation vb = pi_val(b);
  if (vb.exhausted) fail(Errc::NotDivisible, "division by zero");
  TowerElement num = div_exact_pi(a, vb.value);
  return num * inv_unit(div_exact_pi(b, vb.value));
}

namespace detail {

// Product of two O_L coefficient vectors (length n_pi) reduced by f.
inline std::vector<u64> mul_base(const TowerParams& t, const std::vector<u64>& a, const std::vector<u64>& b, u64 m) {
  std::vector<u128> acc(2 * t.n_pi - 1, 0);
  for (int i = 0; i < t.n_pi; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < t.n_pi; ++j) acc[i + j] += static_cast<u128>(a[i] % m) * (b[j] % m);
  }
  std::vector<u64> r(acc.size());
  for (std::size_t k = 0; k < acc.size(); ++k) r[k] = static_cast<u64>(acc[k] % m);
  for (int i = static_cast<int>(r.size()) - 1; i >= t.n_pi; --i) {
    const u64 c = r[i];
    if (!c) continue;
    r[i] = 0;
    for (int s = 0; s < t.n_pi; ++s) r[i - t.n_pi + s] = submod(r[i - t.n_pi + s], mulmod(c, t.f[s] % m, m), m);
  }
  r.resize(t.n_pi);
  return r;
}

inline TowerElement apply_sigma_once(const TowerElement& a) {
  const auto& t = *a.params();
  const u64 m = a.mod();
  std::vector<u64> out(t.size(), 0);
  std::vector<u64> aj(t.n_pi);
  for (int j = 0; j < t.n_u; ++j) {
    bool nz = false;
    for (int i = 0; i < t.n_pi; ++i) nz |= (aj[i] = a.raw(i, j)) != 0;
    if (!nz) continue;
    for (int l = 0; l < t.n_u; ++l) {
      auto prod = mul_base(t, aj, t.sigma_mat[j][l], m);
      for (int i = 0; i < t.n_pi; ++i) {
        u64& o = out[static_cast<std::size_t>(i) * t.n_u + l];
        o = addmod(o, prod[i], m);
      }
    }
  }
  return TowerElement(a.params(), std::move(out), a.precision(), a.pi_shift());
}

}  // namespace detail

/// σ^k: fixes O_L, sends u to the k-th iterate of the Frobenius lift.
inline TowerElement apply_sigma(const TowerElement& a, GaloisIndex k = GaloisIndex{1, 1 << 30}) {
  TowerElement r = a;
  for (int i = 0; i < k.k % a.params()->n_u; ++i) r = detail::apply_sigma_once(r);
  return r;
}

inline TowerElement apply_sigma(const TowerElement& a, int k) {
  return apply_sigma(a, GaloisIndex(k, a.params()->n_u));
}

/// All conjugates σ^k(a), k < p^m.
inline std::vector<TowerElement> conjugates(const TowerElement& a) {
  std::vector<TowerElement> out{a};
  for (int k = 1; k < a.params()->n_u; ++k) out.push_back(detail::apply_sigma_once(out.back()));
  return out;
}

/// Tr_{M/L}; the result has no u-part.
inline TowerElement trace_ML(const TowerElement& a) {
  auto conj = conjugates(a);
  TowerElement s = conj[0];
  for (std::size_t k = 1; k < conj.size(); ++k) s = s + conj[k];
  if (!s.in_base_field()) fail(Errc::ConstructionFailed, "trace left the base field");
  return s;
}

/// N_{M/L}; the result has no u-part.
inline TowerElement norm_ML(const TowerElement& a) {
  auto conj = conjugates(a);
  TowerElement s = conj[0];
  for (std::size_t k = 1; k < conj.size(); ++k) s = s * conj[k];
  if (!s.in_base_field()) fail(Errc::ConstructionFailed, "norm left the base field");
  return s;
}

/// Tr_{L/Q_p} as the trace of multiplication in the basis 1, Π, ..., Π^{p-2}.
/// Elements with a negative Π-shift are accepted when the trace is p-integral.
inline PAdicScalar trace_LK(const TowerElement& a) {
  if (!a.in_base_field()) fail(Errc::NotInBaseField, "element has a nonzero u-part");
  const auto& tp = a.params();
  const auto& t = *tp;
  TowerElement w = a.with_pi_shift(0);
  int q = 0;
  if (a.pi_shift() < 0) {
    const int k = -a.pi_shift();
    q = (k + t.n_pi - 1) / t.n_pi;
    w = w.times_pi_pow(q * t.n_pi - k) * detail::eps_inv(tp).pow(static_cast<u64>(q));
  }
  const u64 m = w.mod();
  u64 s = 0;
  for (int i = 0; i < t.n_pi; ++i) s = detail::addmod(s, detail::mulmod(w.raw(i, 0), t.trace_pi_pow[i] % m, m), m);
  PAdicScalar tr = PAdicScalar::from_residue(t.p, w.precision(), s);
  return q > 0 ? div_exact_p(tr, q) : tr;
}

/// Teichmüller lift: the unique root of X^q = X over the residue class of r.
inline TowerElement teichmuller(const TowerParamsPtr& tp, const ResidueElement& r) {
  TowerElement z = TowerElement::lift(tp, r);
  for (int iter = 0; iter < 4 * tp->N + 8; ++iter) {
    TowerElement next = z;
    for (int k = 0; k < tp->n_u; ++k) next = next.pow(tp->p);
    if (next == z) return z;
    z = next;
  }
  fail(Errc::ConvergenceStall, "Teichmüller iteration did not stabilise");
}

/// Random element of Π^min_val O_M (or of O_L when base_only).
template <class Rng>
TowerElement random_element(const TowerParamsPtr& tp, Rng& rng, int min_val = 0, bool base_only = false) {
  std::uniform_int_distribution<u64> dist(0, tp->modulus() - 1);
  std::vector<u64> c(tp->size(), 0);
  for (int i = 0; i < tp->n_pi; ++i)
    for (int j = 0; j < (base_only ? 1 : tp->n_u); ++j) c[static_cast<std::size_t>(i) * tp->n_u + j] = dist(rng);
  TowerElement e(tp, std::move(c), tp->N);
  return e.times_pi_pow(min_val);
}

/// Builds the tower for p in {3,5,7}, unramified exponent m >= 1 and precision N >= 4.
inline TowerParamsPtr make_tower(u64 p, int m, int N) {
  if (p != 3 && p != 5 && p != 7) fail(Errc::UnsupportedPrime, "supported primes are 3, 5, 7");
  if (m < 1) fail(Errc::ConstructionFailed, "m must be at least 1");
  if (N < 4) fail(Errc::PrecisionTooLow, "N must be at least 4");
  if (detail::ipow(p, static_cast<unsigned>(N)) > detail::kMaxModulus) fail(Errc::PrecisionTooHigh, "p^N exceeds 2^40");

  auto t = std::make_shared<TowerParams>();
  t->p = p;
  t->m = m;
  t->N = N;
  t->n_pi = static_cast<int>(p) - 1;
  t->n_u = static_cast<int>(detail::ipow(p, static_cast<unsigned>(m)));
  const u64 mod = t->modulus();

  // f(T) = sum_{k=1}^{p} C(p,k) T^{k-1}
  t->f.assign(p, 0);
  u64 binom = 1;
  for (u64 k = 1; k <= p; ++k) {
    binom = binom * (p - k + 1) / k;
    t->f[k - 1] = binom % mod;
  }

  FpPoly gbar = (m == 1) ? selfdual_modulus(p) : random_irreducible(p, t->n_u, 0x5eedULL + p);
  t->residue = ResidueField::create(p, gbar);
  t->g.assign(t->n_u + 1, 0);
  for (int k = 0; k <= t->n_u; ++k) t->g[k] = gbar[k] % mod;  // lift with representatives in [0, p)

  t->eps.assign(t->n_pi, 0);
  for (int i = 0; i < t->n_pi; ++i) t->eps[i] = detail::submod(0, t->f[i] / p, mod);
  t->sigma_mat.clear();

  TowerParamsPtr view = t;
  t->eps_inv = inv_unit(detail::eps(view)).raw();
  t->eps_inv.resize(t->size());
  {
    std::vector<u64> base(t->n_pi);
    for (int i = 0; i < t->n_pi; ++i) base[i] = t->eps_inv[static_cast<std::size_t>(i) * t->n_u];
    t->eps_inv = base;
  }

  // Tr(Π^i) from the regular representation.
  t->trace_pi_pow.assign(t->n_pi, 0);
  for (int i = 0; i < t->n_pi; ++i) {
    TowerElement x = TowerElement::monomial(view, i, 0);
    u64 s = 0;
    for (int b = 0; b < t->n_pi; ++b) {
      TowerElement col = x * TowerElement::monomial(view, b, 0);
      s = detail::addmod(s, col.raw(b, 0), mod);
    }
    t->trace_pi_pow[i] = s;
  }

  // σ(u): Newton on g seeded with u^p.
  auto eval = [&](const std::vector<u64>& poly, const TowerElement& x) {
    TowerElement acc = TowerElement::zero(view);
    for (std::size_t k = poly.size(); k-- > 0;) acc = acc * x + TowerElement::from_int(view, static_cast<i64>(poly[k]));
    return acc;
  };
  std::vector<u64> dg(t->n_u, 0);
  for (int k = 1; k <= t->n_u; ++k) dg[k - 1] = detail::mulmod(t->g[k], static_cast<u64>(k) % mod, mod);
  TowerElement s = TowerElement::u(view).pow(p);
  bool converged = false;
  for (int iter = 0; iter < 64; ++iter) {
    TowerElement gs = eval(t->g, s);
    if (gs.is_zero()) {
      converged = true;
      break;
    }
    s = s - gs * inv_unit(eval(dg, s));
  }
  if (!converged) fail(Errc::ConstructionFailed, "Newton iteration for σ(u) did not converge");
  if (!(residue(s) == frobenius(residue(TowerElement::u(view)))))
    fail(Errc::ConstructionFailed, "σ(u) is not congruent to u^p");
  t->sigma_u = s.raw();

  t->sigma_mat.assign(t->n_u, std::vector<std::vector<u64>>(t->n_u, std::vector<u64>(t->n_pi, 0)));
  TowerElement power = TowerElement::one(view);
  for (int j = 0; j < t->n_u; ++j) {
    for (int l = 0; l < t->n_u; ++l)
      for (int i = 0; i < t->n_pi; ++i) t->sigma_mat[j][l][i] = power.raw(i, l);
    power = power * s;
  }
  return view;
}

}  // namespace reclab

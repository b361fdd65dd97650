#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "reclab/padic.hpp"

// Truncated power series with exact rational coefficients and the Lubin-Tate
// law attached to f(X) = pX + X^q over Z_p.

namespace reclab {

/// Univariate series mod X^D.
using QSeries = std::vector<mpq_class>;

/// Bivariate series mod total degree D; entry (i, j) is the X^i Y^j coefficient.
struct QSeries2 {
  int D = 0;
  std::vector<mpq_class> c;

  explicit QSeries2(int d = 0) : D(d), c(static_cast<std::size_t>(d) * d) {}
  mpq_class& at(int i, int j) { return c[static_cast<std::size_t>(i) * D + j]; }
  const mpq_class& at(int i, int j) const { return c[static_cast<std::size_t>(i) * D + j]; }
  friend bool operator==(const QSeries2&, const QSeries2&) = default;
};

namespace series {

inline QSeries zero(int D) { return QSeries(static_cast<std::size_t>(D)); }

inline QSeries monomial(int D, int k, const mpq_class& a = 1) {
  QSeries r = zero(D);
  if (k < D) r[k] = a;
  return r;
}

inline QSeries add(const QSeries& a, const QSeries& b) {
  QSeries r = a;
  for (std::size_t k = 0; k < r.size(); ++k) r[k] += b[k];
  return r;
}

inline QSeries scale(const QSeries& a, const mpq_class& s) {
  QSeries r = a;
  for (auto& x : r) x *= s;
  return r;
}

inline QSeries mul(const QSeries& a, const QSeries& b) {
  const int D = static_cast<int>(a.size());
  QSeries r = zero(D);
  for (int i = 0; i < D; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = 0; i + j < D; ++j)
      if (sgn(b[j]) != 0) r[i + j] += a[i] * b[j];
  }
  return r;
}

/// outer(inner) with inner(0) = 0, by Horner's rule.
inline QSeries compose(const QSeries& outer, const QSeries& inner) {
  const int D = static_cast<int>(outer.size());
  if (sgn(inner[0]) != 0) fail(Errc::ConstructionFailed, "inner series has a constant term");
  QSeries r = zero(D);
  for (int k = D - 1; k >= 0; --k) {
    r = mul(r, inner);
    r[0] += outer[k];
  }
  return r;
}

/// Compositional inverse of a with a(0) = 0, a'(0) = 1.
inline QSeries reversion(const QSeries& a) {
  const int D = static_cast<int>(a.size());
  if (sgn(a[0]) != 0 || a[1] != 1) fail(Errc::ConstructionFailed, "reversion needs a = X + O(X^2)");
  QSeries e = monomial(D, 1);
  // a(e) = X + r_k X^k + ...; subtracting r_k from e_k clears degree k.
  for (int k = 2; k < D; ++k) {
    QSeries comp = compose(a, e);
    e[k] -= comp[k];
  }
  return e;
}

inline QSeries2 lift_x(const QSeries& a) {
  QSeries2 r(static_cast<int>(a.size()));
  for (int i = 0; i < r.D; ++i) r.at(i, 0) = a[i];
  return r;
}

inline QSeries2 lift_y(const QSeries& a) {
  QSeries2 r(static_cast<int>(a.size()));
  for (int j = 0; j < r.D; ++j) r.at(0, j) = a[j];
  return r;
}

inline QSeries2 add(const QSeries2& a, const QSeries2& b) {
  QSeries2 r = a;
  for (std::size_t k = 0; k < r.c.size(); ++k) r.c[k] += b.c[k];
  return r;
}

inline QSeries2 mul(const QSeries2& a, const QSeries2& b) {
  const int D = a.D;
  QSeries2 r(D);
  for (int i1 = 0; i1 < D; ++i1)
    for (int j1 = 0; i1 + j1 < D; ++j1) {
      const mpq_class& x = a.at(i1, j1);
      if (sgn(x) == 0) continue;
      for (int i2 = 0; i1 + j1 + i2 < D; ++i2)
        for (int j2 = 0; i1 + j1 + i2 + j2 < D; ++j2) {
          const mpq_class& y = b.at(i2, j2);
          if (sgn(y) != 0) r.at(i1 + i2, j1 + j2) += x * y;
        }
    }
  return r;
}

inline QSeries2 compose(const QSeries& outer, const QSeries2& inner) {
  if (sgn(inner.at(0, 0)) != 0) fail(Errc::ConstructionFailed, "inner series has a constant term");
  QSeries2 r(inner.D);
  for (int k = inner.D - 1; k >= 0; --k) {
    r = mul(r, inner);
    r.at(0, 0) += outer[k];
  }
  return r;
}

/// Lowest degree at which a and b differ, or D when they agree.
inline int first_difference(const QSeries& a, const QSeries& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != b[k]) return static_cast<int>(k);
  return static_cast<int>(a.size());
}

inline int first_difference(const QSeries2& a, const QSeries2& b) {
  for (int d = 0; d < a.D; ++d)
    for (int i = 0; i <= d; ++i)
      if (a.at(i, d - i) != b.at(i, d - i)) return d;
  return a.D;
}

inline QSeries truncate(const QSeries& a, int D) { return QSeries(a.begin(), a.begin() + D); }

inline QSeries2 truncate(const QSeries2& a, int D) {
  QSeries2 r(D);
  for (int i = 0; i < D; ++i)
    for (int j = 0; i + j < D; ++j) r.at(i, j) = a.at(i, j);
  return r;
}

/// True when the denominator is prime to p.
inline bool p_integral(const mpq_class& a, u64 p) { return mpz_divisible_ui_p(a.get_den_mpz_t(), p) == 0; }

/// a mod p^N for a p-integral rational.
inline PAdicScalar to_padic(const mpq_class& a, u64 p, int N) {
  if (!p_integral(a, p)) fail(Errc::NotDivisible, "coefficient is not p-integral");
  const u64 m = detail::ipow(p, static_cast<unsigned>(N));
  mpz_class mm(static_cast<unsigned long>(m));
  mpz_class num = a.get_num() % mm, den = a.get_den() % mm;
  if (num < 0) num += mm;
  const u64 nu = num.get_ui(), de = den.get_ui();
  return PAdicScalar::from_residue(p, N, detail::mulmod(nu, detail::inv_mod_pn(de, p, m), m));
}

}  // namespace series

struct LubinTateLaw {
  u64 p = 0;
  u64 q = 0;
  int D = 0;
  QSeries isogeny;  // [π](X)
  QSeries log;
  QSeries exp;
  QSeries2 F;
  std::map<i64, QSeries> endo;  // [a](X) for 0 <= a <= p

  /// [a](X) = exp(a·λ(X)), from the cache when present.
  QSeries endomorphism(i64 a) const {
    auto it = endo.find(a);
    if (it != endo.end()) return it->second;
    return series::compose(exp, series::scale(log, mpq_class(static_cast<long>(a))));
  }
};

namespace detail {

inline void fill_endomorphisms(LubinTateLaw& law) {
  for (i64 a = 0; a <= static_cast<i64>(law.p); ++a)
    law.endo[a] = series::compose(law.exp, series::scale(law.log, mpq_class(static_cast<long>(a))));
}

inline void require_integral(const LubinTateLaw& law) {
  for (const auto& x : law.F.c)
    if (!series::p_integral(x, law.p)) fail(Errc::ConstructionFailed, "F has a non-integral coefficient");
  for (const auto& [a, s] : law.endo)
    for (const auto& x : s)
      if (!series::p_integral(x, law.p)) fail(Errc::ConstructionFailed, "[a] has a non-integral coefficient");
}

}  // namespace detail

/// The Lubin-Tate law of f(X) = pX + X^q mod degree D, with λ(f(X)) = p·λ(X).
inline LubinTateLaw lt_make(u64 p, u64 q, int D) {
  if (p == 2 || !detail::is_prime(p)) fail(Errc::InvalidPrime, "prime must be an odd prime");
  u64 e = q;
  while (e % p == 0) e /= p;
  if (e != 1 || q < p) fail(Errc::ConstructionFailed, "q must be a positive power of p");
  if (static_cast<u64>(D) < 2 * q) fail(Errc::TruncationTooSmall, "D must be at least 2q");

  LubinTateLaw law;
  law.p = p;
  law.q = q;
  law.D = D;
  const mpq_class pi(static_cast<unsigned long>(p));
  law.isogeny = series::add(series::monomial(D, 1, pi), series::monomial(D, static_cast<int>(q)));

  // a_k (π^k - π) = -Σ_{j<k} a_j [X^k] f^j
  law.log = series::monomial(D, 1);
  std::vector<QSeries> fpow{series::monomial(D, 0), law.isogeny};
  for (int j = 2; j < D; ++j) fpow.push_back(series::mul(fpow.back(), law.isogeny));
  mpq_class pik = pi;
  for (int k = 2; k < D; ++k) {
    pik *= pi;
    mpq_class s = 0;
    for (int j = 1; j < k; ++j)
      if (sgn(law.log[j]) != 0) s += law.log[j] * fpow[j][k];
    law.log[k] = -s / (pik - pi);
  }
  law.exp = series::reversion(law.log);
  law.F = series::compose(law.exp, series::add(series::lift_x(law.log), series::lift_y(law.log)));
  detail::fill_endomorphisms(law);
  detail::require_integral(law);
  return law;
}

/// F(X,Y) = X + Y + XY with λ = log(1+X) and [p](X) = (1+X)^p - 1.
inline LubinTateLaw multiplicative_law(u64 p, int D) {
  if (p == 2 || !detail::is_prime(p)) fail(Errc::InvalidPrime, "prime must be an odd prime");
  if (static_cast<u64>(D) < 2 * p) fail(Errc::TruncationTooSmall, "D must be at least 2p");
  LubinTateLaw law;
  law.p = p;
  law.q = p;
  law.D = D;
  law.log = series::zero(D);
  law.exp = series::zero(D);
  mpq_class fact = 1;
  for (int k = 1; k < D; ++k) {
    law.log[k] = mpq_class(k % 2 ? 1 : -1, k);
    fact *= k;
    law.exp[k] = 1 / fact;
  }
  law.F = QSeries2(D);
  law.F.at(1, 0) = 1;
  law.F.at(0, 1) = 1;
  law.F.at(1, 1) = 1;
  law.isogeny = series::zero(D);
  mpz_class binom = 1;
  for (u64 k = 1; k <= p && static_cast<int>(k) < D; ++k) {
    binom = binom * static_cast<unsigned long>(p - k + 1) / static_cast<unsigned long>(k);
    law.isogeny[k] = mpq_class(binom);
  }
  detail::fill_endomorphisms(law);
  detail::require_integral(law);
  return law;
}

struct AxiomResult {
  std::string name;
  int first_failure = 0;  // lowest failing degree; equals D when the identity holds
  bool pass = false;
};

struct AxiomReport {
  int D = 0;
  std::vector<AxiomResult> results;

  bool all_pass() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return true;
  }
  int max_failing_degree() const {
    int m = D;
    for (const auto& r : results) m = std::min(m, r.first_failure);
    return m;
  }
};

namespace detail {

/// Digits used for associativity: 20, or fewer when p^20 exceeds the modulus bound.
inline int assoc_digits(u64 p) {
  int k = 0;
  u64 m = 1;
  while (k < 20 && m <= kMaxModulus / p) m *= p, ++k;
  return k;
}

/// Trivariate series over Z/p^k mod total degree D, dense.
struct ModSeries3 {
  int D;
  u64 m;
  std::vector<u64> c;
  ModSeries3(int d, u64 mod) : D(d), m(mod), c(static_cast<std::size_t>(d) * d * d, 0) {}
  u64& at(int i, int j, int k) { return c[(static_cast<std::size_t>(i) * D + j) * D + k]; }
  u64 at(int i, int j, int k) const { return c[(static_cast<std::size_t>(i) * D + j) * D + k]; }

  ModSeries3 operator*(const ModSeries3& b) const {
    ModSeries3 r(D, m);
    for (int i1 = 0; i1 < D; ++i1)
      for (int j1 = 0; i1 + j1 < D; ++j1)
        for (int k1 = 0; i1 + j1 + k1 < D; ++k1) {
          const u64 x = at(i1, j1, k1);
          if (!x) continue;
          const int rest = D - i1 - j1 - k1;
          for (int i2 = 0; i2 < rest; ++i2)
            for (int j2 = 0; i2 + j2 < rest; ++j2)
              for (int k2 = 0; i2 + j2 + k2 < rest; ++k2) {
                const u64 y = b.at(i2, j2, k2);
                if (!y) continue;
                u64& t = r.at(i1 + i2, j1 + j2, k1 + k2);
                t = static_cast<u64>((static_cast<u128>(x) * y + t) % m);
              }
        }
    return r;
  }
};

/// Σ F_ab A^a B^b over Z/p^k, Horner in B.
inline ModSeries3 compose_law(const std::vector<std::vector<u64>>& f, const ModSeries3& A, const ModSeries3& B) {
  const int D = A.D;
  const u64 m = A.m;
  std::vector<ModSeries3> apow{ModSeries3(D, m)};
  apow[0].at(0, 0, 0) = 1;
  for (int a = 1; a < D; ++a) apow.push_back(apow.back() * A);
  ModSeries3 r(D, m);
  for (int b = D - 1; b >= 0; --b) {
    r = r * B;
    for (int a = 0; a + b < D; ++a) {
      if (!f[a][b]) continue;
      for (std::size_t t = 0; t < r.c.size(); ++t)
        if (apow[a].c[t]) r.c[t] = static_cast<u64>((static_cast<u128>(f[a][b]) * apow[a].c[t] + r.c[t]) % m);
    }
  }
  return r;
}

}  // namespace detail

/// Checks the law axioms mod degree D. Associativity is compared mod p^assoc_digits(p) on
/// the (p-integral) coefficients; every other identity is exact.
inline AxiomReport lt_check_axioms(const LubinTateLaw& law) {
  const int D = law.D;
  const u64 p = law.p;
  AxiomReport rep;
  rep.D = D;
  auto add = [&](std::string name, int first) { rep.results.push_back({std::move(name), first, first >= D}); };

  {
    int first = D;
    for (int i = 0; i < D && first == D; ++i)
      if (law.F.at(i, 0) != (i == 1 ? 1 : 0)) first = i;
    add("identity", first);
  }

  QSeries2 swapped(D);
  for (int i = 0; i < D; ++i)
    for (int j = 0; i + j < D; ++j) swapped.at(j, i) = law.F.at(i, j);
  add("commutativity", series::first_difference(law.F, swapped));

  {
    const int digits = detail::assoc_digits(p);
    const u64 m = detail::ipow(p, static_cast<unsigned>(digits));
    std::vector<std::vector<u64>> f(D, std::vector<u64>(D, 0));
    for (int i = 0; i < D; ++i)
      for (int j = 0; i + j < D; ++j) f[i][j] = series::to_padic(law.F.at(i, j), p, digits).value();
    detail::ModSeries3 X(D, m), Y(D, m), Z(D, m), U(D, m), V(D, m);
    X.at(1, 0, 0) = 1;
    Y.at(0, 1, 0) = 1;
    Z.at(0, 0, 1) = 1;
    for (int i = 0; i < D; ++i)
      for (int j = 0; i + j < D; ++j) {
        U.at(i, j, 0) = f[i][j];
        V.at(0, i, j) = f[i][j];
      }
    const auto lhs = detail::compose_law(f, U, Z);
    const auto rhs = detail::compose_law(f, X, V);
    int first = D;
    for (int i = 0; i < D; ++i)
      for (int j = 0; i + j < D; ++j)
        for (int k = 0; i + j + k < D; ++k)
          if (lhs.at(i, j, k) != rhs.at(i, j, k)) first = std::min(first, i + j + k);
    add("associativity", first);
  }

  add("log_additivity", series::first_difference(series::compose(law.log, law.F),
                                                 series::add(series::lift_x(law.log), series::lift_y(law.log))));

  const QSeries pp = law.endomorphism(static_cast<i64>(p));
  add("isogeny_is_[p]", series::first_difference(pp, law.isogeny));
  add("log_of_[p]", series::first_difference(series::compose(law.log, pp),
                                             series::scale(law.log, mpq_class(static_cast<unsigned long>(p)))));
  add("exp_log_inverse", series::first_difference(series::compose(law.exp, law.log), series::monomial(D, 1)));

  {
    int first = D;
    for (i64 a = 1; a <= static_cast<i64>(p); ++a)
      for (i64 b = 1; b <= static_cast<i64>(p); ++b)
        first = std::min(first, series::first_difference(series::compose(law.endomorphism(a), law.endomorphism(b)),
                                                         law.endomorphism(a * b)));
    add("endomorphism_product", first);
  }

  add("[1]_identity", series::first_difference(law.endomorphism(1), series::monomial(D, 1)));

  {
    // [p](X) - X^q has every coefficient in pZ_(p).
    QSeries d = series::add(pp, series::monomial(D, static_cast<int>(law.q), -1));
    int first = D;
    for (int k = 0; k < D && first == D; ++k) {
      const mpq_class& x = d[k];
      if (sgn(x) != 0 && (!series::p_integral(x, p) || mpz_divisible_ui_p(x.get_num_mpz_t(), p) == 0)) first = k;
    }
    add("[p]_congruence", first);
  }
  return rep;
}

/// Truncating the 2D law to degree D reproduces the D law.
inline bool lt_stable(const LubinTateLaw& law, const LubinTateLaw& doubled) {
  const int D = law.D;
  if (doubled.D < D) return false;
  if (series::truncate(doubled.log, D) != law.log) return false;
  if (series::truncate(doubled.exp, D) != law.exp) return false;
  if (!(series::truncate(doubled.F, D) == law.F)) return false;
  for (const auto& [a, s] : law.endo)
    if (series::truncate(doubled.endomorphism(a), D) != s) return false;
  return true;
}

}  // namespace reclab

#pragma once

#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "reclab/linalg.hpp"
#include "reclab/padic.hpp"

namespace reclab {

/// Polynomial over F_p, coefficients low degree first.
using FpPoly = std::vector<u64>;

namespace fp {

inline void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const FpPoly& a) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != 0) return static_cast<int>(i);
  return -1;
}

/// a mod b, b nonzero.
inline FpPoly rem(FpPoly a, const FpPoly& b, u64 p) {
  const int db = degree(b);
  const u64 lead_inv = detail::powmod(b[db], p - 2, p);
  for (int da = degree(a); da >= db; da = degree(a)) {
    const u64 c = detail::mulmod(a[da], lead_inv, p);
    const int shift = da - db;
    for (int i = 0; i <= db; ++i) a[shift + i] = detail::submod(a[shift + i], detail::mulmod(c, b[i], p), p);
  }
  trim(a);
  return a;
}

inline FpPoly mul(const FpPoly& a, const FpPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

inline FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f, u64 p) { return rem(mul(a, b, p), f, p); }

inline FpPoly powmod(FpPoly a, u64 e, const FpPoly& f, u64 p) {
  FpPoly r{1};
  a = rem(std::move(a), f, p);
  while (e) {
    if (e & 1) r = mulmod(r, a, f, p);
    a = mulmod(a, a, f, p);
    e >>= 1;
  }
  return r;
}

inline FpPoly gcd(FpPoly a, FpPoly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace fp

/// Distinct-degree criterion: f (monic, degree d >= 1) is irreducible iff
/// gcd(x^{p^k} - x, f) = 1 for every 1 <= k <= d/2.
inline bool is_irreducible(const FpPoly& poly, u64 p) {
  FpPoly f = poly;
  for (auto& c : f) c %= p;
  fp::trim(f);
  const int d = fp::degree(f);
  if (d < 1) return false;
  if (d == 1) return true;
  FpPoly xpk{0, 1};
  for (int k = 1; 2 * k <= d; ++k) {
    xpk = fp::powmod(xpk, p, f, p);
    FpPoly diff = xpk;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = detail::submod(diff[1], 1, p);
    fp::trim(diff);
    if (diff.empty()) return false;
    if (fp::degree(fp::gcd(f, diff, p)) > 0) return false;
  }
  return true;
}

/// F_{p^d} = F_p[x]/(modulus).
class ResidueField {
 public:
  static std::shared_ptr<const ResidueField> create(u64 p, FpPoly modulus) {
    for (auto& c : modulus) c %= p;
    fp::trim(modulus);
    if (modulus.empty() || modulus.back() != 1) fail(Errc::ConstructionFailed, "modulus must be monic");
    if (!is_irreducible(modulus, p)) fail(Errc::ConstructionFailed, "modulus is reducible over F_p");
    return std::shared_ptr<const ResidueField>(new ResidueField(p, std::move(modulus)));
  }

  u64 prime() const { return p_; }
  int degree() const { return d_; }
  const FpPoly& modulus() const { return modulus_; }
  /// Number of elements p^d (fits in 64 bits for supported fields).
  u64 size() const { return detail::ipow(p_, static_cast<unsigned>(d_)); }

 private:
  ResidueField(u64 p, FpPoly modulus) : p_(p), d_(fp::degree(modulus)), modulus_(std::move(modulus)) {}
  u64 p_;
  int d_;
  FpPoly modulus_;
};

using ResidueFieldPtr = std::shared_ptr<const ResidueField>;

class ResidueElement {
 public:
  explicit ResidueElement(ResidueFieldPtr field) : field_(std::move(field)), c_(field_->degree(), 0) {}
  ResidueElement(ResidueFieldPtr field, FpPoly coeffs) : field_(std::move(field)) {
    const u64 p = field_->prime();
    for (auto& c : coeffs) c %= p;
    c_ = fp::rem(std::move(coeffs), field_->modulus(), p);
    c_.resize(field_->degree(), 0);
  }

  static ResidueElement constant(ResidueFieldPtr field, u64 v) { return ResidueElement(field, FpPoly{v}); }
  static ResidueElement generator(ResidueFieldPtr field) { return ResidueElement(field, FpPoly{0, 1}); }

  const ResidueFieldPtr& field() const { return field_; }
  const FpPoly& coeffs() const { return c_; }
  u64 prime() const { return field_->prime(); }
  bool is_zero() const {
    for (auto c : c_)
      if (c) return false;
    return true;
  }
  /// Index in [0, p^d) from base-p digits; used for exhaustive enumeration.
  u64 index() const {
    u64 r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * prime() + c_[i];
    return r;
  }
  static ResidueElement from_index(ResidueFieldPtr field, u64 idx) {
    FpPoly c(field->degree(), 0);
    for (auto& x : c) {
      x = idx % field->prime();
      idx /= field->prime();
    }
    return ResidueElement(field, std::move(c));
  }

  friend ResidueElement operator+(const ResidueElement& a, const ResidueElement& b) {
    check_same(a, b);
    ResidueElement r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = (r.c_[i] + b.c_[i]) % a.prime();
    return r;
  }
  friend ResidueElement operator-(const ResidueElement& a, const ResidueElement& b) {
    check_same(a, b);
    ResidueElement r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = detail::submod(r.c_[i], b.c_[i], a.prime());
    return r;
  }
  ResidueElement operator-() const { return ResidueElement(field_) - *this; }
  friend ResidueElement operator*(const ResidueElement& a, const ResidueElement& b) {
    check_same(a, b);
    return ResidueElement(a.field_, fp::mul(a.c_, b.c_, a.prime()));
  }
  friend ResidueElement operator*(u64 s, const ResidueElement& a) {
    ResidueElement r = a;
    for (auto& c : r.c_) c = c * (s % a.prime()) % a.prime();
    return r;
  }
  friend bool operator==(const ResidueElement& a, const ResidueElement& b) {
    return a.field_ == b.field_ && a.c_ == b.c_;
  }

  ResidueElement pow(u64 e) const {
    return ResidueElement(field_, fp::powmod(c_, e, field_->modulus(), prime()));
  }

  ResidueElement inverse() const {
    if (is_zero()) fail(Errc::NotAUnit, "zero has no inverse in a field");
    return pow(field_->size() - 2);
  }

 private:
  static void check_same(const ResidueElement& a, const ResidueElement& b) {
    if (a.field_ != b.field_) fail(Errc::ParamsMismatch, "residue elements from different fields");
  }

  ResidueFieldPtr field_;
  FpPoly c_;
};

inline ResidueElement frobenius(const ResidueElement& a) { return a.pow(a.prime()); }

/// Sum of the Galois conjugates a^{p^k}, k < d; lands in F_p.
inline u64 trace_to_prime(const ResidueElement& a) {
  ResidueElement s(a.field());
  ResidueElement x = a;
  for (int k = 0; k < a.field()->degree(); ++k) {
    s = s + x;
    x = frobenius(x);
  }
  for (std::size_t i = 1; i < s.coeffs().size(); ++i)
    if (s.coeffs()[i] != 0) fail(Errc::ConstructionFailed, "trace did not land in the prime field");
  return s.coeffs().empty() ? 0 : s.coeffs()[0];
}

/// Product of the Galois conjugates; lands in F_p.
inline u64 norm_to_prime(const ResidueElement& a) {
  ResidueElement s = ResidueElement::constant(a.field(), 1);
  ResidueElement x = a;
  for (int k = 0; k < a.field()->degree(); ++k) {
    s = s * x;
    x = frobenius(x);
  }
  return s.coeffs().empty() ? 0 : s.coeffs()[0];
}

/// The degree-p modulus x^p - x^{p-1} + 1 whose root generates a self-dual
/// normal basis of F_{p^p} with trace 1.
inline FpPoly selfdual_modulus(u64 p) {
  FpPoly f(p + 1, 0);
  f[0] = 1;
  f[p - 1] = p - 1;
  f[p] = 1;
  return f;
}

struct NormalBasis {
  ResidueFieldPtr field;
  ResidueElement tau;
};

/// Tr(τ^{p^k + p^j}) for the conjugates of τ; δ_kj is required.
inline bool is_selfdual_normal(const ResidueElement& tau) {
  const u64 p = tau.prime();
  const int d = tau.field()->degree();
  std::vector<ResidueElement> conj{tau};
  for (int k = 1; k < d; ++k) conj.push_back(frobenius(conj.back()));
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j)
      if (trace_to_prime(conj[k] * conj[j]) != (k == j ? 1u : 0u) % p) return false;
  return true;
}

inline NormalBasis selfdual_normal_basis(u64 p) {
  if (p == 2 || !detail::is_prime(p)) fail(Errc::InvalidPrime, "odd prime required");
  auto field = ResidueField::create(p, selfdual_modulus(p));
  ResidueElement tau = ResidueElement::generator(field);
  if (!is_selfdual_normal(tau)) fail(Errc::ConstructionFailed, "basis is not self-dual");
  return {field, tau};
}

/// Deterministic search for a monic irreducible polynomial of degree d.
inline FpPoly random_irreducible(u64 p, int d, u64 seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> dist(0, p - 1);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    FpPoly f(d + 1, 0);
    for (int i = 0; i < d; ++i) f[i] = dist(rng);
    f[d] = 1;
    if (f[0] != 0 && is_irreducible(f, p)) return f;
  }
  fail(Errc::ConstructionFailed, "no irreducible polynomial found");
}

namespace detail {

/// Matrix (over F_p) of c -> c^p + alpha c in the polynomial basis, column k = image of x^k.
inline ZpMatrix frobenius_affine_matrix(const ResidueElement& alpha) {
  const auto& field = alpha.field();
  const int d = field->degree();
  ZpMatrix a(d, d);
  for (int k = 0; k < d; ++k) {
    FpPoly e(d, 0);
    e[k] = 1;
    ResidueElement basis(field, e);
    ResidueElement img = frobenius(basis) + alpha * basis;
    for (int r = 0; r < d; ++r) a(r, k) = img.coeffs()[r];
  }
  return a;
}

}  // namespace detail

/// Solves c^p + α c = β; the map is F_p-linear so this is a d x d solve over F_p.
inline ResidueElement solve_frobenius_affine(const ResidueElement& alpha, const ResidueElement& beta) {
  if (alpha.field() != beta.field()) fail(Errc::ParamsMismatch, "α and β in different fields");
  const auto& field = alpha.field();
  auto sol = solve_mod_pn(detail::frobenius_affine_matrix(alpha), beta.coeffs(), field->prime(), 1);
  ResidueElement c(field, sol.x);
  if (!(frobenius(c) + alpha * c == beta)) fail(Errc::NoSolution, "substitution check failed");
  return c;
}

/// Dimension over F_p of the kernel of c -> c^p + α c (solution sets have p^dim elements).
inline int frobenius_affine_kernel_dim(const ResidueElement& alpha) {
  ZpMatrix a = detail::frobenius_affine_matrix(alpha);
  auto sol = solve_mod_pn(a, std::vector<u64>(a.rows, 0), alpha.prime(), 1);
  return alpha.field()->degree() - static_cast<int>(sol.rank);
}

}  // namespace reclab

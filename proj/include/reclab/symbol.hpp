#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "reclab/generators.hpp"

namespace reclab {

enum class Method { Direct, ArtinHasse, TraceEquation, Borevich };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::Direct: return "direct";
    case Method::ArtinHasse: return "artin_hasse";
    case Method::TraceEquation: return "trace_equation";
    case Method::Borevich: return "borevich";
  }
  return "?";
}

struct SymbolResult {
  int gamma = 0;
  Method method = Method::Direct;
  int precision_used = 0;
  bool stable = false;
};

namespace detail {

/// Residue of a / Π^t where t = pi_val(a) is finite.
inline ResidueElement leading_residue(const TowerElement& a, int t) {
  const auto& tp = *a.params();
  const u64 p = tp.p;
  const int n = tp.n_pi;
  const int rel = t - a.pi_shift();
  const u64 eps_bar_inv = powmod(tp.eps[0] % p, p - 2, p);
  FpPoly c(tp.n_u, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < tp.n_u; ++j) {
      const u64 x = a.raw(i, j);
      if (!x) continue;
      const int v = val(x, p);
      if (n * v + i != rel) continue;
      // c·Π^i = (c/p^v)·ε^{-v}·Π^{i + v(p-1)}
      const u64 digit = (x / ipow(p, static_cast<unsigned>(v))) % p;
      c[j] = (c[j] + digit * powmod(eps_bar_inv, static_cast<u64>(v), p)) % p;
    }
  return ResidueElement(tp.residue, std::move(c));
}

}  // namespace detail

/// y in F(m_M) with (1+y)^p = 1+x, by Π-adic digit lifting.
inline TowerElement divide_isogeny(const TowerParamsPtr& tp, const TowerElement& x) {
  if (!x.in_base_field()) fail(Errc::NotInBaseField, "x has a nonzero u-part");
  detail::require_max_ideal(x, "divide_isogeny");
  const u64 p = tp->p;
  const int n = tp->n_pi;
  const int prec = x.precision();
  const auto one = TowerElement::one(tp).with_precision(prec);
  const TowerElement X = one + x;
  const ResidueElement alpha = residue(detail::eps_inv(tp));
  TowerElement Y = one;
  for (int iter = 0; iter < n * prec + 4; ++iter) {
    TowerElement D = X * inv_unit(Y.pow(p)) - one;
    Valuation t = pi_val(D);
    if (t.exhausted) return (Y - one).with_precision(std::max(0, prec - 1));
    if (t.value < static_cast<int>(p))
      fail(Errc::NoRootInM, "defect of valuation " + std::to_string(t.value) + " below p: no unramified root");
    const ResidueElement beta = detail::leading_residue(D, t.value);
    if (t.value == static_cast<int>(p)) {
      ResidueElement c = ResidueElement::constant(tp->residue, 0);
      try {
        c = solve_frobenius_affine(alpha, beta);
      } catch (const Error& e) {
        if (e.code() != Errc::NoSolution) throw;
        fail(Errc::NoRootInM, "Artin-Schreier digit equation has no solution in the residue field");
      }
      Y = Y * (one + TowerElement::lift(tp, c).times_pi());
    } else {
      const ResidueElement c = beta * alpha.inverse();
      Y = Y * (one + TowerElement::lift(tp, c).times_pi_pow(t.value - n));
    }
  }
  fail(Errc::ConvergenceStall, "isogeny division did not converge");
}

/// γ with σ^k(y) -_F y = [γ]ζ, where [p]y = x.
inline int gamma_direct_k(const TowerParamsPtr& tp, const TowerElement& x, int k) {
  const TowerElement y = divide_isogeny(tp, x);
  const auto one = TowerElement::one(tp);
  const TowerElement w = (one + apply_sigma(y, k)) * inv_unit(one + y) - one;
  auto j = torsion_exponent(w);
  if (!j) fail(Errc::NotTorsion, "sigma(y) -_F y is not a p-torsion point at precision");
  return *j;
}

inline int gamma_direct(const TowerParamsPtr& tp, const TowerElement& x) { return gamma_direct_k(tp, x, 1); }

/// Tr_{L/Q_p}(Π^{-1}·η·λ(x)).
inline PAdicScalar artin_hasse_trace(const TowerParamsPtr& tp, const TowerElement& x) {
  if (!x.in_base_field()) fail(Errc::NotInBaseField, "x has a nonzero u-part");
  return trace_LK((TowerElement::eta(tp) * f_log(x)).shift_pi(-1));
}

/// γ = (1/p)·Tr_{L/Q_p}(Π^{-1}·η·λ(x)) mod p.
inline int gamma_artin_hasse(const TowerParamsPtr& tp, const TowerElement& x) {
  PAdicScalar t = artin_hasse_trace(tp, x);
  PAdicScalar q = div_exact_p(t, 1);
  if (q.precision() < 1) fail(Errc::PrecisionTooLow, "no digits left for gamma");
  return static_cast<int>(q.with_precision(1).value());
}

/// γ = Tr(Π^{-1}ηλx) / Tr(Π^{-1}ηλΩ) mod p.
inline int gamma_trace_equation(const GeneratorSystem& g, const TowerElement& x) {
  const auto& tp = g.params;
  PAdicScalar den = trace_LK((TowerElement::eta(tp) * g.lambda_big_omega).shift_pi(-1));
  Valuation vd = val_p(den);
  if (vd.exhausted || vd.value != 1) fail(Errc::DenominatorDegenerate, "denominator valuation " + vd.to_string());
  PAdicScalar num = div_exact_p(artin_hasse_trace(tp, x), 1);
  PAdicScalar d = div_exact_p(den, 1);
  PAdicScalar r = num * inv_unit(d);
  if (r.precision() < 1) fail(Errc::PrecisionTooLow, "no digits left for gamma");
  return static_cast<int>(r.with_precision(1).value());
}

/// γ from the Σc_j of a decomposition of y with [p]y = x.
inline int gamma_borevich(const GeneratorSystem& g, const TowerElement& x,
                          const std::vector<std::size_t>& column_order = {}) {
  const TowerElement y = divide_isogeny(g.params, x);
  return gamma_from_decomposition(decompose(g, y, column_order), g.params);
}

/// γ(t, x) through σ^k with k = v(t).
inline int gamma_general(const TowerParamsPtr& tp, const TowerElement& t, const TowerElement& x) {
  Valuation k = pi_val(t);
  if (k.exhausted) fail(Errc::NotAUnit, "t is zero at working precision");
  return gamma_direct_k(tp, x, k.value);
}

/// Parameters and generators at N and N + 2 for stability checks.
struct SymbolContext {
  TowerParamsPtr lo;
  TowerParamsPtr hi;
  GeneratorSystem gens_lo;
  GeneratorSystem gens_hi;

  static SymbolContext make(u64 p, int m, int N) {
    auto lo = make_tower(p, m, N);
    auto hi = make_tower(p, m, N + 2);
    return SymbolContext{lo, hi, make_generators(lo), make_generators(hi)};
  }
};

struct RouteOutcome {
  Method method = Method::Direct;
  std::optional<SymbolResult> result;
  std::optional<Errc> error;
  std::string message;
};

enum class Verdict { Agree, InvalidConsistent, InvalidInconsistent, Disagree };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Agree: return "agree";
    case Verdict::InvalidConsistent: return "invalid input detected consistently";
    case Verdict::InvalidInconsistent: return "invalid input detected by the direct route only";
    case Verdict::Disagree: return "disagree";
  }
  return "?";
}

struct CompareReport {
  int k = 1;  // v(t)
  std::vector<RouteOutcome> routes;
  Verdict verdict = Verdict::Agree;

  const RouteOutcome& route(Method m) const {
    for (const auto& r : routes)
      if (r.method == m) return r;
    fail(Errc::ConstructionFailed, "route missing from report");
  }

  /// 0 on agreement, 2 when the input was rejected, 1 on disagreement.
  int exit_code() const {
    switch (verdict) {
      case Verdict::Agree: return 0;
      case Verdict::InvalidConsistent:
      case Verdict::InvalidInconsistent: return 2;
      case Verdict::Disagree: return 1;
    }
    return 1;
  }
};

namespace detail {

template <class F>
RouteOutcome run_route(Method m, int precision, F&& at_lo, F&& at_hi) {
  RouteOutcome out;
  out.method = m;
  try {
    const int g = at_lo();
    bool stable = false;
    try {
      stable = at_hi() == g;
    } catch (const Error&) {
      stable = false;
    }
    out.result = SymbolResult{g, m, precision, stable};
  } catch (const Error& e) {
    out.error = e.code();
    out.message = e.what();
  }
  return out;
}

}  // namespace detail

/// Runs all four routes for (t, x) at N and N + 2. Routes other than the
/// direct one compute γ(Π, x) and are scaled by k = v(t).
inline CompareReport compare_all(const SymbolContext& ctx, const TowerElement& t, const TowerElement& x) {
  CompareReport rep;
  Valuation vt = pi_val(t);
  if (vt.exhausted) fail(Errc::NotAUnit, "t is zero at working precision");
  rep.k = vt.value;
  const int p = static_cast<int>(ctx.lo->p);
  const int N = ctx.lo->N;
  const TowerElement xl = x.reinterpret(ctx.lo);
  const TowerElement xh = x.reinterpret(ctx.hi);
  const TowerElement tl = t.reinterpret(ctx.lo);
  const TowerElement th = t.reinterpret(ctx.hi);
  auto scale = [&](int g) { return static_cast<int>((static_cast<i64>(g) * rep.k) % p); };

  using Fn = std::function<int()>;
  rep.routes.push_back(detail::run_route(Method::Direct, N, Fn([&] { return gamma_general(ctx.lo, tl, xl); }),
                                         Fn([&] { return gamma_general(ctx.hi, th, xh); })));
  rep.routes.push_back(detail::run_route(Method::ArtinHasse, N,
                                         Fn([&] { return scale(gamma_artin_hasse(ctx.lo, xl)); }),
                                         Fn([&] { return scale(gamma_artin_hasse(ctx.hi, xh)); })));
  rep.routes.push_back(detail::run_route(Method::TraceEquation, N,
                                         Fn([&] { return scale(gamma_trace_equation(ctx.gens_lo, xl)); }),
                                         Fn([&] { return scale(gamma_trace_equation(ctx.gens_hi, xh)); })));
  rep.routes.push_back(detail::run_route(Method::Borevich, N,
                                         Fn([&] { return scale(gamma_borevich(ctx.gens_lo, xl)); }),
                                         Fn([&] { return scale(gamma_borevich(ctx.gens_hi, xh)); })));

  const auto& direct = rep.route(Method::Direct);
  if (direct.error == Errc::NoRootInM) {
    const auto& ah = rep.route(Method::ArtinHasse);
    rep.verdict = ah.error == Errc::NotDivisible ? Verdict::InvalidConsistent : Verdict::InvalidInconsistent;
    return rep;
  }
  rep.verdict = direct.result ? Verdict::Agree : Verdict::Disagree;
  if (!direct.result) return rep;
  for (const auto& r : rep.routes)
    if (!r.result || !r.result->stable || r.result->gamma != direct.result->gamma) rep.verdict = Verdict::Disagree;
  return rep;
}

inline CompareReport compare_all(const SymbolContext& ctx, const TowerElement& x) {
  return compare_all(ctx, TowerElement::pi(ctx.lo), x);
}

}  // namespace reclab

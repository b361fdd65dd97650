#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "reclab/fgl.hpp"
#include "reclab/linalg.hpp"

namespace reclab {

/// Lift of a residue element of trace 1, corrected until Tr_{M/L}(χ) = 1.
inline TowerElement chi(const TowerParamsPtr& tp) {
  const auto& field = tp->residue;
  ResidueElement base = ResidueElement::constant(field, 0);
  ResidueElement uj = ResidueElement::constant(field, 1);
  bool found = false;
  for (int j = 0; j < tp->n_u && !found; ++j, uj = uj * ResidueElement::generator(field)) {
    const u64 t = trace_to_prime(uj);
    if (t == 0) continue;
    base = uj * ResidueElement::constant(field, detail::powmod(t, tp->p - 2, tp->p));
    found = true;
  }
  if (!found) fail(Errc::ConstructionFailed, "no monomial with nonzero trace");

  const auto one = TowerElement::one(tp);
  TowerElement c = TowerElement::lift(tp, base);
  for (int iter = 0; iter < 4 * tp->N + 8; ++iter) {
    TowerElement d = one - trace_ML(c);
    if (d.is_zero()) return c;
    c = c + d * c;
  }
  fail(Errc::ConvergenceStall, "trace correction for chi did not converge");
}

/// z with N_F(z) = target - 1, i.e. N_{M/L}(1 + z) = target, for a 1-unit target in L.
inline TowerElement norm_preimage(const TowerParamsPtr& tp, const TowerElement& chi_elem, const TowerElement& target) {
  const auto one = TowerElement::one(tp);
  Valuation tv = pi_val(target - one);
  if (!tv.exhausted && tv.value < 1) fail(Errc::NotInMaximalIdeal, "norm target is not a 1-unit");
  TowerElement w = one;
  int last = 0;
  for (int iter = 0; iter < 4 * tp->n_pi * tp->N + 8; ++iter) {
    TowerElement e = target * inv_unit(norm_ML(w)) - one;
    Valuation v = pi_val(e);
    if (v.exhausted) return w - one;
    if (v.value <= last) fail(Errc::ConvergenceStall, "norm defect did not improve");
    last = v.value;
    // N(1 + eχ) = 1 + e·Tr(χ) + O(e²) = 1 + e mod e².
    w = w * (one + e * chi_elem);
  }
  fail(Errc::ConvergenceStall, "norm preimage did not converge");
}

/// ξ with N_F(ξ) = Π.
inline TowerElement xi(const TowerParamsPtr& tp, const TowerElement& chi_elem) {
  return norm_preimage(tp, chi_elem, TowerElement::eta(tp));
}

/// θ_i with N_F(θ_i) = Exp(Π^{i+1}), 1 <= i <= p-2.
inline TowerElement theta(const TowerParamsPtr& tp, const TowerElement& chi_elem, int i) {
  if (i < 1 || i > static_cast<int>(tp->p) - 2) fail(Errc::ConstructionFailed, "theta index out of range");
  const auto one = TowerElement::one(tp);
  TowerElement target = one + f_exp(TowerElement::monomial(tp, i + 1, 0));
  return norm_preimage(tp, chi_elem, target);
}

inline constexpr u64 kOmegaSeed = 0x0e6a5eedULL;
inline constexpr int kOmegaRandomBudget = 64;

/// One Hilbert 90 attempt: with v = (1+ξ)^p, b = Σ_k (Π_{i<k} σ^i v)·σ^k(α)
/// satisfies σ(b) = v^{-1}·b, so w = b^{-1} has σ(w)/w = v. Empty when b is not a unit.
inline std::optional<TowerElement> omega_candidate(const TowerParamsPtr& tp, const TowerElement& xi_elem,
                                                   const TowerElement& alpha) {
  const auto one = TowerElement::one(tp);
  const TowerElement v = (one + xi_elem).pow(tp->p);
  if (!(norm_ML(v) == one)) fail(Errc::ConstructionFailed, "N(v) != 1");
  const auto vconj = conjugates(v);
  const auto aconj = conjugates(alpha);
  TowerElement prod = one;
  TowerElement b = TowerElement::zero(tp);
  for (int k = 0; k < tp->n_u; ++k) {
    b = b + prod * aconj[k];
    prod = prod * vconj[k];
  }
  if (residue(b).is_zero()) return std::nullopt;
  TowerElement w = inv_unit(b);
  ResidueElement r = residue(w);
  for (std::size_t j = 1; j < r.coeffs().size(); ++j)
    if (r.coeffs()[j] != 0) fail(Errc::ConstructionFailed, "Hilbert 90 residue outside F_p");
  w = w * inv_unit(teichmuller(tp, r));
  return w - one;
}

/// ω with σ(ω) -_F ω = [p](ξ): monomials Π^i u^j first, then seeded random candidates.
inline TowerElement omega(const TowerParamsPtr& tp, const TowerElement& xi_elem) {
  for (int j = 0; j < tp->n_u; ++j)
    for (int i = 0; i < tp->n_pi; ++i)
      if (auto w = omega_candidate(tp, xi_elem, TowerElement::monomial(tp, i, j))) return *w;
  std::mt19937_64 rng(kOmegaSeed);
  for (int k = 0; k < kOmegaRandomBudget; ++k)
    if (auto w = omega_candidate(tp, xi_elem, random_element(tp, rng))) return *w;
  fail(Errc::NoUnitCandidate, "no Hilbert 90 candidate gave a unit");
}

inline TowerElement big_omega(const TowerElement& omega_elem) { return f_norm_operator(omega_elem); }

/// -p·Tr_{M/L}(Σ_{k=1}^{n-1} σ^k(χ)·Σ_{i<k} σ^i(λξ)).
inline TowerElement coboundary_trace_log(const TowerParamsPtr& tp, const TowerElement& xi_elem,
                                         const TowerElement& chi_elem) {
  const auto lx = conjugates(f_log(xi_elem));
  const auto cc = conjugates(chi_elem);
  TowerElement partial = TowerElement::zero(tp).with_precision(lx[0].precision());
  TowerElement sum = partial;
  for (int k = 1; k < tp->n_u; ++k) {
    partial = partial + lx[k - 1];
    sum = sum + cc[k] * partial;
  }
  return -(PAdicScalar(tp->p, tp->N, static_cast<i64>(tp->p)) * trace_ML(sum));
}

struct GeneratorCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct GeneratorSystem {
  TowerParamsPtr params;
  TowerElement chi;
  TowerElement xi;
  TowerElement omega;
  std::vector<TowerElement> thetas;    // θ_1..θ_{p-2}
  TowerElement zeta;                   // Π
  TowerElement big_omega;              // N_F ω
  std::vector<TowerElement> epsilons;  // λ(N_F θ_i) = Π^{i+1}

  // σ^j(λθ_i), σ^j(λω), σ^j(λξ): the columns of the decomposition system.
  std::vector<std::vector<TowerElement>> lambda_theta_conj;
  std::vector<TowerElement> lambda_omega_conj;
  std::vector<TowerElement> lambda_xi_conj;
  TowerElement lambda_big_omega;

  std::vector<GeneratorCheck> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

inline bool pi_val_at_least(const TowerElement& a, int k) {
  Valuation v = pi_val(a);
  return v.exhausted || v.value >= k;
}

}  // namespace detail

inline std::vector<GeneratorCheck> check_generators(const GeneratorSystem& g) {
  const auto& tp = g.params;
  const u64 p = tp->p;
  const auto one = TowerElement::one(tp);
  std::vector<GeneratorCheck> out;
  auto add = [&](std::string name, bool pass, std::string detail = {}) {
    out.push_back({std::move(name), pass, std::move(detail)});
  };

  add("norm_xi", f_norm_operator(g.xi) == g.zeta);

  TowerElement rel = f_sub(f_sub(apply_sigma(g.omega, 1), g.omega), f_int_mult(static_cast<i64>(p), g.xi));
  add("relation_residual", rel.is_zero(), "pi_val " + pi_val(rel).to_string());

  add("xi_mod_pi2", detail::pi_val_at_least(g.xi - g.zeta * g.chi, 2));

  for (std::size_t i = 0; i < g.thetas.size(); ++i) {
    TowerElement e = f_norm_operator(g.thetas[i]);
    bool ok = e.in_base_field() && f_log(e) == TowerElement::monomial(tp, static_cast<int>(i) + 2, 0);
    add("lambda_eps_" + std::to_string(i + 1), ok);
  }

  const TowerElement pPi = PAdicScalar(p, tp->N, static_cast<i64>(p)) * g.zeta;
  TowerElement diff = g.lambda_big_omega + pPi;
  add("lambda_Omega_congruence", detail::pi_val_at_least(diff, static_cast<int>(p) + 1),
      "pi_val(lambda Omega + p Pi) " + pi_val(diff).to_string());

  PAdicScalar tr = trace_LK((TowerElement::eta(tp) * g.lambda_big_omega).shift_pi(-1));
  PAdicScalar target(p, tr.precision(), static_cast<i64>(p));
  bool tr_ok = tr.precision() >= 2 && tr.with_precision(2) == target.with_precision(2);
  add("trace_Omega", tr_ok, "Tr = " + std::to_string(tr.centered()));

  add("trace_chi", trace_ML(g.chi) == one);

  TowerElement lxi = g.lambda_xi_conj[0];
  add("lambda_xi_residue", detail::pi_val_at_least(lxi - g.zeta * (g.chi - apply_sigma(g.chi, 1)), 2));

  TowerElement cob = coboundary_trace_log(tp, g.xi, g.chi);
  TowerElement tro = trace_ML(g.lambda_omega_conj[0]);
  add("coboundary_trace_log", detail::pi_val_at_least(cob - tro, static_cast<int>(p) + 1),
      "pi_val " + pi_val(cob - tro).to_string());
  return out;
}

/// Builds and certifies the generator system for the tower.
inline GeneratorSystem make_generators(const TowerParamsPtr& tp) {
  GeneratorSystem g{tp,
                    chi(tp),
                    TowerElement::zero(tp),
                    TowerElement::zero(tp),
                    {},
                    TowerElement::pi(tp),
                    TowerElement::zero(tp),
                    {},
                    {},
                    {},
                    {},
                    TowerElement::zero(tp),
                    {}};
  g.xi = xi(tp, g.chi);
  g.omega = omega(tp, g.xi);
  for (int i = 1; i <= static_cast<int>(tp->p) - 2; ++i) {
    g.thetas.push_back(theta(tp, g.chi, i));
    g.epsilons.push_back(TowerElement::monomial(tp, i + 1, 0));
    g.lambda_theta_conj.push_back(conjugates(f_log(g.thetas.back())));
  }
  g.big_omega = big_omega(g.omega);
  g.lambda_omega_conj = conjugates(f_log(g.omega));
  g.lambda_xi_conj = conjugates(f_log(g.xi));
  g.lambda_big_omega = f_log(g.big_omega);
  g.checks = check_generators(g);
  return g;
}

struct Decomposition {
  std::vector<std::vector<PAdicScalar>> d;  // d[i-1][j]
  std::vector<PAdicScalar> c;
  std::vector<PAdicScalar> b;
  int precision = 0;  // p-digits to which every coefficient is determined
};

/// Solves λy = Σ d_ij σ^j(λθ_i) + Σ c_j σ^j(λω) + Σ b_j σ^j(λξ) over Z/p^P.
inline Decomposition decompose(const GeneratorSystem& g, const TowerElement& y,
                               const std::vector<std::size_t>& column_order = {}) {
  const auto& tp = g.params;
  const u64 p = tp->p;
  const int n = tp->n_u;
  const int nt = static_cast<int>(g.thetas.size());
  detail::require_max_ideal(y, "decompose");
  TowerElement ly = f_log(y);

  std::vector<const TowerElement*> cols;
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < n; ++j) cols.push_back(&g.lambda_theta_conj[i][j]);
  for (int j = 0; j < n; ++j) cols.push_back(&g.lambda_omega_conj[j]);
  for (int j = 0; j < n; ++j) cols.push_back(&g.lambda_xi_conj[j]);

  int prec = ly.precision();
  for (auto* c : cols) prec = std::min(prec, c->precision());
  const u64 m = detail::ipow(p, static_cast<unsigned>(prec));

  ZpMatrix a;
  a.rows = tp->size();
  a.cols = cols.size();
  a.data.assign(a.rows * a.cols, 0);
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < a.rows; ++r) a.data[r * a.cols + c] = cols[c]->raw()[r] % m;
  std::vector<u64> rhs(a.rows);
  for (std::size_t r = 0; r < a.rows; ++r) rhs[r] = ly.raw()[r] % m;

  ZpSolution sol = solve_mod_pn(std::move(a), std::move(rhs), p, prec, column_order);
  Decomposition dec;
  dec.precision = prec - sol.loss;
  if (dec.precision < 1) fail(Errc::PrecisionTooLow, "decomposition lost all precision");
  auto scalar = [&](std::size_t k) { return PAdicScalar::from_residue(p, dec.precision, sol.x[k]); };
  std::size_t k = 0;
  dec.d.assign(nt, {});
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < n; ++j) dec.d[i].push_back(scalar(k++));
  for (int j = 0; j < n; ++j) dec.c.push_back(scalar(k++));
  for (int j = 0; j < n; ++j) dec.b.push_back(scalar(k++));
  return dec;
}

/// (p/p^m)·Σc_j as a p-adic number; fails unless p^{m-1} divides Σc_j.
inline PAdicScalar gamma_exact_from_decomposition(const Decomposition& dec, const TowerParamsPtr& tp) {
  PAdicScalar s(tp->p, dec.precision, 0);
  for (const auto& c : dec.c) s = s + c;
  return div_exact_p(s, tp->m - 1);
}

/// γ = (p/p^m)·Σc_j mod p.
inline int gamma_from_decomposition(const Decomposition& dec, const TowerParamsPtr& tp) {
  PAdicScalar s = gamma_exact_from_decomposition(dec, tp);
  if (s.precision() < 1) fail(Errc::PrecisionTooLow, "no digits left for gamma");
  return static_cast<int>(s.with_precision(1).value());
}

/// λx - Σ_i p·d_i·Π^{i+1} - γ·λΩ for y with [p]y = x and its decomposition.
inline TowerElement verify_main_equation(const TowerElement& x, const Decomposition& dec, const GeneratorSystem& g) {
  const auto& tp = g.params;
  for (const auto& row : dec.d)
    for (const auto& dij : row)
      if (!(dij == row[0])) fail(Errc::SigmaVarianceDetected, "d_ij depends on j");
  const PAdicScalar p_scalar(tp->p, dec.precision, static_cast<i64>(tp->p));
  TowerElement r = f_log(x);
  r = r.with_precision(std::min(r.precision(), dec.precision));
  for (std::size_t i = 0; i < dec.d.size(); ++i) r = r - (p_scalar * dec.d[i][0]) * g.epsilons[i];
  return r - gamma_exact_from_decomposition(dec, tp) * g.lambda_big_omega;
}

}  // namespace reclab

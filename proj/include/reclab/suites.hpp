#pragma once

#include <random>
#include <string>
#include <vector>

#include "reclab/lubin_tate.hpp"
#include "reclab/sampling.hpp"
#include "reclab/symbol.hpp"

// Invariant suites shared by the command-line tool and the acceptance runner.

namespace reclab {

struct CheckRow {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline bool all_pass(const std::vector<CheckRow>& rows) {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

/// Independent generator for trial `index` of a run seeded with `seed`.
inline std::mt19937_64 trial_rng(u64 seed, u64 index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

/// f'(Π) for the minimal polynomial f of Π.
inline TowerElement f_prime_at_pi(const TowerParamsPtr& tp) {
  TowerElement r = TowerElement::zero(tp);
  TowerElement pk = TowerElement::one(tp);
  for (int k = 1; k <= tp->n_pi; ++k) {
    const u64 coef = k == tp->n_pi ? 1 : tp->f[k];
    r = r + PAdicScalar::from_residue(tp->p, tp->N, detail::mulmod(coef, static_cast<u64>(k), tp->modulus())) * pk;
    pk = pk * TowerElement::pi(tp);
  }
  return r;
}

/// Tr(Π^i / f'(Π)) = 0 for i <= p-3 and 1 for i = p-2; Π²f'(Π) = pΠ/η.
inline std::vector<CheckRow> lemma_suite(u64 p, int N) {
  auto tp = make_tower(p, 1, N);
  std::vector<CheckRow> rows;
  const TowerElement fp = f_prime_at_pi(tp);
  const TowerElement fp_inv = invert(fp);
  const int n = tp->n_pi;
  for (int i = 0; i < n; ++i) {
    PAdicScalar tr = trace_LK(TowerElement::monomial(tp, 0, 0).times_pi_pow(i) * fp_inv);
    const i64 want = i == n - 1 ? 1 : 0;
    rows.push_back({"trace Pi^" + std::to_string(i) + "/f'(Pi) = " + std::to_string(want),
                    tr == PAdicScalar(p, tr.precision(), want), "got " + std::to_string(tr.centered())});
  }
  const TowerElement pi = TowerElement::pi(tp);
  const TowerElement lhs = pi * pi * fp;
  const TowerElement rhs = PAdicScalar(p, N, static_cast<i64>(p)) * pi * inv_unit(TowerElement::eta(tp));
  rows.push_back({"Pi^2 f'(Pi) = p Pi / eta", lhs == rhs, ""});
  rows.push_back({"v(f'(Pi)) = p - 2", pi_val(fp).value == static_cast<int>(p) - 2 && !pi_val(fp).exhausted,
                  pi_val(fp).to_string()});
  return rows;
}

/// Self-dual normal basis relations for F_{p^p}: Tr(τ^{p^k + p^j}) = δ_kj.
inline std::vector<CheckRow> basis_suite(u64 p) {
  NormalBasis nb = selfdual_normal_basis(p);
  std::vector<CheckRow> rows;
  std::vector<ResidueElement> conj{nb.tau};
  for (u64 k = 1; k < p; ++k) conj.push_back(frobenius(conj.back()));
  rows.push_back({"Tr(tau) = 1", trace_to_prime(nb.tau) == 1, ""});
  bool all = true;
  for (u64 k = 0; k < p; ++k)
    for (u64 j = 0; j < p; ++j) {
      const u64 t = trace_to_prime(conj[k] * conj[j]);
      if (t != (k == j ? 1u : 0u)) all = false;
      if (k == j)
        rows.push_back({"Tr(tau^(2 p^" + std::to_string(k) + ")) = 1", t == 1, "got " + std::to_string(t)});
    }
  rows.push_back({"Tr(tau^(p^k + p^j)) = delta_kj for all k, j", all, ""});
  return rows;
}

inline std::vector<CheckRow> generator_suite(const GeneratorSystem& g) {
  std::vector<CheckRow> rows;
  for (const auto& c : g.checks) rows.push_back({c.name, c.pass, c.detail});
  return rows;
}

struct TrialOutcome {
  std::size_t index = 0;
  int expected = 0;
  CompareReport report;
  bool pass = false;
};

/// Forward-generated valid inputs; each must give agreement on the known γ.
inline std::vector<TrialOutcome> symbol_trials(const SymbolContext& ctx, u64 seed, std::size_t trials) {
  std::vector<TrialOutcome> out;
  for (std::size_t i = 0; i < trials; ++i) {
    auto rng = trial_rng(seed, i);
    ForwardSample s = forward_valid_input(ctx.gens_lo, rng);
    TrialOutcome t{i, s.gamma, compare_all(ctx, s.x), false};
    t.pass = t.report.verdict == Verdict::Agree && t.report.route(Method::Direct).result->gamma == s.gamma;
    out.push_back(std::move(t));
  }
  return out;
}

inline std::vector<CheckRow> symbol_suite(const SymbolContext& ctx, u64 seed, std::size_t trials) {
  auto res = symbol_trials(ctx, seed, trials);
  std::size_t ok = 0;
  std::vector<CheckRow> rows;
  for (const auto& t : res) {
    ok += t.pass;
    std::string detail = "expected " + std::to_string(t.expected) + ";";
    for (const auto& r : t.report.routes)
      detail += std::string(" ") + method_name(r.method) + "=" +
                (r.result ? std::to_string(r.result->gamma) + (r.result->stable ? "" : "(unstable)")
                          : std::string(errc_name(*r.error)));
    rows.push_back({"trial " + std::to_string(t.index), t.pass, detail});
  }
  rows.push_back({"route agreement " + std::to_string(ok) + "/" + std::to_string(res.size()), ok == res.size(), ""});
  return rows;
}

inline std::vector<CheckRow> lubin_tate_suite(u64 p, int D) {
  std::vector<CheckRow> rows;
  const LubinTateLaw law = lt_make(p, p, D);
  const LubinTateLaw law2 = lt_make(p, p, 2 * D);
  for (const auto* l : {&law, &law2}) {
    const AxiomReport rep = lt_check_axioms(*l);
    for (const auto& r : rep.results)
      rows.push_back({r.name + " (D=" + std::to_string(l->D) + ")", r.pass,
                      (r.pass ? "exact below degree " : "first failure at degree ") + std::to_string(r.first_failure)});
  }
  rows.push_back({"truncation of the 2D law equals the D law", lt_stable(law, law2), ""});
  const AxiomReport mult = lt_check_axioms(multiplicative_law(p, D));
  rows.push_back({"multiplicative law axioms", mult.all_pass(), ""});
  return rows;
}

}  // namespace reclab

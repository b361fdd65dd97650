#pragma once

#include <random>
#include <vector>

#include "reclab/generators.hpp"

// Test-input generators. Valid inputs are built forward from the generator
// system so that the expected γ is known before any route runs.

namespace reclab {

struct ForwardSample {
  TowerElement x;  // [p](y), lies in F(m_L)
  TowerElement y;
  int gamma = 0;   // σ(y) -_F y = [γ]ζ
};

/// Random y = Σ[c_j]σ^jω +_F Σ[b_j]σ^jξ +_F Σ[d_i]N_Fθ_i +_F z with z in m_L,
/// where p·c_j + b_{j-1} - b_j = γ for every j, so that σ(y) -_F y = [γ]ζ.
template <class Rng>
ForwardSample forward_valid_input(const GeneratorSystem& g, Rng& rng) {
  const auto& tp = g.params;
  const u64 p = tp->p;
  const int n = tp->n_u;
  const u64 mod = tp->modulus();
  const u64 pm1 = detail::ipow(p, static_cast<unsigned>(tp->m - 1));
  std::uniform_int_distribution<u64> dist(0, mod - 1);

  std::vector<u64> c(n), b(n);
  u64 sum = 0;
  for (int j = 0; j < n; ++j) {
    c[j] = dist(rng);
    sum = (sum + c[j]) % mod;
  }
  // Σc_j must be divisible by p^{m-1}.
  const u64 fix = sum % pm1;
  c[0] = detail::submod(c[0], fix, mod);
  sum = detail::submod(sum, fix, mod);
  const u64 gamma = (sum / pm1) % mod;

  b[0] = dist(rng);
  for (int j = 1; j < n; ++j) b[j] = detail::submod(detail::addmod(b[j - 1], detail::mulmod(p, c[j], mod), mod), gamma, mod);

  auto scalar = [&](u64 v) { return PAdicScalar::from_residue(p, tp->N, v); };
  TowerElement y = random_element(tp, rng, 1, true);
  for (int j = 0; j < n; ++j) {
    y = f_add(y, f_int_mult(scalar(c[j]), apply_sigma(g.omega, j)));
    y = f_add(y, f_int_mult(scalar(b[j]), apply_sigma(g.xi, j)));
  }
  for (const auto& th : g.thetas) y = f_add(y, f_int_mult(scalar(dist(rng)), f_norm_operator(th)));

  TowerElement x = f_int_mult(static_cast<i64>(p), y);
  if (!x.in_base_field()) fail(Errc::ConstructionFailed, "forward sample left the base field");
  return {x, y, static_cast<int>(gamma % p)};
}

/// Random element of Π^p O_L; always a valid input.
template <class Rng>
TowerElement random_valid_lattice_input(const TowerParamsPtr& tp, Rng& rng) {
  return random_element(tp, rng, static_cast<int>(tp->p), true);
}

/// Inputs with 1 <= v(x) <= p-1: the root of 1 + x generates a ramified extension.
template <class Rng>
std::vector<TowerElement> invalid_inputs(const GeneratorSystem& g, Rng& rng, int count) {
  const auto& tp = g.params;
  const int p = static_cast<int>(tp->p);
  std::vector<TowerElement> out;
  out.push_back(g.zeta);
  for (int a = 2; a < p && static_cast<int>(out.size()) < count; ++a) out.push_back(f_int_mult(a, g.zeta));
  std::uniform_int_distribution<int> vdist(1, p - 1);
  while (static_cast<int>(out.size()) < count) {
    TowerElement unit = random_element(tp, rng, 0, true);
    if (residue(unit).is_zero()) unit = unit + TowerElement::one(tp);
    TowerElement x = unit.times_pi_pow(vdist(rng));
    if (out.size() % 2 == 1) x = f_add(x, forward_valid_input(g, rng).x);
    out.push_back(x);
  }
  out.resize(static_cast<std::size_t>(count), g.zeta);
  return out;
}

}  // namespace reclab

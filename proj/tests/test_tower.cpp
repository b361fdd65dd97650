#include <gtest/gtest.h>

#include <random>

#include "reclab/suites.hpp"
#include "reclab/tower.hpp"

using namespace reclab;

namespace {

// Σ_{k=1}^{p-1} (ζ^k - 1)^i expanded binomially; Σ_k ζ^{kj} is p-1 when p | j, else -1.
i64 power_sum_oracle(i64 p, int i) {
  i64 s = 0, binom = 1;
  for (int j = 0; j <= i; ++j) {
    const i64 roots = j % p == 0 ? p - 1 : -1;
    const i64 sign = (i - j) % 2 == 0 ? 1 : -1;
    s += sign * binom * roots;
    binom = binom * (i - j) / (j + 1);
  }
  return s;
}

struct Config {
  u64 p;
  int m;
};

class TowerTest : public ::testing::TestWithParam<Config> {};

}  // namespace

TEST_P(TowerTest, CyclotomicIdentities) {
  auto tp = make_tower(GetParam().p, GetParam().m, 8);
  const auto eta = TowerElement::eta(tp);
  const auto one = TowerElement::one(tp);
  EXPECT_EQ(eta.pow(tp->p), one);
  EXPECT_FALSE(eta == one);
  EXPECT_EQ(trace_LK(eta).centered(), -1);
  EXPECT_EQ(trace_LK(one).centered(), static_cast<i64>(tp->p) - 1);
  Valuation vp = pi_val(TowerElement::from_int(tp, static_cast<i64>(tp->p)));
  EXPECT_EQ(vp.value, static_cast<int>(tp->p) - 1);
}

TEST_P(TowerTest, TraceOfPiPowersMatchesPowerSums) {
  auto tp = make_tower(GetParam().p, GetParam().m, 8);
  TowerElement x = TowerElement::one(tp);
  for (int i = 0; i < 3 * tp->n_pi; ++i) {
    PAdicScalar t = trace_LK(x);
    EXPECT_EQ(t, PAdicScalar(tp->p, t.precision(), power_sum_oracle(static_cast<i64>(tp->p), i))) << "i=" << i;
    x = x * TowerElement::pi(tp);
  }
}

TEST_P(TowerTest, RingAxiomsOnRandomElements) {
  auto tp = make_tower(GetParam().p, GetParam().m, 6);
  std::mt19937_64 rng(17);
  for (int k = 0; k < 30; ++k) {
    auto a = random_element(tp, rng), b = random_element(tp, rng), c = random_element(tp, rng);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, TowerElement::zero(tp));
  }
}

TEST_P(TowerTest, InversesAndExactDivision) {
  auto tp = make_tower(GetParam().p, GetParam().m, 7);
  std::mt19937_64 rng(23);
  const auto one = TowerElement::one(tp);
  for (int k = 0; k < 20; ++k) {
    auto a = random_element(tp, rng);
    if (residue(a).is_zero()) a = a + one;
    EXPECT_EQ(a * inv_unit(a), one);
    const int s = 1 + k % 5;
    auto b = a.times_pi_pow(s);
    EXPECT_EQ(pi_val(b).value, s);
    EXPECT_EQ(div_exact_pi(b, s), a);
    EXPECT_EQ(div(b, a).with_pi_shift(0), TowerElement::pi(tp).pow(s));
    EXPECT_EQ(invert(b) * b, one);
  }
  try {
    div_exact_pi(one, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotDivisible);
  }
  EXPECT_THROW(inv_unit(TowerElement::pi(tp)), Error);
}

TEST_P(TowerTest, DivisionByPiCostsCeilOfKOverPMinusOneDigits) {
  auto tp = make_tower(GetParam().p, GetParam().m, 8);
  const int n = tp->n_pi;
  for (int k = 1; k <= 2 * n + 1; ++k) {
    auto x = TowerElement::u(tp).times_pi_pow(k);
    EXPECT_EQ(div_exact_pi(x, k).precision(), 8 - (k + n - 1) / n) << k;
  }
}

TEST_P(TowerTest, SigmaIsARingAutomorphismOfOrderPm) {
  auto tp = make_tower(GetParam().p, GetParam().m, 6);
  std::mt19937_64 rng(29);
  const auto u = TowerElement::u(tp);
  EXPECT_EQ(apply_sigma(u, tp->n_u), u);
  EXPECT_FALSE(apply_sigma(u, 1) == u);
  // σ(u) ≡ u^p mod p
  EXPECT_TRUE(residue(apply_sigma(u, 1) - u.pow(tp->p)).is_zero());
  for (int k = 0; k < 10; ++k) {
    auto a = random_element(tp, rng), b = random_element(tp, rng);
    EXPECT_EQ(apply_sigma(a * b, 1), apply_sigma(a, 1) * apply_sigma(b, 1));
    EXPECT_EQ(apply_sigma(a + b, 1), apply_sigma(a, 1) + apply_sigma(b, 1));
    auto base = random_element(tp, rng, 0, true);
    EXPECT_EQ(apply_sigma(base, 1), base);
  }
}

TEST_P(TowerTest, TraceAndNormDownToL) {
  auto tp = make_tower(GetParam().p, GetParam().m, 6);
  std::mt19937_64 rng(31);
  const i64 order = tp->n_u;
  for (int k = 0; k < 10; ++k) {
    auto base = random_element(tp, rng, 0, true);
    EXPECT_EQ(trace_ML(base), order * base);
    EXPECT_EQ(norm_ML(base), base.pow(static_cast<u64>(order)));
    auto a = random_element(tp, rng), b = random_element(tp, rng);
    EXPECT_TRUE(trace_ML(a).in_base_field());
    EXPECT_EQ(norm_ML(a * b), norm_ML(a) * norm_ML(b));
  }
}

TEST_P(TowerTest, TeichmullerLiftIsFixedByFrobeniusPower) {
  auto tp = make_tower(GetParam().p, GetParam().m, 6);
  std::mt19937_64 rng(37);
  for (int k = 0; k < 5; ++k) {
    ResidueElement r = ResidueElement::from_index(tp->residue, rng() % tp->residue->size());
    TowerElement t = teichmuller(tp, r);
    EXPECT_EQ(residue(t), r);
    TowerElement q = t;
    for (int i = 0; i < tp->n_u; ++i) q = q.pow(tp->p);
    EXPECT_EQ(q, t);
  }
}

TEST_P(TowerTest, ReinterpretKeepsRepresentatives) {
  auto lo = make_tower(GetParam().p, GetParam().m, 6);
  auto hi = make_tower(GetParam().p, GetParam().m, 8);
  EXPECT_EQ(lo->g, hi->g);
  std::mt19937_64 rng(41);
  auto a = random_element(lo, rng), b = random_element(lo, rng);
  auto ah = a.reinterpret(hi), bh = b.reinterpret(hi);
  EXPECT_EQ(ah.precision(), 8);
  EXPECT_EQ((ah * bh).reinterpret(lo), a * b);
}

INSTANTIATE_TEST_SUITE_P(Configs, TowerTest,
                         ::testing::Values(Config{3, 1}, Config{5, 1}, Config{7, 1}, Config{3, 2}),
                         [](const auto& info) {
                           return "p" + std::to_string(info.param.p) + "m" + std::to_string(info.param.m);
                         });

TEST(Tower, LemmaSuite) {
  for (u64 p : {3, 5, 7})
    for (const auto& row : lemma_suite(p, 8)) EXPECT_TRUE(row.pass) << "p=" << p << " " << row.name << " " << row.detail;
}

TEST(Tower, PiSquaredFPrimeIsPPiOverEta) {
  auto tp = make_tower(5, 1, 8);
  const auto pi = TowerElement::pi(tp);
  EXPECT_EQ(pi * pi * f_prime_at_pi(tp) * TowerElement::eta(tp), 5 * pi);
}

TEST(Tower, ConstructionErrors) {
  auto code = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::ParseError;
  };
  EXPECT_EQ(code([] { make_tower(11, 1, 6); }), Errc::UnsupportedPrime);
  EXPECT_EQ(code([] { make_tower(3, 1, 3); }), Errc::PrecisionTooLow);
  EXPECT_EQ(code([] { make_tower(7, 1, 20); }), Errc::PrecisionTooHigh);
  auto a = TowerElement::one(make_tower(3, 1, 6));
  auto b = TowerElement::one(make_tower(3, 1, 6));
  EXPECT_EQ(code([&] { a + b; }), Errc::ParamsMismatch);
  EXPECT_EQ(code([&] { trace_LK(TowerElement::u(make_tower(3, 1, 6))); }), Errc::NotInBaseField);
}

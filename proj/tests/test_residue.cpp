#include <gtest/gtest.h>

#include <random>

#include "reclab/residue.hpp"

using namespace reclab;

namespace {

// Brute-force oracle: a monic polynomial of degree d over F_p is reducible iff
// it is divisible by some monic polynomial of degree 1..d/2.
bool brute_irreducible(const FpPoly& f, u64 p) {
  const int d = fp::degree(f);
  for (int k = 1; k <= d / 2; ++k) {
    const u64 count = detail::ipow(p, static_cast<unsigned>(k));
    for (u64 idx = 0; idx < count; ++idx) {
      FpPoly g(k + 1, 0);
      u64 t = idx;
      for (int i = 0; i < k; ++i) {
        g[i] = t % p;
        t /= p;
      }
      g[k] = 1;
      if (fp::rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

u64 eval(const FpPoly& f, u64 x, u64 p) {
  u64 r = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) r = (r * x + *it) % p;
  return r;
}

}  // namespace

TEST(Residue, LiteralMinusOneConstantTermIsReducible) {
  // x^3 - x^2 - 1 over F_3 has the root x = 2.
  FpPoly f{2, 0, 2, 1};
  EXPECT_EQ(eval(f, 2, 3), 0u);
  EXPECT_FALSE(is_irreducible(f, 3));
  EXPECT_FALSE(brute_irreducible(f, 3));
  EXPECT_THROW(ResidueField::create(3, f), Error);
}

TEST(Residue, SelfDualModulusIsIrreducible) {
  for (u64 p : {3, 5, 7}) {
    const FpPoly f = selfdual_modulus(p);
    EXPECT_TRUE(is_irreducible(f, p)) << p;
    EXPECT_TRUE(brute_irreducible(f, p)) << p;
  }
}

TEST(Residue, IrreducibilityAgreesWithBruteForce) {
  for (u64 p : {3, 5}) {
    for (int d = 2; d <= 4; ++d) {
      const u64 count = detail::ipow(p, static_cast<unsigned>(d));
      for (u64 idx = 0; idx < count; ++idx) {
        FpPoly f(d + 1, 0);
        u64 t = idx;
        for (int i = 0; i < d; ++i) {
          f[i] = t % p;
          t /= p;
        }
        f[d] = 1;
        ASSERT_EQ(is_irreducible(f, p), brute_irreducible(f, p)) << "p=" << p << " idx=" << idx;
      }
    }
  }
}

TEST(Residue, FrobeniusOfTauByRepeatedMultiplication) {
  NormalBasis nb = selfdual_normal_basis(3);
  const ResidueElement& tau = nb.tau;
  // τ^3 = τ^2 - 1 from x^3 - x^2 + 1.
  ResidueElement expected(nb.field, FpPoly{2, 0, 1});
  EXPECT_EQ(tau * tau * tau, expected);
  EXPECT_EQ(frobenius(tau), expected);
  for (u64 p : {5, 7}) {
    NormalBasis b = selfdual_normal_basis(p);
    ResidueElement prod = ResidueElement::constant(b.field, 1);
    for (u64 k = 0; k < p; ++k) prod = prod * b.tau;
    EXPECT_EQ(frobenius(b.tau), prod);
  }
}

TEST(Residue, SelfDualTraceRelations) {
  for (u64 p : {3, 5, 7}) {
    NormalBasis nb = selfdual_normal_basis(p);
    EXPECT_EQ(trace_to_prime(nb.tau), 1u);
    std::vector<ResidueElement> conj{nb.tau};
    for (u64 k = 1; k < p; ++k) conj.push_back(frobenius(conj.back()));
    for (u64 k = 0; k < p; ++k)
      for (u64 j = 0; j < p; ++j) EXPECT_EQ(trace_to_prime(conj[k] * conj[j]), k == j ? 1u : 0u);
  }
}

TEST(Residue, FieldAxiomsExhaustivelyInF9AndF27) {
  for (int d : {2, 3}) {
    auto field = ResidueField::create(3, random_irreducible(3, d, 11));
    const u64 q = field->size();
    for (u64 i = 1; i < q; ++i) {
      ResidueElement a = ResidueElement::from_index(field, i);
      EXPECT_EQ(a.index(), i);
      EXPECT_EQ(a * a.inverse(), ResidueElement::constant(field, 1));
      EXPECT_EQ(a.pow(q - 1), ResidueElement::constant(field, 1));
    }
    EXPECT_THROW(ResidueElement::constant(field, 0).inverse(), Error);
  }
}

TEST(Residue, TraceAndNormAreSumAndProductOfConjugates) {
  auto field = ResidueField::create(5, random_irreducible(5, 3, 2));
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    ResidueElement a = ResidueElement::from_index(field, rng() % field->size());
    ResidueElement a1 = a.pow(5), a2 = a1.pow(5);
    ResidueElement s = a + a1 + a2, n = a * a1 * a2;
    EXPECT_EQ(ResidueElement::constant(field, trace_to_prime(a)), s);
    EXPECT_EQ(ResidueElement::constant(field, norm_to_prime(a)), n);
  }
}

TEST(Residue, FrobeniusAffineSolverAgreesWithExhaustiveSearch) {
  auto field = ResidueField::create(3, random_irreducible(3, 3, 7));
  const u64 q = field->size();
  for (u64 ai = 0; ai < q; ++ai) {
    ResidueElement alpha = ResidueElement::from_index(field, ai);
    for (u64 bi = 0; bi < q; bi += 5) {
      ResidueElement beta = ResidueElement::from_index(field, bi);
      int solutions = 0;
      for (u64 ci = 0; ci < q; ++ci) {
        ResidueElement c = ResidueElement::from_index(field, ci);
        solutions += frobenius(c) + alpha * c == beta;
      }
      if (solutions == 0) {
        EXPECT_THROW(solve_frobenius_affine(alpha, beta), Error);
      } else {
        ResidueElement c = solve_frobenius_affine(alpha, beta);
        EXPECT_EQ(frobenius(c) + alpha * c, beta);
        EXPECT_EQ(static_cast<u64>(solutions), detail::ipow(3, frobenius_affine_kernel_dim(alpha)));
      }
    }
  }
}

TEST(Residue, ArtinSchreierOverPrimeFieldSolvableInDegreeP) {
  // c^p - c = β with β in F_p^× has no root in F_p but one in F_{p^p}.
  for (u64 p : {3, 5}) {
    NormalBasis nb = selfdual_normal_basis(p);
    ResidueElement minus_one = ResidueElement::constant(nb.field, p - 1);
    for (u64 b = 1; b < p; ++b) {
      ResidueElement beta = ResidueElement::constant(nb.field, b);
      ResidueElement c = solve_frobenius_affine(minus_one, beta);
      EXPECT_EQ(frobenius(c) - c, beta);
    }
    EXPECT_EQ(frobenius_affine_kernel_dim(minus_one), 1);
  }
}

TEST(Residue, RejectsNonMonicModulus) {
  EXPECT_THROW(ResidueField::create(3, FpPoly{1, 0, 2}), Error);
}

#include <gtest/gtest.h>

#include <random>

#include "k1lab/padic.hpp"

using namespace k1lab;

namespace {

PadicScalar coords(const PrimeConfig& P, u64 a0, u64 a1 = 0) {
  const u64 c[2] = {a0 % P.modulus(), a1 % P.modulus()};
  return P.from_coords(std::span<const u64>(c, P.f()));
}

}  // namespace

TEST(Padic, SmallSums) {
  auto P = PrimeConfig::make(3, 1, 2);
  EXPECT_EQ(P->add(P->one(), P->one()), P->from_int(2));
  EXPECT_EQ(P->from_int(-1), P->from_int(8));
}

TEST(Padic, SquareOfGeneratorIsMinusOne) {
  auto P = PrimeConfig::make(3, 2, 2);
  const PadicScalar t = P->generator();
  EXPECT_EQ(P->mul(t, t), P->from_int(8));
}

TEST(Padic, Inverse) {
  auto P = PrimeConfig::make(3, 1, 3);
  EXPECT_EQ(P->invert(P->one()), P->one());
  EXPECT_EQ(P->invert(P->from_int(2)), P->from_int(14));
  try {
    P->invert(P->from_int(3));
    FAIL() << "3 is not a unit";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonUnit);
  }
}

TEST(Padic, TeichmullerValues) {
  auto P = PrimeConfig::make(3, 1, 4);
  EXPECT_EQ(P->teichmuller(P->one()), P->one());
  EXPECT_EQ(P->teichmuller(P->from_int(2)), P->from_int(80));
  EXPECT_THROW(P->teichmuller(P->zero()), Error);
}

TEST(Padic, TeichmullerRootsOfUnityAndFrobenius) {
  auto P = PrimeConfig::make(3, 2, 3);
  const u64 q = P->q();
  int seen = 0;
  for (u64 a0 = 0; a0 < 3; ++a0)
    for (u64 a1 = 0; a1 < 3; ++a1) {
      if (a0 == 0 && a1 == 0) continue;
      const PadicScalar z = P->teichmuller(coords(*P, a0, a1));
      EXPECT_EQ(P->pow(z, q - 1), P->one());
      EXPECT_EQ(P->residue(z), coords(*P, a0, a1));
      EXPECT_EQ(P->frobenius(z), P->pow(z, 3));
      ++seen;
    }
  EXPECT_EQ(seen, 8);
}

TEST(Padic, FrobeniusFixesIntegersAndHasOrderF) {
  auto P1 = PrimeConfig::make(3, 1, 4);
  for (int a = 0; a < 81; ++a) EXPECT_EQ(P1->frobenius(P1->from_int(a)), P1->from_int(a));
  auto P2 = PrimeConfig::make(3, 2, 4);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const PadicScalar a = coords(*P2, rng(), rng());
    EXPECT_EQ(P2->frobenius(P2->frobenius(a)), a);
  }
}

TEST(Padic, ResidueTrace) {
  auto P1 = PrimeConfig::make(3, 1, 3);
  EXPECT_EQ(P1->residue_trace(P1->from_int(5)), 2u);
  EXPECT_EQ(P1->residue_trace(P1->zero()), 0u);
  auto P2 = PrimeConfig::make(3, 2, 3);
  EXPECT_EQ(P2->residue_trace(P2->generator()), 0u);
  EXPECT_EQ(P2->residue_trace(P2->one()), 2u);
}

// Oracle: (a0 + a1 t)(b0 + b1 t) with t^2 = -1, computed on plain integers.
TEST(Padic, MultiplicationMatchesQuadraticOracle) {
  auto P = PrimeConfig::make(3, 2, 4);
  const long long m = 81;
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    const long long a0 = rng() % m, a1 = rng() % m, b0 = rng() % m, b1 = rng() % m;
    const long long c0 = ((a0 * b0 - a1 * b1) % m + m) % m;
    const long long c1 = (a0 * b1 + a1 * b0) % m;
    EXPECT_EQ(P->mul(coords(*P, a0, a1), coords(*P, b0, b1)), coords(*P, c0, c1));
  }
}

TEST(Padic, ValuationAndDivision) {
  auto P = PrimeConfig::make(3, 1, 4);
  EXPECT_EQ(P->valuation(P->from_int(18)), 2u);
  EXPECT_EQ(P->valuation(P->zero()), 4u);
  EXPECT_EQ(P->div_pk(P->from_int(18), 2), P->from_int(2));
  EXPECT_EQ(P->reduce(P->from_int(80), 2), P->from_int(8));
}

TEST(Padic, InvalidConfigs) {
  EXPECT_THROW(PrimeConfig::make(4, 1, 2), Error);
  EXPECT_THROW(PrimeConfig::make(3, 4, 2), Error);
  EXPECT_THROW(PrimeConfig::make(3, 1, 40), Error);
}

TEST(Padic, WrapperRejectsMixedConfigs) {
  auto P = PrimeConfig::make(3, 1, 2);
  auto Q = PrimeConfig::make(3, 1, 3);
  EXPECT_THROW((void)(Padic::of(P, 1) + Padic::of(Q, 1)), Error);
}

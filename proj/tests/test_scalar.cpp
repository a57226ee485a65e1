#include <gtest/gtest.h>

#include <random>

#include "hecke/algebra/laurent_q.hpp"
#include "hecke/scalar/finite_field.hpp"
#include "hecke/scalar/series.hpp"

using namespace hecke;

TEST(Fq2, ConjugateOfEtaIsMinusEta) {
  for (int q : {3, 5, 9, 25}) {
    const auto& F = Fq2Field::get(q);
    EXPECT_EQ(conj(F.eta()), -F.eta());
  }
}

TEST(Fq2, ConjugationFixesBaseField) {
  for (int q : {3, 5, 9}) {
    const auto& F = Fq2Field::get(q);
    for (int a = 0; a < q; ++a) EXPECT_EQ(conj(F.make(a)), F.make(a));
    // Exactly the base field is fixed.
    int fixed = 0;
    for (int i = 0; i < F.size(); ++i)
      if (conj(F.from_index(i)) == F.from_index(i)) ++fixed;
    EXPECT_EQ(fixed, q);
  }
}

TEST(Fq2, ConjugationIsFrobeniusAndInvolution) {
  std::mt19937_64 rng(7);
  for (int q : {3, 5, 9}) {
    const auto& F = Fq2Field::get(q);
    for (int i = 0; i < 100; ++i) {
      Fq2Elem x = F.random(rng);
      EXPECT_EQ(conj(conj(x)), x);
      EXPECT_EQ(F.pow(x, static_cast<long long>(q) * q), x);
      EXPECT_EQ(conj(x), F.pow(x, q));
    }
  }
}

TEST(Fq2, ConjugationAndNormAreMultiplicative) {
  std::mt19937_64 rng(11);
  for (int q : {3, 5, 9, 27}) {
    const auto& F = Fq2Field::get(q);
    for (int i = 0; i < 200; ++i) {
      Fq2Elem x = F.random(rng), y = F.random(rng);
      EXPECT_EQ(conj(x * y), conj(x) * conj(y));
      EXPECT_EQ(F.norm(x * y), F.base().mul(F.norm(x), F.norm(y)));
      EXPECT_TRUE((x * conj(x)).in_base_field());
    }
  }
}

// Reference multiplication for q = 3 written out independently: F_9 = F_3[i]
// with i^2 = -1 (-1 is a non-square mod 3).
TEST(Fq2, MatchesExhaustiveTableAtQ3) {
  const auto& F = Fq2Field::get(3);
  ASSERT_EQ(F.base().nonsquare(), 2);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          int re = ((a * c - b * d) % 3 + 9) % 3;
          int im = (a * d + b * c) % 3;
          Fq2Elem got = F.make(a, b) * F.make(c, d);
          EXPECT_EQ(got.a, re);
          EXPECT_EQ(got.b, im);
          EXPECT_EQ((F.make(a, b) + F.make(c, d)).a, (a + c) % 3);
        }
}

TEST(Fq2, FieldAxiomsForExtensionBase) {
  for (int q : {9, 25, 27}) {
    const auto& F = Fq2Field::get(q);
    for (int i = 1; i < F.size(); ++i) {
      Fq2Elem x = F.from_index(i);
      EXPECT_EQ(x * inverse(x), F.one());
    }
    EXPECT_EQ(F.base().pow(F.base().nonsquare(), (q - 1) / 2), F.base().neg(1));
  }
}

TEST(Fq, RejectsEvenAndNonPrimePowers) {
  EXPECT_THROW(FiniteField(8), UsageError);
  EXPECT_THROW(FiniteField(15), UsageError);
  EXPECT_THROW(Fq2Field::get(3).inv(Fq2Field::get(3).zero()), NonUnit);
}

TEST(Series, InvertOneAndGeometric) {
  const auto& F = Fq2Field::get(3);
  auto one = TruncatedSeries::one(F, 5);
  EXPECT_EQ(one.inverse(), one);
  auto x = one + TruncatedSeries::monomial(F.one(), 1, 5);
  auto inv = x.inverse();
  for (int k = 0; k < 5; ++k) EXPECT_EQ(inv[k], k % 2 ? -F.one() : F.one());
  EXPECT_THROW(TruncatedSeries::monomial(F.one(), 1, 5).inverse(), NonUnit);
}

TEST(Series, RandomUnitsMultiplyBack) {
  std::mt19937_64 rng(3);
  for (int q : {3, 5, 9})
    for (int m = 1; m <= 6; ++m)
      for (int i = 0; i < 20; ++i) {
        const auto& F = Fq2Field::get(q);
        auto x = TruncatedSeries::random(F, m, rng);
        if (!x.is_unit()) continue;
        EXPECT_EQ(x * x.inverse(), TruncatedSeries::one(F, m));
      }
}

TEST(Series, AssociativityAtMinimumPrecision) {
  std::mt19937_64 rng(5);
  const auto& F = Fq2Field::get(5);
  for (int i = 0; i < 50; ++i) {
    auto x = TruncatedSeries::random(F, 3 + i % 3, rng);
    auto y = TruncatedSeries::random(F, 4, rng);
    auto z = TruncatedSeries::random(F, 6 - i % 2, rng);
    auto l = (x * y) * z, r = x * (y * z);
    EXPECT_EQ(l.precision(), r.precision());
    EXPECT_EQ(l.precision(), std::min({x.precision(), y.precision(), z.precision()}));
    EXPECT_EQ(l, r);
  }
  EXPECT_THROW(TruncatedSeries::one(F, 3).truncate(4), InsufficientPrecision);
  EXPECT_THROW(TruncatedSeries::one(F, 3)[3], InsufficientPrecision);
}

TEST(Series, ValuationConventions) {
  const auto& F = Fq2Field::get(3);
  EXPECT_EQ(TruncatedSeries(F, 4).valuation(), 4);
  EXPECT_EQ(TruncatedSeries::monomial(F.eta(), 2, 4).valuation(), 2);
  auto s = TruncatedSeries::monomial(F.eta(), 1, 3);
  EXPECT_EQ(s.conj()[1], -F.eta());
}

TEST(BoundedLaurent, WindowReadsThrow) {
  const auto& F = Fq2Field::get(3);
  BoundedLaurent x(F, -2, {F.one(), F.zero(), F.eta()});  // t^-2 + eta + O(t)
  EXPECT_EQ(x.valuation(), -2);
  EXPECT_THROW(x.coeff(1), InsufficientPrecision);
  EXPECT_THROW(x.coeff(-3), InsufficientPrecision);
  EXPECT_TRUE(x.certified_nonintegral());
  auto y = x * BoundedLaurent::monomial(F.one(), 2);
  EXPECT_EQ(y.floor(), 0);
  EXPECT_EQ(y.precision(), 3);
  EXPECT_TRUE(y.certified_integral());
}

TEST(BoundedLaurent, InverseKeepsRelativePrecision) {
  std::mt19937_64 rng(9);
  const auto& F = Fq2Field::get(5);
  for (int i = 0; i < 30; ++i) {
    std::vector<Fq2Elem> c(6);
    for (auto& e : c) e = F.random(rng);
    if (c[0].is_zero()) c[0] = F.one();
    BoundedLaurent x(F, -1 + i % 3, c);
    auto inv = x.inverse();
    auto prod = x * inv;
    EXPECT_EQ(prod.precision() - prod.valuation(), 6);
    EXPECT_EQ(prod.coeff(0), F.one());
    for (int k = 1; k < prod.precision(); ++k) EXPECT_TRUE(prod.coeff(k).is_zero());
  }
}

TEST(BoundedLaurent, ProductPrecisionIsWorstCase) {
  const auto& F = Fq2Field::get(3);
  BoundedLaurent x(F, 1, {F.one(), F.one()});   // t + t^2 + O(t^3)
  BoundedLaurent y(F, -2, {F.eta(), F.one()});  // eta t^-2 + t^-1 + O(1)
  auto p = x * y;
  EXPECT_EQ(p.precision(), std::min(3 - 2, 0 + 1));
  EXPECT_EQ(p.coeff(-1), F.eta());
}

TEST(LaurentQ, EvalExamples) {
  auto q = LaurentQ::q();
  EXPECT_EQ(laurentq_eval(q * q + q, 3), 12);
  EXPECT_EQ(laurentq_eval(q * (q + 1), 3), 12);
  auto c21 = -(q - 1) * (q + 1).pow(2) * q.pow(11);
  EXPECT_EQ(laurentq_eval(c21, 3), -5668704);
  EXPECT_THROW(laurentq_eval(LaurentQ::q_pow(-1), 0), ZeroSubstitution);
  EXPECT_EQ(laurentq_eval(q + 1, 0), 1);
  EXPECT_EQ(laurentq_eval(LaurentQ::q_pow(-2) * 3, 3), Rational(1, 3));
}

TEST(LaurentQ, EvalIsRingHomomorphism) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    auto f = LaurentQ::random(rng, -3, 4, 20), g = LaurentQ::random(rng, -2, 5, 20);
    for (int n : {2, 3, 5}) {
      EXPECT_EQ(laurentq_eval(f * g, n), laurentq_eval(f, n) * laurentq_eval(g, n));
      EXPECT_EQ(laurentq_eval(f + g, n), laurentq_eval(f, n) + laurentq_eval(g, n));
    }
  }
}

TEST(LaurentQ, RingAxiomsAndDivision) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    auto f = LaurentQ::random(rng, -2, 3, 9), g = LaurentQ::random(rng, 0, 3, 9), h = LaurentQ::random(rng, -1, 2, 9);
    EXPECT_EQ(f * (g + h), f * g + f * h);
    EXPECT_EQ((f * g) * h, f * (g * h));
    EXPECT_EQ(f - f, LaurentQ());
    auto d = LaurentQ::q() * (LaurentQ::q() + 1);
    auto [quo, rem] = (f * d).divmod(d);
    EXPECT_TRUE(rem.is_zero());
    EXPECT_EQ(quo, f);
  }
  EXPECT_FALSE((LaurentQ::q() + 2).divisible_by(LaurentQ::q() + 1));
  EXPECT_THROW(LaurentQ::monomial(INT64_MAX, 0) + 1, ArithmeticOverflow);
}

TEST(LaurentQ, Printing) {
  EXPECT_EQ(LaurentQ::poly_desc({1, 0, -1}).to_string(), "q^2 - 1");
  EXPECT_EQ((LaurentQ::q_pow(-1) * -2 + 3).to_string(), "3 - 2*q^(-1)");
  EXPECT_EQ(LaurentQ().to_string(), "0");
}

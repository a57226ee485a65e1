#include <gtest/gtest.h>

#include <set>

#include "hecke/invariants/invariants.hpp"

using namespace hecke;

namespace {

LaurentQ q() { return LaurentQ::q(); }
InvariantVector basis(int a, int b) { return InvariantVector({a, b}); }

std::map<Invariant, BigInt> ints(std::initializer_list<std::pair<Invariant, long long>> l) {
  std::map<Invariant, BigInt> m;
  for (auto [k, v] : l) m[k] = v;
  return m;
}

}  // namespace

TEST(Invariants, VectorDropsZeros) {
  InvariantVector v = basis(1, 0) + basis(0, 1);
  v = v - basis(1, 0);
  EXPECT_EQ(v, basis(0, 1));
  EXPECT_EQ(v.terms().size(), 1u);
  EXPECT_TRUE((LaurentQ(0) * v).is_zero());
}

TEST(Invariants, GeneratorExamples) {
  EXPECT_EQ(apply_t10(basis(1, 0)), basis(0, 0) + (q() - 1) * basis(1, 0) + LaurentQ::q_pow(4) * basis(2, 0));
  EXPECT_EQ(apply_t10(basis(0, 0)), (q() * q() * q() - q()) * q() * basis(1, 0) + q() * (q() + 1) * basis(0, 1));
  EXPECT_EQ(apply_t01(basis(2, 0)), q() * (q() + 1) * basis(2, 1));
  EXPECT_EQ(apply_t01(basis(0, 1)), basis(0, 0) + (q() - 1) * basis(0, 1) + q() * q() * basis(0, 2));
}

TEST(Invariants, MassConservation) {
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) {
      EXPECT_EQ(apply_t10(basis(a, b)).coefficient_sum(), LaurentQ::q_pow(4) + q());
      EXPECT_EQ(apply_t01(basis(a, b)).coefficient_sum(), q() * q() + q());
    }
  EXPECT_EQ(apply_t10(basis(2, 1)).coefficient_sum().eval_integer(3), 84);
  EXPECT_EQ(apply_t01(basis(2, 1)).coefficient_sum().eval_integer(3), 12);
}

TEST(Invariants, GeneratorsCommute) {
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b)
      EXPECT_EQ(apply_t10(apply_t01(basis(a, b))), apply_t01(apply_t10(basis(a, b)))) << a << "," << b;
}

TEST(Invariants, BruteForceExamples) {
  EXPECT_EQ(brute_force_operator(Op::T10, 1, 0, 3), ints({{{0, 0}, 1}, {{1, 0}, 2}, {{2, 0}, 81}}));
  EXPECT_EQ(brute_force_operator(Op::T01, 0, 0, 3), ints({{{0, 1}, 12}}));
  EXPECT_EQ(brute_force_operator(Op::T10, 0, 2, 3),
            ints({{{1, 2}, 72}, {{0, 3}, 9}, {{0, 2}, 2}, {{0, 1}, 1}}));
}

TEST(Invariants, OperatorsMatchTreeTallies) {
  for (int qq : {3, 5})
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; a + b <= 3; ++b) {
        EXPECT_EQ(apply_t10(basis(a, b)).at(qq), brute_force_operator(Op::T10, a, b, qq)) << a << "," << b;
        EXPECT_EQ(apply_t01(basis(a, b)).at(qq), brute_force_operator(Op::T01, a, b, qq)) << a << "," << b;
      }
}

TEST(Invariants, PowersMoveOneStepAtATime) {
  InvariantVector v = basis(0, 0);
  for (int n = 1; n <= 5; ++n) {
    v = apply_t10(v);
    for (const auto& [x, c] : v.terms()) EXPECT_LE(x.a + x.b, n);
  }
}

TEST(Invariants, OperatorPolyEvaluation) {
  OperatorPoly z = OperatorPoly::x();
  EXPECT_EQ(eval_operator_poly(z, 1, basis(0, 0)), basis(0, 0));
  OperatorPoly tz = OperatorPoly(SymbolPoly::var(1)) * z;
  EXPECT_EQ(eval_operator_poly(tz, 1, basis(2, 0)), q() * (q() + 1) * basis(2, 1));
}

TEST(Distribution, DistributionRelation) {
  auto r = distribution_check();
  EXPECT_TRUE(r.support_ok);
  EXPECT_TRUE(r.divisible);
  EXPECT_TRUE(r.coeff21_ok);
  EXPECT_TRUE(r.coeff03_ok);
  EXPECT_EQ(r.value.coeff({2, 1}), -((q() - 1) * (q() + 1) * (q() + 1) * LaurentQ::q_pow(11)));
  ASSERT_EQ(r.diffs.size(), 9u);
  std::set<Invariant> mismatched;
  for (const auto& d : r.diffs)
    if (!d.match) mismatched.insert(d.x);
  EXPECT_EQ(mismatched, (std::set<Invariant>{{1, 0}, {1, 1}, {1, 2}}));
}

TEST(Distribution, DivisibilityIsInPolynomialRing) {
  const LaurentQ d = q() * (q() + 1);
  EXPECT_TRUE(divisible_in_Zq(d * (q() - 3), d));
  EXPECT_FALSE(divisible_in_Zq(q() + 1, d));
  EXPECT_FALSE(divisible_in_Zq(LaurentQ::q_pow(-1) * d, d));
}

TEST(Invariants, UnitIndex) {
  EXPECT_EQ(unit_index(0), LaurentQ(1));
  EXPECT_EQ(unit_index(1), q() + 1);
  EXPECT_EQ(unit_index(2), q() * (q() + 1));
  EXPECT_EQ(unit_index(1).eval_integer(3), 4);
}

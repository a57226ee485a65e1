#include <gtest/gtest.h>

#include "hecke/tensor/hecke_tensor.hpp"

using namespace hecke;

namespace {

using Sym3 = SparsePoly<LaurentQ, 3>;
using P3 = Poly<Sym3>;
using ZP = Poly<BigInt>;

ZP zp(std::vector<long long> desc) {
  std::vector<BigInt> c(desc.begin(), desc.end());
  return ZP::from_desc(std::move(c));
}

// Product over all root pairs of (z - x y), for integer roots.
ZP from_roots(const std::vector<long long>& xs, const std::vector<long long>& ys) {
  ZP out(BigInt(1));
  for (auto x : xs)
    for (auto y : ys) out *= zp({1, -x * y});
  return out;
}

ZP poly_from_roots(const std::vector<long long>& xs) {
  ZP out(BigInt(1));
  for (auto x : xs) out *= zp({1, -x});
  return out;
}

}  // namespace

TEST(Tensor, LinearFactors) {
  // (z - x) (x) (z - y) = z - xy with x, y symbolic.
  Sym3 x = Sym3::var(0), y = Sym3::var(1);
  P3 a = P3::from_desc({Sym3(1), Sym3(-1) * x});
  P3 b = P3::from_desc({Sym3(1), Sym3(-1) * y});
  EXPECT_EQ(composed_product(a, b), P3::from_desc({Sym3(1), Sym3(-1) * x * y}));
}

TEST(Tensor, QuadraticTimesLinearSymbolic) {
  Sym3 u1 = Sym3::var(0), u2 = Sym3::var(1), v1 = Sym3::var(2);
  P3 h1 = P3::from_desc({Sym3(1), u1, u2});
  // Root -v1: products -v1 x_i give z^2 - u1 v1 z + u2 v1^2.
  P3 plus = P3::from_desc({Sym3(1), v1});
  EXPECT_EQ(composed_product(h1, plus), P3::from_desc({Sym3(1), Sym3(-1) * u1 * v1, u2 * v1 * v1}));
  // Root +v1 gives the positive middle coefficient.
  P3 minus = P3::from_desc({Sym3(1), Sym3(-1) * v1});
  EXPECT_EQ(composed_product(h1, minus), P3::from_desc({Sym3(1), u1 * v1, u2 * v1 * v1}));
}

TEST(Tensor, SignOfLinearCaseOnIntegers) {
  // Roots {1, 2} and {-1}: products {-1, -2}, so z^2 + 3z + 2.
  ZP h1 = poly_from_roots({1, 2});  // z^2 - 3z + 2
  EXPECT_EQ(composed_product(h1, zp({1, 1})), zp({1, 3, 2}));
  EXPECT_EQ(composed_product(h1, zp({1, 1})), from_roots({1, 2}, {-1}));
}

TEST(Tensor, RootsProducts) {
  std::vector<long long> xs{2, -1, 3}, ys{1, -2, 5, 4};
  EXPECT_EQ(composed_product(poly_from_roots(xs), poly_from_roots(ys)), from_roots(xs, ys));
  EXPECT_EQ(composed_product_oracle(poly_from_roots(xs), poly_from_roots(ys)), from_roots(xs, ys));
}

TEST(Tensor, RandomPairsMatchOracle) {
  for (const auto& [a, b] : random_monic_pairs(2024, 50)) {
    ZP h = composed_product(a, b);
    EXPECT_EQ(h, composed_product_oracle(a, b)) << a << " | " << b;
    EXPECT_EQ(h.degree(), a.degree() * b.degree());
    EXPECT_TRUE(h.is_monic());
  }
}

TEST(Tensor, RandomPairsAreReproducible) {
  auto x = random_monic_pairs(99, 10), y = random_monic_pairs(99, 10);
  EXPECT_EQ(x, y);
  EXPECT_NE(x, random_monic_pairs(100, 10));
  for (const auto& [a, b] : x) {
    EXPECT_GE(a.degree(), 1);
    EXPECT_LE(a.degree(), 4);
    EXPECT_TRUE(a.is_monic() && b.is_monic());
  }
}

TEST(Tensor, ConstantTermIsProductOfAllRootPairs) {
  // prod x_i y_j = (-1)^(d1 d2) det(C1 (x) C2).
  for (const auto& [a, b] : random_monic_pairs(7, 20)) {
    auto k = kronecker(companion(a), companion(b));
    Rational det = berkowitz_det(k);
    int d = a.degree() * b.degree();
    Rational expected = d % 2 == 0 ? det : -det;
    EXPECT_EQ(Rational(composed_product(a, b).coeff(0)), expected);
  }
}

TEST(Tensor, CommutesWithEmbeddingIntoLaurent) {
  for (const auto& [a, b] : random_monic_pairs(31, 15)) {
    EXPECT_EQ(to_laurent_poly(composed_product(a, b)), composed_product(to_laurent_poly(a), to_laurent_poly(b)));
  }
}

TEST(Tensor, SymmetricInArguments) {
  for (const auto& [a, b] : random_monic_pairs(5, 10)) EXPECT_EQ(composed_product(a, b), composed_product(b, a));
}

TEST(Tensor, RejectsNonMonic) {
  EXPECT_THROW(composed_product(zp({2, 1}), zp({1, 1})), UsageError);
  EXPECT_THROW(composed_product_oracle(zp({1, 1}), zp({3, 0, 1})), UsageError);
}

TEST(Certificate, TrivialSecondFactor) {
  // H2 = z - 1 makes H = H1; dividing H1(z1 z2) by H1(z1) leaves P = z2^3.
  ZP h1 = zp({1, -4, 2, 7});
  auto c = membership_certificate(h1, zp({1, -1}));
  EXPECT_TRUE(c.verify());
  EXPECT_TRUE(c.degrees_ok());
  EXPECT_EQ(composed_product(h1, zp({1, -1})), h1);
  EXPECT_EQ(c.P, Poly<ZP>(ZP::monomial(BigInt(1), 3)));
}

TEST(Certificate, RandomPairsVerify) {
  for (const auto& [a, b] : random_monic_pairs(2024, 50)) {
    auto c = membership_certificate(a, b);
    EXPECT_TRUE(c.verify());
    EXPECT_TRUE(c.degrees_ok());
  }
}

TEST(Certificate, DegreeTwoPairs) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    auto r = [&] { return static_cast<long long>(rng() % 11) - 5; };
    auto c = membership_certificate(zp({1, r(), r()}), zp({1, r(), r()}));
    EXPECT_TRUE(c.verify());
  }
}

TEST(Certificate, TamperedWitnessFailsExpansion) {
  auto c = membership_certificate(zp({1, 2, 3}), zp({1, -1, 2}));
  c.Q = c.Q + Poly<ZP>(ZP(BigInt(1)));
  EXPECT_FALSE(c.verify());
}

TEST(Certificate, SymbolicCoefficients) {
  Sym3 u1 = Sym3::var(0), u2 = Sym3::var(1), v1 = Sym3::var(2);
  auto c = membership_certificate(P3::from_desc({Sym3(1), u1, u2}), P3::from_desc({Sym3(1), v1}));
  EXPECT_TRUE(c.verify());
}

TEST(HeckeTensor, ComposedProductIsDegreeSixHeckePolynomial) {
  auto r = hecke_tensor_check();
  EXPECT_TRUE(r.match) << r.composed.to_string("z", torus_to_string);
  EXPECT_TRUE(r.certificate_ok);
  EXPECT_EQ(r.composed.degree(), 6);
  EXPECT_EQ(r.composed, ratio_product());
}

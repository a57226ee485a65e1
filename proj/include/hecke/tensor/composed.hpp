#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <string>
#include <vector>

#include "hecke/algebra/laurent_q.hpp"
#include "hecke/algebra/poly.hpp"
#include "hecke/error.hpp"

namespace hecke {

/// Sylvester matrix of a and b with formal degrees m and n (rows: n shifts
/// of a, then m shifts of b; coefficients highest first).
template <class R>
Matrix<R> sylvester(const Poly<R>& a, int m, const Poly<R>& b, int n) {
  const int s = m + n;
  Matrix<R> out(static_cast<size_t>(s), std::vector<R>(static_cast<size_t>(s), R{}));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) out[r][r + k] = a.coeff(m - k);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) out[n + r][r + k] = b.coeff(n - k);
  return out;
}

/// Resultant with formal degrees; for monic a it equals the product of b
/// over the roots of a.
template <class R>
R resultant(const Poly<R>& a, int m, const Poly<R>& b, int n) {
  if (m + n == 0) return ring_one<R>();
  return berkowitz_det(sylvester(a, m, b, n));
}

/// Monic polynomial whose roots are the pairwise products of the roots of
/// h1 and h2: Res_w(h1(w), w^d2 h2(z/w)).
template <class R>
Poly<R> composed_product(const Poly<R>& h1, const Poly<R>& h2) {
  if (!h1.is_monic() || !h2.is_monic()) throw UsageError("composed product needs monic polynomials");
  const int d1 = h1.degree(), d2 = h2.degree();
  using PR = Poly<R>;
  // w^d2 h2(z/w) as a polynomial in w over R[z]: coefficient of w^(d2-j) is c_j z^j.
  std::vector<PR> g(static_cast<size_t>(d2) + 1);
  for (int j = 0; j <= d2; ++j) g[d2 - j] = PR::monomial(h2.coeff(j), j);
  Poly<PR> G(std::move(g));
  Poly<PR> H1 = h1.map([](const R& c) { return PR(c); });
  return resultant(H1, d1, G, d2);
}

// ---- companion-matrix oracle over the integers ----

inline Matrix<Rational> companion(const Poly<BigInt>& h) {
  const int d = h.degree();
  Matrix<Rational> c(static_cast<size_t>(d), std::vector<Rational>(static_cast<size_t>(d), Rational(0)));
  for (int i = 1; i < d; ++i) c[i][i - 1] = 1;
  for (int i = 0; i < d; ++i) c[i][d - 1] = Rational(-h.coeff(i));
  return c;
}

inline Matrix<Rational> kronecker(const Matrix<Rational>& a, const Matrix<Rational>& b) {
  const size_t n = a.size(), m = b.size();
  Matrix<Rational> k(n * m, std::vector<Rational>(n * m, Rational(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t r = 0; r < m; ++r)
        for (size_t s = 0; s < m; ++s) k[i * m + r][j * m + s] = a[i][j] * b[r][s];
  return k;
}

/// det(z I - A) by Faddeev-LeVerrier over Q.
inline Poly<Rational> faddeev_leverrier(const Matrix<Rational>& a) {
  const size_t n = a.size();
  std::vector<Rational> c(n + 1, Rational(0));  // c[k]: coefficient of z^(n-k)
  c[0] = 1;
  Matrix<Rational> m(n, std::vector<Rational>(n, Rational(0)));  // M_0 = 0
  for (size_t k = 1; k <= n; ++k) {
    Matrix<Rational> next(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Rational s = i == j ? c[k - 1] : Rational(0);
        for (size_t l = 0; l < n; ++l) s += a[i][l] * m[l][j];
        next[i][j] = s;
      }
    m = std::move(next);
    Rational tr = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t l = 0; l < n; ++l) tr += a[i][l] * m[l][i];
    c[k] = -tr / Rational(static_cast<long long>(k));
  }
  std::vector<Rational> asc(c.rbegin(), c.rend());
  return Poly<Rational>(std::move(asc));
}

inline Poly<BigInt> to_integer_poly(const Poly<Rational>& p) {
  std::vector<BigInt> out;
  for (const auto& c : p.coeffs()) {
    if (denominator(c) != 1) throw NonIntegralCoefficient("characteristic polynomial is not integral");
    out.push_back(numerator(c));
  }
  return Poly<BigInt>(std::move(out));
}

inline Poly<BigInt> composed_product_oracle(const Poly<BigInt>& h1, const Poly<BigInt>& h2) {
  if (!h1.is_monic() || !h2.is_monic()) throw UsageError("composed product needs monic polynomials");
  return to_integer_poly(faddeev_leverrier(kronecker(companion(h1), companion(h2))));
}

// ---- ideal-membership certificate ----

/// H(z1 z2) = H1(z1) P + H2(z2) Q with P, Q in R[z2][z1] (outer variable z1).
template <class R>
struct MembershipCertificate {
  Poly<Poly<R>> P;
  Poly<Poly<R>> Q;
  Poly<Poly<R>> target;  // H(z1 z2)
  Poly<Poly<R>> h1;      // H1(z1)
  Poly<Poly<R>> h2;      // H2(z2) as a constant in z1
  int q_z2_bound = 0;     // z2-degree of Q stays below this
  bool verify() const { return target == h1 * P + h2 * Q; }
  int p_z1_degree() const { return P.degree(); }
  int q_z2_degree() const {
    int d = -1;
    for (const auto& c : Q.coeffs()) d = std::max(d, c.degree());
    return d;
  }
  bool degrees_ok() const {
    return p_z1_degree() < target.degree() + h1.degree() && q_z2_degree() < q_z2_bound;
  }
};

/// Builds the certificate by monic division of H(z1 z2) by H1 in z1, then of
/// each remainder coefficient by H2 in z2; the second division must be exact.
template <class R>
MembershipCertificate<R> membership_certificate(const Poly<R>& h1, const Poly<R>& h2) {
  using PR = Poly<R>;
  using PP = Poly<PR>;
  const Poly<R> h = composed_product(h1, h2);
  std::vector<PR> t;
  for (int k = 0; k <= h.degree(); ++k) t.push_back(PR::monomial(h.coeff(k), k));
  MembershipCertificate<R> c;
  c.target = PP(std::move(t));
  c.h1 = h1.map([](const R& x) { return PR(x); });
  c.h2 = PP(h2);
  auto [quo, rem] = c.target.divmod_monic(c.h1);
  c.P = quo;
  std::vector<PR> qc;
  for (int k = 0; k <= rem.degree(); ++k) {
    auto [qk, rk] = rem.coeff(k).divmod_monic(h2);
    if (!rk.is_zero()) throw CertificateFailure("remainder coefficient of z1^" + std::to_string(k) + " not divisible by H2");
    qc.push_back(qk);
  }
  c.Q = PP(std::move(qc));
  c.q_z2_bound = std::max(1, h.degree() - h2.degree() + 1);
  if (!c.verify()) throw CertificateFailure("certificate identity does not expand to zero");
  return c;
}

// ---- seeded random inputs ----

using IntPolyPair = std::pair<Poly<BigInt>, Poly<BigInt>>;

/// Monic integer polynomials of degree 1..max_degree with coefficients in
/// [-bound, bound], reproducible from the seed.
inline std::vector<IntPolyPair> random_monic_pairs(uint64_t seed, int count, int max_degree = 4, int bound = 5) {
  std::mt19937_64 rng(seed);
  auto draw = [&](int lo, int hi) { return static_cast<int>(lo + static_cast<int64_t>(rng() % static_cast<uint64_t>(hi - lo + 1))); };
  auto poly = [&] {
    int d = draw(1, max_degree);
    std::vector<BigInt> c(static_cast<size_t>(d) + 1);
    for (int i = 0; i < d; ++i) c[i] = draw(-bound, bound);
    c[d] = 1;
    return Poly<BigInt>(std::move(c));
  };
  std::vector<IntPolyPair> out;
  for (int i = 0; i < count; ++i) {
    auto a = poly();
    out.emplace_back(a, poly());
  }
  return out;
}

inline Poly<LaurentQ> to_laurent_poly(const Poly<BigInt>& p) {
  return p.map([](const BigInt& c) {
    if (c > INT64_MAX || c < INT64_MIN) throw UsageError("coefficient out of range for LaurentQ");
    return LaurentQ(static_cast<int64_t>(c));
  });
}

}  // namespace hecke

#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hecke/algebra/laurent_q.hpp"
#include "hecke/error.hpp"

namespace hecke {

// Text forms of coefficients; polynomial printers wrap multi-term
// coefficients in parentheses.
inline std::string to_text(const LaurentQ& x) { return x.to_string(); }
inline std::string to_text(const BigInt& x) { return x.str(); }
inline std::string to_text(const Rational& x) { return x.str(); }
inline std::string to_text(long long x) { return std::to_string(x); }
inline std::string to_text(long x) { return std::to_string(x); }
inline std::string to_text(int x) { return std::to_string(x); }

namespace detail {
inline bool needs_parens(const std::string& s) {
  return s.find(" + ") != std::string::npos || s.find(" - ") != std::string::npos;
}
}  // namespace detail

template <class R>
class Poly;

/// Multiplicative identity; nested polynomial rings build it level by level.
template <class R>
struct RingOne {
  static R get() { return R(1); }
};
template <class S>
struct RingOne<Poly<S>> {
  static Poly<S> get() { return Poly<S>(RingOne<S>::get()); }
};
template <class R>
R ring_one() {
  return RingOne<R>::get();
}

/// Dense univariate polynomial over a commutative ring R. Coefficients are
/// stored from degree 0 up with no trailing zeros. R needs +, -, *, == and
/// R{} as zero, ring_one<R>() as one.
template <class R>
class Poly {
 public:
  Poly() = default;
  Poly(const R& c) {  // NOLINT: constants embed
    if (!(c == R{})) c_.push_back(c);
  }
  explicit Poly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly monomial(const R& c, int k) {
    std::vector<R> v(static_cast<size_t>(k) + 1, R{});
    v[k] = c;
    return Poly(std::move(v));
  }
  static Poly x() { return monomial(ring_one<R>(), 1); }
  /// Coefficients from the highest degree down.
  static Poly from_desc(std::vector<R> coeffs) {
    std::reverse(coeffs.begin(), coeffs.end());
    return Poly(std::move(coeffs));
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  R coeff(int k) const { return (k < 0 || k > degree()) ? R{} : c_[k]; }
  R lead() const { return is_zero() ? R{} : c_.back(); }
  bool is_monic() const { return !is_zero() && c_.back() == ring_one<R>(); }
  const std::vector<R>& coeffs() const { return c_; }

  friend Poly operator+(const Poly& x, const Poly& y) {
    std::vector<R> out(std::max(x.c_.size(), y.c_.size()), R{});
    for (size_t i = 0; i < out.size(); ++i) {
      if (i < x.c_.size()) out[i] = out[i] + x.c_[i];
      if (i < y.c_.size()) out[i] = out[i] + y.c_[i];
    }
    return Poly(std::move(out));
  }
  friend Poly operator-(const Poly& x) {
    Poly r = x;
    for (auto& c : r.c_) c = R{} - c;
    return r;
  }
  friend Poly operator-(const Poly& x, const Poly& y) { return x + (-y); }
  friend Poly operator*(const Poly& x, const Poly& y) {
    if (x.is_zero() || y.is_zero()) return {};
    std::vector<R> out(x.c_.size() + y.c_.size() - 1, R{});
    for (size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i] == R{}) continue;
      for (size_t j = 0; j < y.c_.size(); ++j) out[i + j] = out[i + j] + x.c_[i] * y.c_[j];
    }
    return Poly(std::move(out));
  }
  Poly& operator+=(const Poly& y) { return *this = *this + y; }
  Poly& operator-=(const Poly& y) { return *this = *this - y; }
  Poly& operator*=(const Poly& y) { return *this = *this * y; }
  friend bool operator==(const Poly& x, const Poly& y) { return x.c_ == y.c_; }

  Poly pow(unsigned n) const {
    Poly r(ring_one<R>()), b = *this;
    while (n) {
      if (n & 1) r *= b;
      b *= b;
      n >>= 1;
    }
    return r;
  }

  /// Horner evaluation in any ring S that R embeds into via `embed`.
  template <class S, class Embed>
  S eval(const S& x, Embed embed) const {
    S acc{};
    for (int k = degree(); k >= 0; --k) acc = acc * x + embed(c_[k]);
    return acc;
  }
  R eval(const R& x) const {
    return eval(x, [](const R& c) { return c; });
  }

  /// Coefficientwise image under a ring map.
  template <class F>
  auto map(F f) const -> Poly<decltype(f(std::declval<R>()))> {
    using S = decltype(f(std::declval<R>()));
    std::vector<S> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(f(c));
    return Poly<S>(std::move(out));
  }

  /// Division with remainder by a monic divisor; exact over any commutative ring.
  std::pair<Poly, Poly> divmod_monic(const Poly& d) const {
    if (!d.is_monic()) throw NonUnit("polynomial divisor is not monic");
    std::vector<R> rem = c_;
    int dd = d.degree();
    int qd = degree() - dd;
    if (qd < 0) return {Poly(), *this};
    std::vector<R> quo(static_cast<size_t>(qd) + 1, R{});
    for (int k = degree(); k >= dd; --k) {
      R c = rem[k];
      if (c == R{}) continue;
      quo[k - dd] = c;
      for (int j = 0; j <= dd; ++j) rem[k - dd + j] = rem[k - dd + j] - c * d.c_[j];
    }
    rem.resize(static_cast<size_t>(dd));
    return {Poly(std::move(quo)), Poly(std::move(rem))};
  }

  std::string to_string(const std::string& var = "z") const {
    return to_string(var, [](const R& c) { return to_text(c); });
  }
  /// Printer with a custom coefficient formatter.
  template <class Fmt>
  std::string to_string(const std::string& var, Fmt fmt) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      if (c_[k] == R{}) continue;
      std::string c = fmt(c_[k]);
      bool neg = !c.empty() && c[0] == '-' && !detail::needs_parens(c);
      if (neg) c = c.substr(1);
      if (!first) os << (neg ? " - " : " + ");
      else if (neg) os << '-';
      first = false;
      std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
      if (k == 0)
        os << (degree() > 0 && detail::needs_parens(c) ? "(" + c + ")" : c);
      else if (c == "1")
        os << mono;
      else
        os << (detail::needs_parens(c) ? "(" + c + ")" : c) << '*' << mono;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == R{}) c_.pop_back();
  }
  std::vector<R> c_;
};

template <class R>
std::string to_text(const Poly<R>& p) {
  return p.to_string("z");
}

template <class R>
std::ostream& operator<<(std::ostream& os, const Poly<R>& p) {
  return os << p.to_string();
}

/// Square matrix over a commutative ring, row-major.
template <class R>
using Matrix = std::vector<std::vector<R>>;

/// Characteristic polynomial det(z I - A) by Berkowitz's division-free
/// algorithm; valid over any commutative ring.
template <class R>
Poly<R> berkowitz_charpoly(const Matrix<R>& a) {
  const size_t n = a.size();
  // v holds the coefficients (highest first) of the charpoly of the leading r x r block.
  std::vector<R> v{ring_one<R>()};
  for (size_t r = 0; r < n; ++r) {
    // Toeplitz column built from A_rr, R = row r, C = column r, M = leading block.
    std::vector<R> col;  // length r + 2
    col.push_back(ring_one<R>());
    col.push_back(R{} - a[r][r]);
    std::vector<R> cv(r);  // M^k C
    for (size_t i = 0; i < r; ++i) cv[i] = a[i][r];
    for (size_t k = 0; k < r; ++k) {
      R s{};
      for (size_t i = 0; i < r; ++i) s = s + a[r][i] * cv[i];
      col.push_back(R{} - s);
      std::vector<R> next(r, R{});
      for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) next[i] = next[i] + a[i][j] * cv[j];
      cv = std::move(next);
    }
    std::vector<R> w(r + 2, R{});
    for (size_t i = 0; i < r + 2; ++i)
      for (size_t j = 0; j <= i && j < v.size(); ++j) w[i] = w[i] + col[i - j] * v[j];
    v = std::move(w);
  }
  return Poly<R>::from_desc(std::move(v));
}

/// Determinant via the constant term of the Berkowitz characteristic polynomial.
template <class R>
R berkowitz_det(const Matrix<R>& a) {
  R c = berkowitz_charpoly(a).coeff(0);
  return a.size() % 2 == 0 ? c : R{} - c;
}

}  // namespace hecke

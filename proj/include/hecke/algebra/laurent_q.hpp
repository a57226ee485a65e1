#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hecke/error.hpp"

namespace hecke {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("int64 addition");
  return r;
}
inline int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("int64 multiplication");
  return r;
}

}  // namespace detail

/// Laurent polynomial in the formal variable q with integer coefficients,
/// i.e. an element of Z[q, q^-1]. Stored densely from the lowest exponent;
/// the zero polynomial has no coefficients.
class LaurentQ {
 public:
  LaurentQ() = default;
  LaurentQ(int64_t c) {  // NOLINT(google-explicit-constructor): integers embed.
    if (c != 0) c_ = {c};
  }

  /// The monomial c*q^k.
  static LaurentQ monomial(int64_t c, int k) {
    LaurentQ r(c);
    r.lo_ = c ? k : 0;
    return r;
  }
  static LaurentQ q() { return monomial(1, 1); }
  static LaurentQ q_pow(int k) { return monomial(1, k); }
  /// Coefficients of q^lo, q^(lo+1), ...
  static LaurentQ from_coeffs(int lo, std::vector<int64_t> coeffs) {
    LaurentQ r;
    r.lo_ = lo;
    r.c_ = std::move(coeffs);
    r.normalize();
    return r;
  }
  /// Polynomial from coefficients listed from the highest degree down, e.g.
  /// {1, 0, -1} is q^2 - 1.
  static LaurentQ poly_desc(std::initializer_list<int64_t> coeffs) {
    std::vector<int64_t> c(coeffs.begin(), coeffs.end());
    std::reverse(c.begin(), c.end());
    return from_coeffs(0, std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// Lowest exponent with nonzero coefficient (0 for zero).
  int low() const { return lo_; }
  /// Highest exponent with nonzero coefficient (0 for zero).
  int high() const { return is_zero() ? 0 : lo_ + static_cast<int>(c_.size()) - 1; }
  int64_t coeff(int k) const {
    if (k < lo_ || k > high() || is_zero()) return 0;
    return c_[k - lo_];
  }
  /// Exponent/coefficient pairs in increasing exponent order.
  std::vector<std::pair<int, int64_t>> terms() const {
    std::vector<std::pair<int, int64_t>> t;
    for (size_t i = 0; i < c_.size(); ++i)
      if (c_[i]) t.emplace_back(lo_ + static_cast<int>(i), c_[i]);
    return t;
  }
  bool is_polynomial() const { return is_zero() || lo_ >= 0; }

  friend LaurentQ operator+(const LaurentQ& x, const LaurentQ& y) { return x.combine(y, 1); }
  friend LaurentQ operator-(const LaurentQ& x, const LaurentQ& y) { return x.combine(y, -1); }
  friend LaurentQ operator-(const LaurentQ& x) {
    LaurentQ r = x;
    for (auto& c : r.c_) c = detail::checked_mul(c, -1);
    return r;
  }
  friend LaurentQ operator*(const LaurentQ& x, const LaurentQ& y) {
    if (x.is_zero() || y.is_zero()) return {};
    std::vector<int64_t> out(x.c_.size() + y.c_.size() - 1, 0);
    for (size_t i = 0; i < x.c_.size(); ++i) {
      if (!x.c_[i]) continue;
      for (size_t j = 0; j < y.c_.size(); ++j)
        out[i + j] = detail::checked_add(out[i + j], detail::checked_mul(x.c_[i], y.c_[j]));
    }
    return from_coeffs(x.lo_ + y.lo_, std::move(out));
  }
  LaurentQ& operator+=(const LaurentQ& y) { return *this = *this + y; }
  LaurentQ& operator-=(const LaurentQ& y) { return *this = *this - y; }
  LaurentQ& operator*=(const LaurentQ& y) { return *this = *this * y; }
  friend bool operator==(const LaurentQ& x, const LaurentQ& y) { return x.lo_ == y.lo_ && x.c_ == y.c_; }
  friend bool operator<(const LaurentQ& x, const LaurentQ& y) {
    return std::tie(x.lo_, x.c_) < std::tie(y.lo_, y.c_);
  }

  LaurentQ pow(unsigned n) const {
    LaurentQ r(1), b = *this;
    while (n) {
      if (n & 1) r *= b;
      b *= b;
      n >>= 1;
    }
    return r;
  }
  /// Multiplication by q^k.
  LaurentQ shifted(int k) const {
    LaurentQ r = *this;
    if (!r.is_zero()) r.lo_ += k;
    return r;
  }

  /// Substitution q := n. Throws ZeroSubstitution for n = 0 when a negative
  /// exponent is present.
  Rational eval(long long n) const {
    if (n == 0) {
      if (!is_zero() && lo_ < 0) throw ZeroSubstitution("q := 0 in a Laurent polynomial with negative exponents");
      return Rational(coeff(0));
    }
    Rational acc = 0;
    for (int k = high(); k >= std::min(lo_, 0); --k) acc = acc * n + coeff(k);
    if (lo_ < 0) {
      BigInt d = 1;
      for (int i = 0; i < -lo_; ++i) d *= n;
      acc /= Rational(d);
    }
    return acc;
  }
  /// Integer value at q := n; throws if the value is not an integer.
  BigInt eval_integer(long long n) const {
    Rational r = eval(n);
    if (denominator(r) != 1) throw NonIntegralCoefficient("value at q=" + std::to_string(n) + " is not an integer");
    return numerator(r);
  }

  /// Exact division by a divisor whose extreme coefficients are +-1; returns
  /// {quotient, remainder} with the remainder's exponents inside the window
  /// below the divisor's span. Used for divisibility checks such as q(q+1) | f.
  std::pair<LaurentQ, LaurentQ> divmod(const LaurentQ& d) const {
    if (d.is_zero()) throw NonUnit("division by zero Laurent polynomial");
    int64_t lead = d.coeff(d.high());
    if (lead != 1 && lead != -1) throw NonUnit("divisor must have leading coefficient +-1");
    LaurentQ rem = *this, quo;
    while (!rem.is_zero() && rem.high() - rem.low() >= d.high() - d.low() && rem.high() >= d.high() + rem.low() - d.low()) {
      int shift = rem.high() - d.high();
      LaurentQ t = monomial(rem.coeff(rem.high()) * lead, shift);
      quo += t;
      rem -= t * d;
    }
    return {quo, rem};
  }
  bool divisible_by(const LaurentQ& d) const { return divmod(d).second.is_zero(); }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = high(); k >= lo_; --k) {
      int64_t c = coeff(k);
      if (!c) continue;
      int64_t a = c < 0 ? -c : c;
      if (first)
        os << (c < 0 ? "-" : "");
      else
        os << (c < 0 ? " - " : " + ");
      first = false;
      if (k == 0) {
        os << a;
        continue;
      }
      if (a != 1) os << a << '*';
      os << 'q';
      if (k != 1) os << '^' << (k < 0 ? "(" + std::to_string(k) + ")" : std::to_string(k));
    }
    return os.str();
  }

  static LaurentQ random(std::mt19937_64& rng, int lo, int hi, int64_t bound) {
    std::uniform_int_distribution<int64_t> d(-bound, bound);
    std::vector<int64_t> c(static_cast<size_t>(hi - lo + 1));
    for (auto& x : c) x = d(rng);
    return from_coeffs(lo, std::move(c));
  }

 private:
  LaurentQ combine(const LaurentQ& y, int64_t sign) const {
    if (y.is_zero()) return *this;
    if (is_zero()) return sign > 0 ? y : -y;
    int lo = std::min(lo_, y.lo_), hi = std::max(high(), y.high());
    std::vector<int64_t> out(static_cast<size_t>(hi - lo + 1), 0);
    for (int k = lo; k <= hi; ++k) out[k - lo] = detail::checked_add(coeff(k), detail::checked_mul(sign, y.coeff(k)));
    return from_coeffs(lo, std::move(out));
  }
  void normalize() {
    size_t a = 0;
    while (a < c_.size() && c_[a] == 0) ++a;
    if (a == c_.size()) {
      c_.clear();
      lo_ = 0;
      return;
    }
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(a));
    lo_ += static_cast<int>(a);
    while (c_.back() == 0) c_.pop_back();
  }

  int lo_ = 0;
  std::vector<int64_t> c_;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentQ& x) { return os << x.to_string(); }

/// Free-function form of substitution q := n.
inline Rational laurentq_eval(const LaurentQ& f, long long n) { return f.eval(n); }

}  // namespace hecke

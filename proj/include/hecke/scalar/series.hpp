#pragma once

#include <algorithm>
#include <climits>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "hecke/error.hpp"
#include "hecke/scalar/finite_field.hpp"

namespace hecke {

/// Element of F_{q^2}[t]/(t^m): the model of O_k / w^m with t the uniformizer.
/// Arithmetic between operands of different precision happens on the common
/// (smaller) precision; precision never widens.
class TruncatedSeries {
 public:
  TruncatedSeries(const Fq2Field& field, int precision)
      : field_(&field), c_(static_cast<size_t>(precision), field.zero()) {
    if (precision < 1) throw UsageError("series precision must be >= 1");
  }
  TruncatedSeries(const Fq2Field& field, std::vector<Fq2Elem> coeffs) : field_(&field), c_(std::move(coeffs)) {
    if (c_.empty()) throw UsageError("series precision must be >= 1");
  }

  static TruncatedSeries constant(const Fq2Elem& c, int precision) {
    TruncatedSeries s(*c.field, precision);
    s.c_[0] = c;
    return s;
  }
  static TruncatedSeries one(const Fq2Field& f, int precision) { return constant(f.one(), precision); }
  /// c * t^k mod t^precision.
  static TruncatedSeries monomial(const Fq2Elem& c, int k, int precision) {
    TruncatedSeries s(*c.field, precision);
    if (k < precision) s.c_[k] = c;
    return s;
  }
  static TruncatedSeries random(const Fq2Field& f, int precision, std::mt19937_64& rng) {
    TruncatedSeries s(f, precision);
    for (auto& x : s.c_) x = f.random(rng);
    return s;
  }

  const Fq2Field& field() const { return *field_; }
  int precision() const { return static_cast<int>(c_.size()); }
  const std::vector<Fq2Elem>& coeffs() const { return c_; }

  const Fq2Elem& operator[](int i) const {
    if (i < 0 || i >= precision())
      throw InsufficientPrecision("coefficient t^" + std::to_string(i) + " outside precision " +
                                  std::to_string(precision()));
    return c_[i];
  }
  void set(int i, const Fq2Elem& x) {
    if (i < 0 || i >= precision()) throw InsufficientPrecision("write outside precision");
    c_[i] = x;
  }

  /// Index of the first nonzero coefficient; precision() for zero ("at least m").
  int valuation() const {
    for (int i = 0; i < precision(); ++i)
      if (!c_[i].is_zero()) return i;
    return precision();
  }
  bool is_zero() const { return valuation() == precision(); }
  bool is_unit() const { return !c_[0].is_zero(); }

  TruncatedSeries truncate(int m) const {
    if (m > precision()) throw InsufficientPrecision("cannot widen precision");
    return TruncatedSeries(*field_, std::vector<Fq2Elem>(c_.begin(), c_.begin() + m));
  }

  TruncatedSeries conj() const {
    TruncatedSeries r = *this;
    for (auto& x : r.c_) x = field_->conj(x);
    return r;
  }

  friend TruncatedSeries operator+(const TruncatedSeries& x, const TruncatedSeries& y) {
    int m = std::min(x.precision(), y.precision());
    TruncatedSeries r(*x.field_, m);
    for (int i = 0; i < m; ++i) r.c_[i] = x.c_[i] + y.c_[i];
    return r;
  }
  friend TruncatedSeries operator-(const TruncatedSeries& x, const TruncatedSeries& y) {
    int m = std::min(x.precision(), y.precision());
    TruncatedSeries r(*x.field_, m);
    for (int i = 0; i < m; ++i) r.c_[i] = x.c_[i] - y.c_[i];
    return r;
  }
  friend TruncatedSeries operator-(const TruncatedSeries& x) {
    TruncatedSeries r = x;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend TruncatedSeries operator*(const TruncatedSeries& x, const TruncatedSeries& y) {
    int m = std::min(x.precision(), y.precision());
    TruncatedSeries r(*x.field_, m);
    for (int i = 0; i < m; ++i) {
      if (x.c_[i].is_zero()) continue;
      for (int j = 0; i + j < m; ++j) r.c_[i + j] += x.c_[i] * y.c_[j];
    }
    return r;
  }
  friend TruncatedSeries operator*(const Fq2Elem& s, const TruncatedSeries& x) {
    TruncatedSeries r = x;
    for (auto& c : r.c_) c = s * c;
    return r;
  }
  TruncatedSeries& operator+=(const TruncatedSeries& y) { return *this = *this + y; }
  TruncatedSeries& operator-=(const TruncatedSeries& y) { return *this = *this - y; }
  TruncatedSeries& operator*=(const TruncatedSeries& y) { return *this = *this * y; }

  /// Multiplicative inverse; requires valuation 0.
  TruncatedSeries inverse() const {
    if (!is_unit()) throw NonUnit("series of positive valuation is not invertible");
    const int m = precision();
    TruncatedSeries r(*field_, m);
    Fq2Elem a0_inv = field_->inv(c_[0]);
    r.c_[0] = a0_inv;
    for (int k = 1; k < m; ++k) {
      Fq2Elem acc = field_->zero();
      for (int j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
      r.c_[k] = -(acc * a0_inv);
    }
    return r;
  }

  /// Equality on the common precision window (the smaller of the two).
  friend bool operator==(const TruncatedSeries& x, const TruncatedSeries& y) {
    int m = std::min(x.precision(), y.precision());
    for (int i = 0; i < m; ++i)
      if (!(x.c_[i] == y.c_[i])) return false;
    return true;
  }
  /// Lexicographic order on coefficients; used for canonical sets.
  friend bool operator<(const TruncatedSeries& x, const TruncatedSeries& y) {
    return std::lexicographical_compare(x.c_.begin(), x.c_.end(), y.c_.begin(), y.c_.end(),
                                        [](const Fq2Elem& u, const Fq2Elem& v) { return u < v; });
  }

  /// Dense integer key (coefficient indices base q^2); unique per precision.
  unsigned long long key() const {
    unsigned long long k = 0;
    for (int i = precision() - 1; i >= 0; --i) k = k * field_->size() + field_->index(c_[i]);
    return k;
  }

 private:
  const Fq2Field* field_;
  std::vector<Fq2Elem> c_;
};

inline std::ostream& operator<<(std::ostream& os, const TruncatedSeries& s) {
  os << '[';
  for (int i = 0; i < s.precision(); ++i) os << (i ? " " : "") << s[i];
  return os << " + O(t^" << s.precision() << ")]";
}

/// Laurent series over F_{q^2} with a tracked precision window: the value is
/// sum_{k >= floor} c_k t^k + O(t^precision). Exact values have no error term.
/// Reads outside [floor, precision) throw instead of returning a silent zero.
class BoundedLaurent {
 public:
  static constexpr int kExact = INT_MAX / 4;

  /// The value 0 + O(t^precision).
  BoundedLaurent(const Fq2Field& field, int precision) : field_(&field), floor_(precision), prec_(precision) {}

  /// sum coeffs[i] t^(floor+i) + O(t^(floor+coeffs.size())).
  BoundedLaurent(const Fq2Field& field, int floor, std::vector<Fq2Elem> coeffs)
      : field_(&field), floor_(floor), prec_(floor + static_cast<int>(coeffs.size())), c_(std::move(coeffs)) {}

  /// Exact c * t^k.
  static BoundedLaurent monomial(const Fq2Elem& c, int k) {
    BoundedLaurent r(*c.field, k, {c});
    r.prec_ = kExact;
    r.normalize();
    return r;
  }
  static BoundedLaurent exact_zero(const Fq2Field& f) {
    BoundedLaurent r(f, 0, {});
    r.prec_ = kExact;
    return r;
  }
  static BoundedLaurent exact(const Fq2Elem& c) { return monomial(c, 0); }
  /// Embeds an element of F_{q^2}[t]/(t^m): integral with precision m.
  static BoundedLaurent from_series(const TruncatedSeries& s) {
    return BoundedLaurent(s.field(), 0, s.coeffs());
  }
  /// Exact Laurent polynomial from coefficients starting at t^floor.
  static BoundedLaurent exact_poly(const Fq2Field& f, int floor, std::vector<Fq2Elem> coeffs) {
    BoundedLaurent r(f, floor, std::move(coeffs));
    r.prec_ = kExact;
    r.normalize();
    return r;
  }

  const Fq2Field& field() const { return *field_; }
  bool is_exact() const { return prec_ >= kExact; }
  int floor() const { return floor_; }
  /// Absolute precision: the value is known modulo t^precision().
  int precision() const { return prec_; }
  /// One past the highest stored exponent.
  int stored_end() const { return floor_ + static_cast<int>(c_.size()); }

  /// Coefficient of t^k; throws InsufficientPrecision outside the window.
  Fq2Elem coeff(int k) const {
    if (k < floor_ || k >= prec_)
      throw InsufficientPrecision("read of t^" + std::to_string(k) + " outside window [" + std::to_string(floor_) +
                                  ", " + (is_exact() ? std::string("inf") : std::to_string(prec_)) + ")");
    return at(k);
  }

  /// First nonzero exponent; precision() when every known coefficient is zero.
  int valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return floor_ + static_cast<int>(i);
    return prec_;
  }
  /// True when a nonzero coefficient is visible, so the valuation is certified.
  bool valuation_certified() const { return valuation() < prec_; }
  bool known_zero() const { return is_exact() && valuation() >= kExact; }
  /// Every coefficient below t^0 is known and vanishes.
  bool certified_integral() const {
    if (prec_ < 0) return false;
    for (int k = floor_; k < 0; ++k)
      if (!at(k).is_zero()) return false;
    return true;
  }
  /// Some known coefficient below t^0 is nonzero.
  bool certified_nonintegral() const {
    for (int k = floor_; k < std::min(0, prec_); ++k)
      if (!at(k).is_zero()) return true;
    return false;
  }

  BoundedLaurent conj() const {
    BoundedLaurent r = *this;
    for (auto& x : r.c_) x = field_->conj(x);
    return r;
  }
  /// Multiplication by t^k (exact shift of the window).
  BoundedLaurent shifted(int k) const {
    BoundedLaurent r = *this;
    r.floor_ += k;
    if (!is_exact()) r.prec_ += k;
    return r;
  }
  /// Drops precision to min(precision, p).
  BoundedLaurent truncated(int p) const {
    if (p >= prec_) return *this;
    BoundedLaurent r(*field_, p);
    if (floor_ < p) {
      r.floor_ = floor_;
      r.c_.assign(static_cast<size_t>(p - floor_), field_->zero());
      for (int k = floor_; k < p; ++k) r.c_[k - floor_] = at(k);
    }
    return r;
  }

  friend BoundedLaurent operator+(const BoundedLaurent& x, const BoundedLaurent& y) {
    return combine(x, y, false);
  }
  friend BoundedLaurent operator-(const BoundedLaurent& x, const BoundedLaurent& y) {
    return combine(x, y, true);
  }
  friend BoundedLaurent operator-(const BoundedLaurent& x) {
    BoundedLaurent r = x;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend BoundedLaurent operator*(const BoundedLaurent& x, const BoundedLaurent& y) {
    const Fq2Field& f = *x.field_;
    int vx = x.valuation(), vy = y.valuation();
    if (x.known_zero() || y.known_zero()) return exact_zero(f);
    // Worst-case precision of the product.
    long long p = kExact;
    if (!x.is_exact()) p = std::min<long long>(p, static_cast<long long>(x.prec_) + std::min(vy, kExact));
    if (!y.is_exact()) p = std::min<long long>(p, static_cast<long long>(y.prec_) + std::min(vx, kExact));
    int prec = static_cast<int>(std::min<long long>(p, kExact));
    int fl = x.floor_ + y.floor_;
    if (prec < kExact) {
      fl = std::min(fl, prec);
      std::vector<Fq2Elem> out(static_cast<size_t>(prec - fl), f.zero());
      for (size_t i = 0; i < x.c_.size(); ++i) {
        if (x.c_[i].is_zero()) continue;
        int ki = x.floor_ + static_cast<int>(i);
        for (size_t j = 0; j < y.c_.size(); ++j) {
          int k = ki + y.floor_ + static_cast<int>(j);
          if (k >= prec) break;
          out[k - fl] += x.c_[i] * y.c_[j];
        }
      }
      return BoundedLaurent(f, fl, std::move(out));
    }
    std::vector<Fq2Elem> out(x.c_.size() + y.c_.size(), f.zero());
    for (size_t i = 0; i < x.c_.size(); ++i)
      for (size_t j = 0; j < y.c_.size(); ++j) out[i + j] += x.c_[i] * y.c_[j];
    return exact_poly(f, fl, std::move(out));
  }
  friend BoundedLaurent operator*(const Fq2Elem& s, const BoundedLaurent& x) {
    BoundedLaurent r = x;
    for (auto& c : r.c_) c = s * c;
    return r;
  }
  BoundedLaurent& operator+=(const BoundedLaurent& y) { return *this = *this + y; }
  BoundedLaurent& operator-=(const BoundedLaurent& y) { return *this = *this - y; }
  BoundedLaurent& operator*=(const BoundedLaurent& y) { return *this = *this * y; }

  /// Inverse in F_{q^2}((t)); keeps the relative precision.
  BoundedLaurent inverse() const {
    if (!valuation_certified()) throw InsufficientPrecision("cannot certify a nonzero leading term to invert");
    const Fq2Field& f = *field_;
    int v = valuation();
    std::vector<Fq2Elem> u;  // unit part u_0 + u_1 t + ...
    for (size_t i = static_cast<size_t>(v - floor_); i < c_.size(); ++i) u.push_back(c_[i]);
    if (is_exact()) {
      // Exact inverse exists only for monomials.
      bool monomial = true;
      for (size_t i = 1; i < u.size(); ++i)
        if (!u[i].is_zero()) monomial = false;
      if (monomial) return monomial_of(f.inv(u[0]), -v);
      throw InsufficientPrecision("inverse of an exact non-monomial needs a precision window");
    }
    int rel = prec_ - v;
    std::vector<Fq2Elem> w(static_cast<size_t>(rel), f.zero());
    Fq2Elem u0_inv = f.inv(u[0]);
    w[0] = u0_inv;
    for (int k = 1; k < rel; ++k) {
      Fq2Elem acc = f.zero();
      for (int j = 1; j <= k; ++j) acc += u[j] * w[k - j];
      w[k] = -(acc * u0_inv);
    }
    return BoundedLaurent(f, -v, std::move(w));
  }

  /// Inverse of an exact value, computed to the given absolute precision.
  BoundedLaurent inverse_to(int precision) const {
    if (!is_exact()) return inverse();
    int v = valuation();
    if (v >= kExact) throw NonUnit("inverse of exact zero");
    BoundedLaurent approx = truncated(std::max(v + 1, precision + 2 * v));
    return approx.inverse();
  }

  /// Equality on the common window; exact zero differences compare equal.
  friend bool operator==(const BoundedLaurent& x, const BoundedLaurent& y) {
    BoundedLaurent d = x - y;
    for (auto& c : d.c_)
      if (!c.is_zero()) return false;
    return true;
  }

  /// Coefficient read without window checks: zero below the floor and beyond
  /// the stored range of an exact value. Only valid for k < precision().
  Fq2Elem at(int k) const {
    if (k < floor_) return field_->zero();
    size_t i = static_cast<size_t>(k - floor_);
    if (i < c_.size()) return c_[i];
    if (is_exact()) return field_->zero();
    throw InsufficientPrecision("read beyond precision t^" + std::to_string(prec_));
  }

 private:
  static BoundedLaurent monomial_of(const Fq2Elem& c, int k) { return monomial(c, k); }

  void normalize() {
    if (!is_exact()) return;
    size_t lead = 0;
    while (lead < c_.size() && c_[lead].is_zero()) ++lead;
    if (lead == c_.size()) {
      c_.clear();
      floor_ = 0;
      return;
    }
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    floor_ += static_cast<int>(lead);
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  static BoundedLaurent combine(const BoundedLaurent& x, const BoundedLaurent& y, bool subtract) {
    const Fq2Field& f = *x.field_;
    int prec = std::min(x.prec_, y.prec_);
    int fl = std::min(x.floor_, y.floor_);
    if (prec < kExact) {
      fl = std::min(fl, prec);
      std::vector<Fq2Elem> out(static_cast<size_t>(prec - fl), f.zero());
      for (int k = fl; k < prec; ++k) {
        Fq2Elem a = x.at(k), b = y.at(k);
        out[k - fl] = subtract ? a - b : a + b;
      }
      return BoundedLaurent(f, fl, std::move(out));
    }
    int hi = std::max(x.floor_ + static_cast<int>(x.c_.size()), y.floor_ + static_cast<int>(y.c_.size()));
    if (hi < fl) hi = fl;
    std::vector<Fq2Elem> out(static_cast<size_t>(hi - fl), f.zero());
    for (int k = fl; k < hi; ++k) {
      Fq2Elem a = x.at(k), b = y.at(k);
      out[k - fl] = subtract ? a - b : a + b;
    }
    return exact_poly(f, fl, std::move(out));
  }

  const Fq2Field* field_;
  int floor_;
  int prec_;
  std::vector<Fq2Elem> c_;
};

inline std::ostream& operator<<(std::ostream& os, const BoundedLaurent& x) {
  os << '[';
  bool any = false;
  int hi = x.is_exact() ? x.stored_end() : x.precision();
  for (int k = x.floor(); k < hi; ++k) {
    Fq2Elem c = x.at(k);
    if (c.is_zero()) continue;
    os << (any ? " + " : "") << c << "t^" << k;
    any = true;
  }
  if (!any) os << '0';
  if (!x.is_exact()) os << " + O(t^" << x.precision() << ")";
  return os << ']';
}

}  // namespace hecke

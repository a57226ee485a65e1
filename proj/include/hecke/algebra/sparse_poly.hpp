#pragma once

#include <array>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "hecke/algebra/poly.hpp"

namespace hecke {

/// Sparse Laurent polynomial in N commuting unknowns over a commutative ring
/// R. Exponents may be negative; zero coefficients are never stored.
template <class R, size_t N>
class SparsePoly {
 public:
  using Exponent = std::array<int, N>;

  SparsePoly() = default;
  SparsePoly(const R& c) {  // NOLINT: constants embed
    if (!(c == R{})) t_[Exponent{}] = c;
  }

  static SparsePoly monomial(const R& c, const Exponent& e) {
    SparsePoly r;
    if (!(c == R{})) r.t_[e] = c;
    return r;
  }
  /// The i-th unknown raised to the power k.
  static SparsePoly var(size_t i, int k = 1) {
    Exponent e{};
    e[i] = k;
    return monomial(R(1), e);
  }

  bool is_zero() const { return t_.empty(); }
  const std::map<Exponent, R>& terms() const { return t_; }
  R coeff(const Exponent& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? R{} : it->second;
  }
  /// Largest / smallest exponent of unknown i among the terms (0 when zero).
  int max_degree(size_t i) const {
    int d = 0;
    bool first = true;
    for (const auto& [e, c] : t_) d = first ? (first = false, e[i]) : std::max(d, e[i]);
    return d;
  }
  int min_degree(size_t i) const {
    int d = 0;
    bool first = true;
    for (const auto& [e, c] : t_) d = first ? (first = false, e[i]) : std::min(d, e[i]);
    return d;
  }

  friend SparsePoly operator+(SparsePoly x, const SparsePoly& y) {
    for (const auto& [e, c] : y.t_) x.add_term(e, c);
    return x;
  }
  friend SparsePoly operator-(const SparsePoly& x) {
    SparsePoly r;
    for (const auto& [e, c] : x.t_) r.t_[e] = R{} - c;
    return r;
  }
  friend SparsePoly operator-(const SparsePoly& x, const SparsePoly& y) { return x + (-y); }
  friend SparsePoly operator*(const SparsePoly& x, const SparsePoly& y) {
    SparsePoly r;
    for (const auto& [ex, cx] : x.t_)
      for (const auto& [ey, cy] : y.t_) {
        Exponent e;
        for (size_t i = 0; i < N; ++i) e[i] = ex[i] + ey[i];
        r.add_term(e, cx * cy);
      }
    return r;
  }
  SparsePoly& operator+=(const SparsePoly& y) { return *this = *this + y; }
  SparsePoly& operator-=(const SparsePoly& y) { return *this = *this - y; }
  SparsePoly& operator*=(const SparsePoly& y) { return *this = *this * y; }
  friend bool operator==(const SparsePoly& x, const SparsePoly& y) { return x.t_ == y.t_; }

  SparsePoly pow(unsigned n) const {
    SparsePoly r(R(1)), b = *this;
    while (n) {
      if (n & 1) r *= b;
      b *= b;
      n >>= 1;
    }
    return r;
  }

  /// Substitution x_i -> x_i^{-1}.
  SparsePoly invert_var(size_t i) const {
    SparsePoly r;
    for (const auto& [e0, c] : t_) {
      auto e = e0;
      e[i] = -e[i];
      r.t_[e] = c;
    }
    return r;
  }

  /// Coefficientwise ring map.
  template <class F>
  auto map(F f) const -> SparsePoly<decltype(f(std::declval<R>())), N> {
    SparsePoly<decltype(f(std::declval<R>())), N> r;
    for (const auto& [e, c] : t_) r += decltype(r)::monomial(f(c), e);
    return r;
  }

  /// Evaluation at values in a ring S (nonnegative exponents only); R embeds
  /// into S via `embed`.
  template <class S, class Embed>
  S substitute(const std::array<S, N>& values, Embed embed) const {
    S acc{};
    for (const auto& [e, c] : t_) {
      S m = embed(c);
      for (size_t i = 0; i < N; ++i) {
        if (e[i] < 0) throw UsageError("substitution of a negative power");
        for (int k = 0; k < e[i]; ++k) m = m * values[i];
      }
      acc = acc + m;
    }
    return acc;
  }

  std::string to_string(const std::array<std::string, N>& names) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest total degree first for readability.
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      const auto& [e, c0] = *it;
      std::string c = to_text(c0);
      bool neg = !c.empty() && c[0] == '-' && !detail::needs_parens(c);
      if (neg) c = c.substr(1);
      if (!first) os << (neg ? " - " : " + ");
      else if (neg) os << '-';
      first = false;
      std::string mono;
      for (size_t i = 0; i < N; ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += '*';
        mono += names[i];
        if (e[i] != 1) mono += "^" + (e[i] < 0 ? "(" + std::to_string(e[i]) + ")" : std::to_string(e[i]));
      }
      if (mono.empty())
        os << (t_.size() > 1 && detail::needs_parens(c) ? "(" + c + ")" : c);
      else if (c == "1")
        os << mono;
      else
        os << (detail::needs_parens(c) ? "(" + c + ")" : c) << '*' << mono;
    }
    return os.str();
  }

 private:
  void add_term(const Exponent& e, const R& c) {
    if (c == R{}) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
      t_.emplace(e, c);
      return;
    }
    it->second = it->second + c;
    if (it->second == R{}) t_.erase(it);
  }
  std::map<Exponent, R> t_;
};

template <class R, size_t N>
std::string to_text(const SparsePoly<R, N>& p) {
  std::array<std::string, N> names;
  for (size_t i = 0; i < N; ++i) names[i] = "x" + std::to_string(i + 1);
  return p.to_string(names);
}
template <class R, size_t N>
std::ostream& operator<<(std::ostream& os, const SparsePoly<R, N>& p) {
  return os << to_text(p);
}

}  // namespace hecke

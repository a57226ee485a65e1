#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hecke/building/tree.hpp"
#include "hecke/satake/hecke_poly.hpp"

namespace hecke {

/// Finite formal combination of invariants with LaurentQ coefficients.
/// Zero coefficients are never stored.
class InvariantVector {
 public:
  InvariantVector() = default;
  explicit InvariantVector(Invariant x, LaurentQ c = 1) { add(x, c); }

  void add(Invariant x, const LaurentQ& c) {
    if (c.is_zero()) return;
    auto it = t_.find(x);
    if (it == t_.end()) {
      t_.emplace(x, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }

  const std::map<Invariant, LaurentQ>& terms() const { return t_; }
  LaurentQ coeff(Invariant x) const {
    auto it = t_.find(x);
    return it == t_.end() ? LaurentQ() : it->second;
  }
  bool is_zero() const { return t_.empty(); }
  LaurentQ coefficient_sum() const {
    LaurentQ s;
    for (const auto& [x, c] : t_) s += c;
    return s;
  }

  friend InvariantVector operator+(InvariantVector x, const InvariantVector& y) {
    for (const auto& [k, c] : y.t_) x.add(k, c);
    return x;
  }
  friend InvariantVector operator-(InvariantVector x, const InvariantVector& y) {
    for (const auto& [k, c] : y.t_) x.add(k, -c);
    return x;
  }
  friend InvariantVector operator*(const LaurentQ& s, const InvariantVector& x) {
    InvariantVector r;
    for (const auto& [k, c] : x.t_) r.add(k, s * c);
    return r;
  }
  InvariantVector& operator+=(const InvariantVector& y) { return *this = *this + y; }
  friend bool operator==(const InvariantVector&, const InvariantVector&) = default;

  /// Values at a numeric q; every coefficient must be integral there.
  std::map<Invariant, BigInt> at(long long q) const {
    std::map<Invariant, BigInt> out;
    for (const auto& [k, c] : t_) {
      BigInt v = c.eval_integer(q);
      if (v != 0) out[k] = v;
    }
    return out;
  }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : t_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")*(" + std::to_string(k.a) + "," + std::to_string(k.b) + ")";
    }
    return s;
  }

 private:
  std::map<Invariant, LaurentQ> t_;
};

inline std::ostream& operator<<(std::ostream& os, const InvariantVector& v) { return os << v.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const Invariant& x) { return os << "(" << x.a << "," << x.b << ")"; }

// ---- the two generators on invariants ----

inline InvariantVector apply_t10(const InvariantVector& v) {
  const LaurentQ q = LaurentQ::q(), q1 = q - 1;
  InvariantVector r;
  for (const auto& [x, c] : v.terms()) {
    auto [a, b] = x;
    if (a > 0) {
      r.add({a - 1, b}, c);
      r.add({a, b}, c * q1);
      r.add({a + 1, b}, c * LaurentQ::q_pow(4));
    } else if (b > 0) {
      r.add({1, b}, c * (q * q * q - q) * q);
      r.add({0, b + 1}, c * q * q);
      r.add({0, b}, c * q1);
      r.add({0, b - 1}, c);
    } else {
      r.add({1, 0}, c * (q * q * q - q) * q);
      r.add({0, 1}, c * q * (q + 1));
    }
  }
  return r;
}

inline InvariantVector apply_t01(const InvariantVector& v) {
  const LaurentQ q = LaurentQ::q();
  InvariantVector r;
  for (const auto& [x, c] : v.terms()) {
    auto [a, b] = x;
    if (b == 0) {
      r.add({a, 1}, c * q * (q + 1));
    } else {
      r.add({a, b - 1}, c);
      r.add({a, b}, c * (q - 1));
      r.add({a, b + 1}, c * q * q);
    }
  }
  return r;
}

inline InvariantVector apply_op(Op o, const InvariantVector& v) { return o == Op::T10 ? apply_t10(v) : apply_t01(v); }

/// Applies the letters of `word` in order, first letter first.
inline InvariantVector apply_word(const std::vector<Op>& word, InvariantVector v) {
  for (Op o : word) v = apply_op(o, v);
  return v;
}

/// Tally of invariants reached by one generator from the (a, b)
/// configuration, by plain enumeration of the unit sphere on the tree.
inline std::map<Invariant, BigInt> brute_force_operator(Op o, int a, int b, int q) {
  TreePair tree(q, a + b + 2);
  auto [xv, xw] = tree.make_configuration(a, b);
  std::map<Invariant, BigInt> out;
  if (o == Op::T10) {
    tree.walk(xv, 2, false, false, {}, [&](const Vertex& y, uint64_t) { out[tree.invariant(y, xw)] += 1; });
  } else {
    tree.walk(xw, 2, true, false, {}, [&](const Vertex& y, uint64_t) { out[tree.invariant(xv, y)] += 1; });
  }
  return out;
}

// ---- operator polynomials ----

/// Polynomial in z with coefficients in Z[q^+-1][t10, t01].
using OperatorPoly = SymbolZPoly;

/// P(z0) applied to v; each monomial t10^i t01^j acts as i applications of
/// t10 followed by j applications of t01.
inline InvariantVector eval_operator_poly(const OperatorPoly& p, const LaurentQ& z0, const InvariantVector& v) {
  InvariantVector out;
  LaurentQ zk = 1;
  for (int k = 0; k <= p.degree(); ++k, zk = zk * z0) {
    const SymbolPoly ck = p.coeff(k);
    for (const auto& [e, c] : ck.terms()) {
      InvariantVector w = v;
      for (int i = 0; i < e[0]; ++i) w = apply_t10(w);
      for (int j = 0; j < e[1]; ++j) w = apply_t01(w);
      out += (c * zk) * w;
    }
  }
  return out;
}

/// The full degree-six Hecke polynomial H2 * H4 in the Hecke generators.
inline OperatorPoly hecke_polynomial_operator() {
  auto f = hecke_polynomial_hecke_basis();
  return f.h2 * f.h4;
}

/// f = d * g with g in Z[q] (no negative powers), f itself in Z[q].
inline bool divisible_in_Zq(const LaurentQ& f, const LaurentQ& d) {
  if (!f.is_polynomial()) return false;
  auto [quo, rem] = f.divmod(d);
  return rem.is_zero() && quo.is_polynomial();
}

// ---- the distribution relation at the base invariant ----

inline const std::vector<Invariant>& distribution_support() {
  static const std::vector<Invariant> s{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}, {0, 2}, {1, 2}, {0, 3}};
  return s;
}

/// The nine coefficients of H(1)(0,0) as customarily printed.
inline std::map<Invariant, LaurentQ> distribution_printed() {
  const LaurentQ q = LaurentQ::q(), qm = q - 1, qp = q + 1;
  auto P = [](std::initializer_list<int64_t> c) { return LaurentQ::poly_desc(c); };
  const LaurentQ a = P({1, 0, 0, 0, -1, 0, 1});  // q^6 - q^2 + 1
  const LaurentQ b = P({1, -1, 1, 0, -1, 1});    // q^5 - q^4 + q^3 - q + 1
  std::map<Invariant, LaurentQ> m;
  m[{0, 1}] = -(qm * q * qp * qp * P({1, -1, 2, 0, -1, 1, -1}) * a);
  m[{1, 2}] = qm * qp * LaurentQ::q_pow(6) * P({1, 1, 1}) * a;
  m[{0, 0}] = qm * q * qp * qp * P({1, -1, 2, -1, -1, 3, -4, 2, 2, -4, 4, -1, -2, 2, -1});
  m[{2, 1}] = -(qm * qp * qp * LaurentQ::q_pow(11));
  m[{1, 1}] = -(qm * qp * LaurentQ::q_pow(3) * P({1, 1, 0, 1, -1, -1, 0, 1, 0, 2, -1, -3, 1, 1}));
  m[{2, 0}] = qm * qp * qp * LaurentQ::q_pow(8) * b;
  m[{1, 0}] = qm * qp * q * q * P({1, -1, 0, 2, -2, 2, 2, -4, 1, 0, -2, 2, 1, -1});
  m[{0, 3}] = qm * qm * qp * qp * qp * LaurentQ::q_pow(7) * (q * q + 1);
  m[{0, 2}] = -(qm * qm * LaurentQ::q_pow(3) * qp * qp * qp * qp * (q * q + 1) * b);
  return m;
}

struct TermDiff {
  Invariant x;
  LaurentQ printed;
  LaurentQ computed;
  bool match;
};

struct DistributionReport {
  InvariantVector value;
  bool support_ok = false;
  bool divisible = false;          // every coefficient in q(q+1) Z[q]
  std::vector<Invariant> not_divisible;
  bool coeff21_ok = false;         // -(q-1)(q+1)^2 q^11
  bool coeff03_ok = false;         // (q-1)^2 (q+1)^3 q^7 (q^2+1)
  std::vector<TermDiff> diffs;     // all nine, matched or not
  bool hard_ok() const { return support_ok && divisible && coeff21_ok && coeff03_ok; }
  int matched() const {
    int n = 0;
    for (const auto& d : diffs) n += d.match;
    return n;
  }
};

inline DistributionReport distribution_check() {
  DistributionReport r;
  r.value = eval_operator_poly(hecke_polynomial_operator(), 1, InvariantVector({0, 0}));
  const auto& supp = distribution_support();
  r.support_ok = true;
  for (const auto& [x, c] : r.value.terms())
    if (std::find(supp.begin(), supp.end(), x) == supp.end()) r.support_ok = false;
  const LaurentQ q = LaurentQ::q();
  const LaurentQ qq1 = q * (q + 1);
  r.divisible = true;
  for (const auto& [x, c] : r.value.terms())
    if (!divisible_in_Zq(c, qq1)) {
      r.divisible = false;
      r.not_divisible.push_back(x);
    }
  auto printed = distribution_printed();
  r.coeff21_ok = r.value.coeff({2, 1}) == printed.at({2, 1});
  r.coeff03_ok = r.value.coeff({0, 3}) == printed.at({0, 3});
  for (const auto& x : supp) {
    LaurentQ comp = r.value.coeff(x), pr = printed.at(x);
    r.diffs.push_back({x, pr, comp, comp == pr});
  }
  return r;
}

/// Index of the level-c unit subgroup: 1 for c = 0, q^(c-1)(q+1) otherwise.
inline LaurentQ unit_index(int c) {
  if (c < 0) throw UsageError("unit index needs c >= 0");
  if (c == 0) return 1;
  return LaurentQ::q_pow(c - 1) * (LaurentQ::q() + 1);
}

}  // namespace hecke

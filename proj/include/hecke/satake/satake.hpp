#pragma once

#include <array>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "hecke/algebra/interpolate.hpp"
#include "hecke/algebra/laurent_q.hpp"
#include "hecke/algebra/poly.hpp"
#include "hecke/algebra/sparse_poly.hpp"
#include "hecke/building/tree.hpp"

namespace hecke {

/// Element of Z[q^+-1][u^+-1, v^+-1]: u is the V-torus character, v the
/// W-torus character.
using TorusElement = SparsePoly<LaurentQ, 2>;
/// Polynomial in two commuting symbols over Z[q^+-1]; used for (s10, s01)
/// and for the Hecke generators (t10, t01).
using SymbolPoly = SparsePoly<LaurentQ, 2>;

inline const std::array<std::string, 2> kTorusNames{"u", "v"};
inline const std::array<std::string, 2> kSNames{"s10", "s01"};
inline const std::array<std::string, 2> kHeckeNames{"t10", "t01"};

inline TorusElement torus_monomial(const LaurentQ& c, int m, int n) { return TorusElement::monomial(c, {m, n}); }
inline TorusElement s10_torus() { return torus_monomial(1, 1, 0) + torus_monomial(1, -1, 0); }
inline TorusElement s01_torus() { return torus_monomial(1, 0, 1) + torus_monomial(1, 0, -1); }

inline bool is_weyl_invariant(const TorusElement& f) { return f == f.invert_var(0) && f == f.invert_var(1); }

// ---- retraction tallies ----

/// Multiplicity of each apartment position (black units) among the
/// retractions from the + end of the sphere of radius r around the base,
/// in B(V) (`in_W` false) or inside B(W) (`in_W` true).
inline std::map<int, BigInt> retraction_tally(int q, int r, bool in_W, bool collapse = true) {
  std::map<int, BigInt> out;
  if (r == 0) {
    out[0] = 1;
    return out;
  }
  TreePair tree(q, r);
  tree.walk(tree.base(), 2 * r, in_W, collapse, {}, [&](const Vertex& x, uint64_t w) {
    out[TreePair::retract(x, End::Plus) / 2] += w;
  });
  return out;
}

/// Twisted transform of one factor at numeric q: sum of mult(m) q^(k m) x^m
/// with k = 2 for V and k = 1 for W.
inline std::map<int, BigInt> twist_numeric(const std::map<int, BigInt>& tally, int q, int k) {
  std::map<int, BigInt> out;
  for (const auto& [m, c] : tally) {
    Rational v = Rational(c) * LaurentQ::q_pow(k * m).eval(q);
    if (denominator(v) != 1) throw NonIntegralCoefficient("twisted multiplicity is not integral");
    out[m] = numerator(v);
  }
  return out;
}

/// Twisted Satake image of t_{a,b} at a numeric q, with integer coefficients.
inline TorusElement satake_numeric(int a, int b, int q) {
  auto tv = twist_numeric(retraction_tally(q, a, false), q, 2);
  auto tw = twist_numeric(retraction_tally(q, b, true), q, 1);
  auto to_i64 = [](const BigInt& x) {
    if (x > BigInt(INT64_MAX)) throw ArithmeticOverflow("numeric Satake coefficient");
    return static_cast<int64_t>(x);
  };
  TorusElement fv, fw;
  for (const auto& [m, c] : tv) fv += torus_monomial(to_i64(c), m, 0);
  for (const auto& [n, c] : tw) fw += torus_monomial(to_i64(c), 0, n);
  return fv * fw;
}

/// Sample residue cardinalities for interpolation; 13 is held out for
/// independent checks.
inline const std::vector<int>& interpolation_samples() {
  static const std::vector<int> s{3, 5, 7, 9, 11, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49};
  return s;
}
inline constexpr int kHeldOutQ = 13;

/// Untwisted tally of one factor as polynomials in q: the sphere of radius r
/// has size of degree 4r in B(V) and 2r in B(W), which bounds every
/// multiplicity. Uses degree + 2 samples so one sample checks the fit.
inline std::map<int, LaurentQ> symbolic_tally(int r, bool in_W) {
  static std::mutex mu;
  static std::map<std::pair<int, bool>, std::map<int, LaurentQ>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({r, in_W});
    if (it != cache.end()) return it->second;
  }
  const int bound = in_W ? 2 * r : 4 * r;
  const auto& qs = interpolation_samples();
  if (static_cast<int>(qs.size()) < bound + 2) throw UsageError("sphere radius too large for symbolic tally");
  std::map<int, std::vector<std::pair<long long, BigInt>>> samples;
  std::vector<std::map<int, BigInt>> tallies;
  for (int i = 0; i < bound + 2; ++i) tallies.push_back(retraction_tally(qs[i], r, in_W));
  std::map<int, LaurentQ> out;
  std::vector<int> positions;
  for (const auto& t : tallies)
    for (const auto& [m, c] : t) positions.push_back(m);
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  for (int m : positions) {
    std::vector<std::pair<long long, BigInt>> pts;
    for (int i = 0; i < bound + 2; ++i) {
      auto it = tallies[i].find(m);
      pts.emplace_back(qs[i], it == tallies[i].end() ? BigInt(0) : it->second);
    }
    LaurentQ f = interpolate_in_q(pts, bound);
    if (!f.is_zero()) out[m] = f;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache[{r, in_W}] = out;
  return out;
}

/// Twisted Satake image of t_{a,b} symbolically in q. Each untwisted
/// multiplicity must have degree at most 4(a+b).
inline TorusElement satake_symbolic(int a, int b) {
  if (a < 0 || b < 0) throw UsageError("Satake image needs a, b >= 0");
  const auto tv = symbolic_tally(a, false), tw = symbolic_tally(b, true);
  TorusElement r;
  for (const auto& [m, cv] : tv)
    for (const auto& [n, cw] : tw) {
      LaurentQ c = cv * cw;
      if (c.high() > 4 * (a + b)) throw InterpolationDegreeExceeded("multiplicity degree exceeds 4(a+b)");
      r += torus_monomial(c.shifted(2 * m + n), m, n);
    }
  return r;
}

/// Evaluation of q in every coefficient.
inline std::map<std::array<int, 2>, Rational> torus_at(const TorusElement& f, long long q) {
  std::map<std::array<int, 2>, Rational> out;
  for (const auto& [e, c] : f.terms()) {
    Rational v = c.eval(q);
    if (v != 0) out[e] = v;
  }
  return out;
}

// ---- products of Hecke operators on the tree ----

enum class Op { T10, T01 };

/// Twisted transform of the product of operators in `word` applied to the
/// base point, with the product computed as iterated sphere sums on the
/// tree (V-letters act on the B(V) point, W-letters on the B(W) point).
inline TorusElement satake_of_word(const std::vector<Op>& word, int q) {
  int nv = 0, nw = 0;
  for (Op o : word) (o == Op::T10 ? nv : nw)++;
  TreePair tree(q, std::max(nv, nw) + 1);
  auto run = [&](int steps, bool in_W) {
    std::map<Vertex, uint64_t> cur{{tree.base(), 1}};
    for (int s = 0; s < steps; ++s) {
      std::map<Vertex, uint64_t> next;
      for (const auto& [x, w] : cur)
        tree.walk(x, 2, in_W, true, {}, [&](const Vertex& y, uint64_t wy) {
          uint64_t p;
          if (__builtin_mul_overflow(w, wy, &p)) throw ArithmeticOverflow("walk weight");
          next[y] += p;
        });
      cur = std::move(next);
    }
    std::map<int, BigInt> tally;
    for (const auto& [x, w] : cur) tally[TreePair::retract(x, End::Plus) / 2] += w;
    return twist_numeric(tally, q, in_W ? 1 : 2);
  };
  auto tv = run(nv, false), tw = run(nw, true);
  TorusElement fv, fw;
  for (const auto& [m, c] : tv) fv += torus_monomial(static_cast<int64_t>(c), m, 0);
  for (const auto& [n, c] : tw) fw += torus_monomial(static_cast<int64_t>(c), 0, n);
  return fv * fw;
}

/// Transform of a single generator at numeric q.
inline TorusElement satake_of_op(Op o, int q) { return o == Op::T10 ? satake_numeric(1, 0, q) : satake_numeric(0, 1, q); }

}  // namespace hecke

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hecke/satake/satake.hpp"

namespace hecke {

/// Polynomial in z whose coefficients are symbol polynomials: either in
/// (s10, s01), in the Hecke generators (t10, t01), or torus elements.
using SymbolZPoly = Poly<SymbolPoly>;
using TorusZPoly = Poly<TorusElement>;

namespace detail {
inline LaurentQ qp(int k) { return LaurentQ::q_pow(k); }
inline LaurentQ qm1() { return LaurentQ::q() - 1; }
inline SymbolPoly sym(size_t i) { return SymbolPoly::var(i); }
inline SymbolPoly cst(const LaurentQ& c) { return SymbolPoly(c); }
}  // namespace detail

/// Degree-2 and degree-4 factors of the Hecke polynomial on the torus side,
/// written in s10 = u + 1/u and s01 = v + 1/v.
struct HeckeFactors {
  SymbolZPoly h2;
  SymbolZPoly h4;
};

inline HeckeFactors hecke_polynomial_s() {
  using namespace detail;
  const SymbolPoly s10 = sym(0), s01 = sym(1);
  SymbolZPoly h2 = SymbolZPoly::from_desc({cst(1), cst(-qp(3)) * s01, cst(qp(6))});
  SymbolZPoly h4 = SymbolZPoly::from_desc({cst(1), cst(-qp(3)) * s01 * s10,
                                           cst(qp(6)) * (s01 * s01 + s10 * s10 - cst(2)),
                                           cst(-qp(9)) * s01 * s10, cst(qp(12))});
  return {h2, h4};
}

inline TorusElement s_to_torus(const SymbolPoly& f) {
  return f.substitute<TorusElement>({s10_torus(), s01_torus()}, [](const LaurentQ& c) { return TorusElement(c); });
}
inline TorusZPoly s_to_torus(const SymbolZPoly& p) {
  return p.map([](const SymbolPoly& c) { return s_to_torus(c); });
}

/// H^(2), H^(4) over the torus character ring.
struct TorusHecke {
  TorusZPoly h2;
  TorusZPoly h4;
};
inline TorusHecke hecke_polynomial_torus() {
  auto f = hecke_polynomial_s();
  return {s_to_torus(f.h2), s_to_torus(f.h4)};
}

/// Pulls a polynomial in (s10, s01) back to the Hecke generators through
/// s10 = (t10 - (q-1)) / q^2 and s01 = (t01 - (q-1)) / q. Throws if a
/// coefficient is not a polynomial in q.
inline SymbolPoly s_to_hecke(const SymbolPoly& f) {
  using namespace detail;
  SymbolPoly s10 = (sym(0) - cst(qm1())) * cst(qp(-2));
  SymbolPoly s01 = (sym(1) - cst(qm1())) * cst(qp(-1));
  SymbolPoly r = f.substitute<SymbolPoly>({s10, s01}, [](const LaurentQ& c) { return SymbolPoly(c); });
  for (const auto& [e, c] : r.terms())
    if (!c.is_polynomial())
      throw NonIntegralCoefficient("coefficient " + c.to_string() + " has a negative power of q");
  return r;
}

struct OperatorFactors {
  SymbolZPoly h2;
  SymbolZPoly h4;
};
/// H^(2), H^(4) with coefficients polynomial in t10, t01 over Z[q].
inline OperatorFactors hecke_polynomial_hecke_basis() {
  auto f = hecke_polynomial_s();
  auto pull = [](const SymbolZPoly& p) { return p.map([](const SymbolPoly& c) { return s_to_hecke(c); }); };
  return {pull(f.h2), pull(f.h4)};
}

/// Twisted Satake transform of a polynomial in the Hecke generators: the
/// transform is an algebra map, so t10 and t01 go to their images.
inline TorusElement satake_of_hecke(const SymbolPoly& f) {
  TorusElement t10 = satake_symbolic(1, 0), t01 = satake_symbolic(0, 1);
  return f.substitute<TorusElement>({t10, t01}, [](const LaurentQ& c) { return TorusElement(c); });
}
inline TorusZPoly satake_of_hecke(const SymbolZPoly& p) {
  return p.map([](const SymbolPoly& c) { return satake_of_hecke(c); });
}

/// Expanded product over eigenvalue ratios {u, 1, 1/u} x {v, 1/v} of
/// (z - q^3 * ratio), in Z[q^+-1][u^+-1, v^+-1][z].
inline TorusZPoly ratio_product() {
  TorusZPoly p(TorusElement(1));
  for (int m : {1, 0, -1})
    for (int n : {1, -1}) p *= TorusZPoly::from_desc({TorusElement(1), torus_monomial(-detail::qp(3), m, n)});
  return p;
}

struct RatioIdentityReport {
  bool identity = false;         // ratio product == H^(2) H^(4)
  bool weyl_invariant = false;   // every coefficient Weyl-invariant
  TorusElement constant_term;    // expected q^18
  TorusElement z5_coefficient;   // expected -q^3 (s01 + s01 s10)
};
inline RatioIdentityReport ratio_identity_check() {
  RatioIdentityReport r;
  auto prod = ratio_product();
  auto th = hecke_polynomial_torus();
  r.identity = prod == th.h2 * th.h4;
  r.weyl_invariant = true;
  for (const auto& c : prod.coeffs()) r.weyl_invariant = r.weyl_invariant && is_weyl_invariant(c);
  r.constant_term = prod.coeff(0);
  r.z5_coefficient = prod.coeff(5);
  return r;
}

// ---- literal forms kept for comparison with the derived ones ----

/// H^(2), H^(4) in the Hecke generators exactly as customarily written out.
inline OperatorFactors reference_hecke_basis() {
  using namespace detail;
  const SymbolPoly t10 = sym(0), t01 = sym(1);
  const SymbolPoly c3 = cst(-1) * t10 * t01 + cst(qm1()) * t10 + cst(qm1()) * t01 - cst(qm1() * qm1());
  SymbolZPoly h2 = SymbolZPoly::from_desc({cst(1), cst(-qp(2)) * (t01 - cst(qm1())), cst(qp(6))});
  SymbolPoly c2 = cst(qp(2)) * (t10 * t10 + cst(qp(2)) * t01 * t01 - cst(LaurentQ(2) * qm1()) * t10 -
                                cst(LaurentQ(2) * qp(2) * qm1()) * t01 + cst(LaurentQ::poly_desc({-1, -2, 2, -2, 1})));
  SymbolZPoly h4 = SymbolZPoly::from_desc({cst(1), c3, c2, cst(qp(6)) * c3, cst(qp(12))});
  return {h2, h4};
}

/// Linear combination of double-coset basis elements t_{a,b}.
using CosetCombination = std::map<std::pair<int, int>, LaurentQ>;

inline TorusElement satake_of_cosets(const CosetCombination& c) {
  TorusElement r;
  for (const auto& [ab, coef] : c) r += TorusElement(coef) * satake_symbolic(ab.first, ab.second);
  return r;
}

inline std::string cosets_to_string(const CosetCombination& c) {
  std::string s;
  for (const auto& [ab, coef] : c) {
    if (coef.is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + coef.to_string() + ")*t" + std::to_string(ab.first) + std::to_string(ab.second);
  }
  return s.empty() ? "0" : s;
}

/// Coefficients of H^(2) and H^(4) in the double-coset basis as customarily
/// stated (z^1 of H^(2), then d1..d4 of H^(4)).
struct CosetForm {
  std::string name;
  int factor;  // 2 or 4
  int z_power;
  CosetCombination value;
};
inline std::vector<CosetForm> reference_coset_forms() {
  using namespace detail;
  const LaurentQ q1 = qm1();
  std::vector<CosetForm> out;
  out.push_back({"H2 z^1", 2, 1, {{{0, 1}, -qp(2)}, {{0, 0}, qp(2) * q1}}});
  out.push_back({"d1", 4, 3, {{{1, 1}, -1}, {{1, 0}, q1}, {{0, 1}, q1 * q1}, {{0, 0}, -(q1 * q1)}}});
  out.push_back({"d2",
                 4,
                 2,
                 {{{2, 0}, qp(2)},
                  {{0, 2}, qp(4)},
                  {{1, 0}, LaurentQ(-2) * qp(2) * q1},
                  {{0, 1}, LaurentQ(-2) * qp(4) * q1},
                  {{0, 0}, -(qp(2) * (qp(2) + 1) * q1 * q1)}}});
  out.push_back({"d3", 4, 1, {{{1, 1}, -qp(6)}, {{1, 0}, qp(6) * q1}, {{0, 1}, qp(6) * q1}, {{0, 0}, -(qp(6) * q1 * q1)}}});
  out.push_back({"d4", 4, 0, {{{0, 0}, qp(12)}}});
  return out;
}

/// Comparison of one stated coset-basis coefficient with the torus-side value.
struct CosetDiff {
  std::string name;
  TorusElement stated_image;
  TorusElement expected;
  bool match;
  /// Ground-truth coefficient expressed in the double-coset basis.
  CosetCombination derived;
};

/// Expresses a Weyl-invariant torus element in the double-coset basis by
/// peeling off leading terms (largest u-power, then v-power).
inline CosetCombination torus_to_cosets(TorusElement f, int max_a = 4, int max_b = 4) {
  CosetCombination out;
  for (int guard = 0; guard < 64 && !f.is_zero(); ++guard) {
    int a = f.max_degree(0);
    int b = 0;
    for (const auto& [e, c] : f.terms())
      if (e[0] == a) b = std::max(b, e[1]);
    if (a > max_a || b > max_b) throw UsageError("torus element outside the coset range");
    TorusElement basis = satake_symbolic(a, b);
    LaurentQ lead = basis.coeff({a, b});
    LaurentQ target = f.coeff({a, b});
    auto [quo, rem] = target.divmod(lead.coeff(lead.high()) == 1 || lead.coeff(lead.high()) == -1
                                        ? lead
                                        : throw NonIntegralCoefficient("non-monic leading coefficient"));
    if (!rem.is_zero()) throw NonIntegralCoefficient("torus element not in the coset span");
    out[{a, b}] = out[{a, b}] + quo;
    f -= TorusElement(quo) * basis;
  }
  if (!f.is_zero()) throw UsageError("coset decomposition did not terminate");
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

inline std::vector<CosetDiff> coset_form_diffs() {
  auto th = hecke_polynomial_torus();
  std::vector<CosetDiff> out;
  for (const auto& f : reference_coset_forms()) {
    const auto& h = f.factor == 2 ? th.h2 : th.h4;
    TorusElement expected = h.coeff(f.z_power);
    TorusElement img = satake_of_cosets(f.value);
    out.push_back({f.name, img, expected, img == expected, torus_to_cosets(expected)});
  }
  return out;
}

inline std::string torus_to_string(const TorusElement& f) { return f.to_string(kTorusNames); }
inline std::string hecke_to_string(const SymbolPoly& f) { return f.to_string(kHeckeNames); }
inline std::string zpoly_to_string(const SymbolZPoly& p, const std::array<std::string, 2>& names) {
  return p.to_string("z", [&](const SymbolPoly& c) { return c.to_string(names); });
}

}  // namespace hecke

#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hecke/error.hpp"
#include "hecke/scalar/finite_field.hpp"
#include "hecke/scalar/series.hpp"

namespace hecke {

using LaurentMatrix = std::vector<std::vector<BoundedLaurent>>;
using SeriesMatrix = std::vector<std::vector<TruncatedSeries>>;

/// k^dim with the antidiagonal Hermitian form: <e+, e-> = 1 and, in
/// dimension 3, <e0, e0> = 1. Coordinates are ordered (e+, e0, e-) or (e+, e-).
/// The pairing is <v, w> = w^* J v.
struct HermitianSpace {
  const Fq2Field* field = nullptr;
  int dim = 3;

  static HermitianSpace V(const Fq2Field& f) { return {&f, 3}; }
  static HermitianSpace W(const Fq2Field& f) { return {&f, 2}; }

  /// Gram matrix J (exact entries).
  LaurentMatrix gram() const {
    LaurentMatrix j(dim, std::vector<BoundedLaurent>(dim, BoundedLaurent::exact_zero(*field)));
    for (int i = 0; i < dim; ++i) j[i][dim - 1 - i] = BoundedLaurent::exact(field->one());
    return j;
  }
  bool operator==(const HermitianSpace& o) const { return field == o.field && dim == o.dim; }
};

// ---- matrix helpers over bounded Laurent series ----

inline LaurentMatrix lmat_zero(const Fq2Field& f, int rows, int cols) {
  return LaurentMatrix(rows, std::vector<BoundedLaurent>(cols, BoundedLaurent::exact_zero(f)));
}
inline LaurentMatrix lmat_identity(const Fq2Field& f, int n) {
  auto m = lmat_zero(f, n, n);
  for (int i = 0; i < n; ++i) m[i][i] = BoundedLaurent::exact(f.one());
  return m;
}
inline LaurentMatrix lmat_mul(const LaurentMatrix& a, const LaurentMatrix& b) {
  const Fq2Field& f = a[0][0].field();
  auto c = lmat_zero(f, static_cast<int>(a.size()), static_cast<int>(b[0].size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b[0].size(); ++j)
      for (size_t k = 0; k < b.size(); ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}
inline LaurentMatrix lmat_conj_transpose(const LaurentMatrix& a) {
  const Fq2Field& f = a[0][0].field();
  auto c = lmat_zero(f, static_cast<int>(a[0].size()), static_cast<int>(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) c[j][i] = a[i][j].conj();
  return c;
}
/// Drops every entry to absolute precision at most p.
inline LaurentMatrix lmat_truncated(const LaurentMatrix& a, int p) {
  LaurentMatrix c = a;
  for (auto& row : c)
    for (auto& x : row) x = x.truncated(p);
  return c;
}
inline int lmat_precision(const LaurentMatrix& a) {
  int p = BoundedLaurent::kExact;
  for (const auto& row : a)
    for (const auto& x : row) p = std::min(p, x.precision());
  return p;
}
inline LaurentMatrix lmat_from_series(const SeriesMatrix& h) {
  LaurentMatrix m;
  for (const auto& row : h) {
    m.emplace_back();
    for (const auto& x : row) m.back().push_back(BoundedLaurent::from_series(x));
  }
  return m;
}

/// Inverse of a single entry; exact non-monomials are expanded to `window`.
inline BoundedLaurent invert_entry(const BoundedLaurent& x, int window) {
  if (x.is_exact()) {
    try {
      return x.inverse();
    } catch (const InsufficientPrecision&) {
      return x.inverse_to(std::min(window, 64));
    }
  }
  return x.inverse();
}

/// Inverse over the Laurent field by Gauss-Jordan elimination with
/// minimal-valuation pivots. Throws InsufficientPrecision when no pivot can
/// be certified nonzero.
inline LaurentMatrix lmat_inverse(const LaurentMatrix& a) {
  const Fq2Field& f = a[0][0].field();
  const int n = static_cast<int>(a.size());
  LaurentMatrix m = a, inv = lmat_identity(f, n);
  for (int k = 0; k < n; ++k) {
    int piv = -1, best = 0;
    for (int i = k; i < n; ++i) {
      if (!m[i][k].valuation_certified()) continue;
      int v = m[i][k].valuation();
      if (piv < 0 || v < best) piv = i, best = v;
    }
    if (piv < 0) throw InsufficientPrecision("matrix inverse: no certified pivot in column " + std::to_string(k));
    std::swap(m[k], m[piv]);
    std::swap(inv[k], inv[piv]);
    BoundedLaurent p_inv = invert_entry(m[k][k], lmat_precision(a));
    for (int j = 0; j < n; ++j) {
      m[k][j] = p_inv * m[k][j];
      inv[k][j] = p_inv * inv[k][j];
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || m[i][k].known_zero()) continue;
      BoundedLaurent c = m[i][k];
      for (int j = 0; j < n; ++j) {
        m[i][j] -= c * m[k][j];
        inv[i][j] -= c * inv[k][j];
      }
    }
  }
  return inv;
}

/// Valuations of the elementary divisors of a nonsingular matrix over the
/// Laurent field, sorted descending. Valuation-pivoted elimination; ties go
/// to the lowest row index, or to the highest when `last_row_ties` is set
/// (used to check pivot independence).
inline std::vector<int> elementary_divisor_valuations(LaurentMatrix m, bool last_row_ties = false) {
  const int n = static_cast<int>(m.size());
  std::vector<int> out;
  for (int k = 0; k < n; ++k) {
    int pi = -1, pj = -1, best = 0;
    for (int i = k; i < n; ++i)
      for (int j = k; j < n; ++j) {
        if (!m[i][j].valuation_certified()) continue;
        int v = m[i][j].valuation();
        bool better = pi < 0 || v < best || (v == best && last_row_ties && i > pi);
        if (better) pi = i, pj = j, best = v;
      }
    if (pi < 0) throw InsufficientPrecision("elementary divisors: no certified pivot");
    std::swap(m[k], m[pi]);
    for (auto& row : m) std::swap(row[k], row[pj]);
    out.push_back(best);
    BoundedLaurent p_inv = invert_entry(m[k][k], lmat_precision(m));
    for (int i = k + 1; i < n; ++i) {
      if (m[i][k].known_zero()) continue;
      BoundedLaurent c = m[i][k] * p_inv;
      for (int j = k; j < n; ++j) m[i][j] -= c * m[k][j];
    }
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

/// Elementary-divisor valuations of M relative to L, largest first.
struct RelativePosition {
  std::vector<int> r;
  int dist() const { return r.empty() ? 0 : std::max(r.front(), -r.back()); }
  bool is_zero() const {
    return std::all_of(r.begin(), r.end(), [](int x) { return x == 0; });
  }
  bool operator==(const RelativePosition& o) const { return r == o.r; }
};

/// Full-rank lattice spanned by the columns of `basis`.
class HermitianLattice {
 public:
  HermitianLattice(HermitianSpace space, LaurentMatrix basis) : space_(space), basis_(std::move(basis)) {
    if (static_cast<int>(basis_.size()) != space_.dim) throw UsageError("basis size does not match dimension");
  }

  /// O e_1 + ... + O e_n, entries known to absolute precision `precision`.
  static HermitianLattice standard(HermitianSpace space, int precision) {
    return HermitianLattice(space, lmat_truncated(lmat_identity(*space.field, space.dim), precision));
  }

  const HermitianSpace& space() const { return space_; }
  const LaurentMatrix& basis() const { return basis_; }
  int dim() const { return space_.dim; }
  int precision() const { return lmat_precision(basis_); }

  /// The lattice g L for a matrix g acting on coordinates.
  HermitianLattice transformed(const LaurentMatrix& g) const { return HermitianLattice(space_, lmat_mul(g, basis_)); }
  /// t^k L.
  HermitianLattice scaled(int k) const {
    LaurentMatrix b = basis_;
    for (auto& row : b)
      for (auto& x : row) x = x.shifted(k);
    return HermitianLattice(space_, std::move(b));
  }
  /// Gram matrix B^* J B of the basis.
  LaurentMatrix gram() const { return lmat_mul(lmat_conj_transpose(basis_), lmat_mul(space_.gram(), basis_)); }

 private:
  HermitianSpace space_;
  LaurentMatrix basis_;
};

/// L^dual = {v : <v, L> integral}, with basis J (B^*)^{-1}.
inline HermitianLattice dual_lattice(const HermitianLattice& l) {
  return HermitianLattice(l.space(), lmat_mul(l.space().gram(), lmat_inverse(lmat_conj_transpose(l.basis()))));
}

inline RelativePosition relative_position(const HermitianLattice& l, const HermitianLattice& m,
                                          bool last_row_ties = false) {
  if (!(l.space() == m.space())) throw UsageError("lattices live in different spaces");
  return {elementary_divisor_valuations(lmat_mul(lmat_inverse(l.basis()), m.basis()), last_row_ties)};
}

inline bool same_lattice(const HermitianLattice& l, const HermitianLattice& m) {
  return relative_position(l, m).is_zero();
}
inline bool is_self_dual(const HermitianLattice& l) { return same_lattice(l, dual_lattice(l)); }

/// Direct sum L_W + O e0 inside V (W = span(e+, e-)).
inline HermitianLattice extend_by_e0(const HermitianLattice& lw, int precision) {
  const Fq2Field& f = *lw.space().field;
  auto b = lmat_zero(f, 3, 3);
  const auto& w = lw.basis();
  b[0][0] = w[0][0];
  b[0][2] = w[0][1];
  b[2][0] = w[1][0];
  b[2][2] = w[1][1];
  b[1][1] = BoundedLaurent::exact(f.one()).truncated(precision);
  return HermitianLattice(HermitianSpace::V(f), std::move(b));
}

struct LatticePair {
  HermitianLattice lv;
  HermitianLattice lw;
};

/// Self-dual pair with invariant (a, b):
///   L_V = < t^a e+, e0 - e+, t^-a ((s - 1/2) e+ + e0 + e-) >,
///   L_W = < t^-b e+, t^b (s e+ + e-) >,
/// for a trace-zero constant s. Entries carry the window [-(a+b+2), a+b+2+slack].
/// Exact bases (columns) of the pair: L_V from a Witt basis through
/// t^a e+, e0 - e+ and t^-a((s - 1/2)e+ + e0 + e-); L_W from t^-b e+ and
/// t^b(s e+ + e-). Both bases have Gram matrix J.
inline std::pair<LaurentMatrix, LaurentMatrix> explicit_pair_bases(int a, int b, const Fq2Elem& s) {
  if (a < 0 || b < 0) throw UsageError("invariant components must be nonnegative");
  const Fq2Field& f = *s.field;
  if (!(s + conj(s)).is_zero()) throw TraceNotZero("s + conj(s) must vanish");
  auto mono = [&](const Fq2Elem& c, int k) { return BoundedLaurent::monomial(c, k); };
  auto zero = BoundedLaurent::exact_zero(f);
  Fq2Elem half = f.make(f.base().half());
  LaurentMatrix bv = {{mono(f.one(), a), mono(-f.one(), 0), mono(s - half, -a)},
                      {zero, mono(f.one(), 0), mono(f.one(), -a)},
                      {zero, zero, mono(f.one(), -a)}};
  LaurentMatrix bw = {{mono(f.one(), -b), mono(s, b)}, {zero, mono(f.one(), b)}};
  return {bv, bw};
}

inline LatticePair explicit_lattice_pair(int a, int b, const Fq2Elem& s, int slack = 4) {
  auto [bv, bw] = explicit_pair_bases(a, b, s);
  const int prec = a + b + 2 + slack;
  const Fq2Field& f = *s.field;
  return {HermitianLattice(HermitianSpace::V(f), lmat_truncated(bv, prec)),
          HermitianLattice(HermitianSpace::W(f), lmat_truncated(bw, prec))};
}

/// Lattice-side evidence that a pair has invariant (a, b):
///  - the smallest n with t^n e0 in L_V is a, so every lattice of the form
///    L' + O e0 is at distance >= a from L_V;
///  - the standard lattice (which has that form) is at distance a, hence is
///    the projection of L_V to the subtree;
///  - dist(standard, L_W + O e0) = b.
struct PairInvariantCertificate {
  int e0_level = 0;
  int dist_to_standard = 0;
  int dist_standard_to_w = 0;
  int dist_v_to_w = 0;
  bool v_self_dual = false;
  bool w_self_dual = false;
  int a() const { return dist_to_standard; }
  int b() const { return dist_standard_to_w; }
  bool consistent() const { return v_self_dual && w_self_dual && e0_level == dist_to_standard; }
};

inline PairInvariantCertificate certify_pair(const LatticePair& p) {
  PairInvariantCertificate c;
  const int prec = p.lv.precision();
  auto std3 = HermitianLattice::standard(p.lv.space(), prec);
  auto binv = lmat_inverse(p.lv.basis());
  int minv = BoundedLaurent::kExact;
  for (int i = 0; i < 3; ++i) {
    if (!binv[i][1].valuation_certified()) continue;
    minv = std::min(minv, binv[i][1].valuation());
  }
  c.e0_level = -minv;
  c.dist_to_standard = relative_position(std3, p.lv).dist();
  auto w3 = extend_by_e0(p.lw, prec);
  c.dist_standard_to_w = relative_position(std3, w3).dist();
  c.dist_v_to_w = relative_position(p.lv, w3).dist();
  c.v_self_dual = is_self_dual(p.lv);
  c.w_self_dual = is_self_dual(p.lw);
  return c;
}

// ---- unitary matrices over F_{q^2}[t]/(t^m) ----

inline SeriesMatrix smat_identity(const Fq2Field& f, int n, int prec) {
  SeriesMatrix m(n, std::vector<TruncatedSeries>(n, TruncatedSeries(f, prec)));
  for (int i = 0; i < n; ++i) m[i][i] = TruncatedSeries::one(f, prec);
  return m;
}
inline SeriesMatrix smat_mul(const SeriesMatrix& a, const SeriesMatrix& b) {
  const int n = static_cast<int>(a.size()), m = static_cast<int>(b[0].size());
  const int prec = a[0][0].precision();
  SeriesMatrix c(n, std::vector<TruncatedSeries>(m, TruncatedSeries(a[0][0].field(), prec)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      for (size_t k = 0; k < b.size(); ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}
inline SeriesMatrix smat_conj_transpose(const SeriesMatrix& a) {
  SeriesMatrix c(a[0].size(), std::vector<TruncatedSeries>(a.size(), a[0][0]));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) c[j][i] = a[i][j].conj();
  return c;
}
inline SeriesMatrix smat_antidiag(const Fq2Field& f, int n, int prec) {
  SeriesMatrix m(n, std::vector<TruncatedSeries>(n, TruncatedSeries(f, prec)));
  for (int i = 0; i < n; ++i) m[i][n - 1 - i] = TruncatedSeries::one(f, prec);
  return m;
}

/// h^* J h == J modulo the entries' precision.
inline bool is_unitary(const SeriesMatrix& h, const HermitianSpace& space) {
  if (static_cast<int>(h.size()) != space.dim) return false;
  const Fq2Field& f = h[0][0].field();
  int prec = h[0][0].precision();
  for (const auto& row : h)
    for (const auto& x : row) prec = std::min(prec, x.precision());
  auto j = smat_antidiag(f, space.dim, prec);
  auto lhs = smat_mul(smat_conj_transpose(h), smat_mul(j, h));
  for (int i = 0; i < space.dim; ++i)
    for (int k = 0; k < space.dim; ++k)
      if (!(lhs[i][k] == j[i][k])) return false;
  return true;
}

namespace detail {
inline TruncatedSeries random_unit(const Fq2Field& f, int prec, std::mt19937_64& rng) {
  auto x = TruncatedSeries::random(f, prec, rng);
  while (x[0].is_zero()) x.set(0, f.random(rng));
  return x;
}
/// Random element of F_q[t]/(t^m) (conjugation-fixed).
inline TruncatedSeries random_real(const Fq2Field& f, int prec, std::mt19937_64& rng) {
  TruncatedSeries x(f, prec);
  std::uniform_int_distribution<int> d(0, f.q() - 1);
  for (int i = 0; i < prec; ++i) x.set(i, f.make(d(rng)));
  return x;
}
}  // namespace detail

/// Random element of U(J)(F_{q^2}[t]/(t^prec)) built as a word in torus
/// elements, unipotents and the Weyl element J.
inline SeriesMatrix random_unitary(const HermitianSpace& space, int prec, std::mt19937_64& rng, int length = 6) {
  const Fq2Field& f = *space.field;
  const int n = space.dim;
  auto eta = TruncatedSeries::constant(f.eta(), prec);
  SeriesMatrix h = smat_identity(f, n, prec);
  for (int step = 0; step < length; ++step) {
    SeriesMatrix g = smat_identity(f, n, prec);
    switch (step % 3) {
      case 0: {  // torus
        auto lam = detail::random_unit(f, prec, rng);
        g[0][0] = lam;
        g[n - 1][n - 1] = lam.conj().inverse();
        if (n == 3) {
          auto w = detail::random_unit(f, prec, rng);
          g[1][1] = w * w.conj().inverse();
        }
        break;
      }
      case 1: {  // unipotent
        if (n == 3) {
          auto x = TruncatedSeries::random(f, prec, rng);
          auto half = TruncatedSeries::constant(f.make(f.base().half()), prec);
          auto y = -(half * x * x.conj()) + eta * detail::random_real(f, prec, rng);
          g[0][1] = x;
          g[0][2] = y;
          g[1][2] = -x.conj();
        } else {
          g[0][1] = eta * detail::random_real(f, prec, rng);
        }
        break;
      }
      default:
        g = smat_antidiag(f, n, prec);
    }
    h = smat_mul(h, g);
  }
  return h;
}

/// The 3x3 matrix [[1 - g x, 0, g conj(g) x], [0, 1, 0], [x, 0, 1 - conj(g) x]]
/// with x = (1 - lam/conj(lam)) / (g + conj(g)); unitary with determinant
/// lam / conj(lam).
inline SeriesMatrix trace_twist_matrix(const TruncatedSeries& lam, const TruncatedSeries& g) {
  const Fq2Field& f = lam.field();
  const int prec = lam.precision();
  auto one = TruncatedSeries::one(f, prec);
  auto x = (one - lam * lam.conj().inverse()) * (g + g.conj()).inverse();
  SeriesMatrix a = smat_identity(f, 3, prec);
  a[0][0] = one - g * x;
  a[0][2] = g * g.conj() * x;
  a[2][0] = x;
  a[2][2] = one - g.conj() * x;
  return a;
}

inline TruncatedSeries det3(const SeriesMatrix& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace hecke

#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "hecke/lattice/hermitian.hpp"
#include "hecke/scalar/series.hpp"

namespace hecke {

// ---- U(1) over F_{q^2}[t]/(t^M) ----

using U1Set = std::set<TruncatedSeries>;

inline bool is_norm_one(const TruncatedSeries& s) {
  return s * s.conj() == TruncatedSeries::one(s.field(), s.precision());
}

/// All s in F_{q^2}[t]/(t^M) with s * conj(s) = 1, lifted one coefficient at
/// a time.
inline U1Set norm_one_elements(int q, int M) {
  if (M < 1) throw UsageError("precision must be >= 1");
  const Fq2Field& f = Fq2Field::get(q);
  std::vector<std::vector<Fq2Elem>> cur;
  for (int i = 0; i < f.size(); ++i) {
    Fq2Elem x = f.from_index(i);
    if (f.norm(x) == 1) cur.push_back({x});
  }
  for (int k = 1; k < M; ++k) {
    std::vector<std::vector<Fq2Elem>> next;
    for (const auto& c : cur)
      for (int i = 0; i < f.size(); ++i) {
        auto d = c;
        d.push_back(f.from_index(i));
        if (is_norm_one(TruncatedSeries(f, d))) next.push_back(std::move(d));
      }
    cur = std::move(next);
  }
  U1Set out;
  for (auto& c : cur) out.insert(TruncatedSeries(f, std::move(c)));
  return out;
}

/// v(s - 1), capped at M - 1.
inline int filtration_level(const TruncatedSeries& s) {
  if (!is_norm_one(s)) throw NotNormOne("element is not of norm one");
  const int M = s.precision();
  const Fq2Field& f = s.field();
  for (int i = 0; i < M - 1; ++i)
    if (!(s[i] == (i == 0 ? f.one() : f.zero()))) return i;
  return M - 1;
}

/// Level-c subgroup: all of U(1) for c = 0, else the s with v(s - 1) >= c.
inline U1Set level_subgroup(int c, int q, int M) {
  if (c >= M) throw InsufficientPrecision("level " + std::to_string(c) + " not visible mod t^" + std::to_string(M));
  U1Set out;
  for (const auto& s : norm_one_elements(q, M))
    if (c == 0 || filtration_level(s) >= c) out.insert(s);
  return out;
}

/// Units of O_c = O_{k0} + t^c O_k modulo t^M: the coefficients below t^c
/// lie in F_q.
template <class F>
void for_each_Oc_unit(int c, int q, int M, F&& visit) {
  const Fq2Field& f = Fq2Field::get(q);
  std::vector<Fq2Elem> x(static_cast<size_t>(M), f.zero());
  auto rec = [&](auto&& self, int i) -> void {
    if (i == M) {
      visit(TruncatedSeries(f, x));
      return;
    }
    const bool base_only = i < c;
    for (int j = 0; j < f.size(); ++j) {
      Fq2Elem e = f.from_index(j);
      if (base_only && !e.in_base_field()) continue;
      if (i == 0 && e.is_zero()) continue;
      x[i] = e;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
}

/// r(O_c^x) = { conj(l)/l : l in O_c^x } modulo t^M.
inline U1Set norm_one_image(int c, int q, int M) {
  U1Set out;
  for_each_Oc_unit(c, q, M, [&](const TruncatedSeries& l) { out.insert(l.conj() * l.inverse()); });
  return out;
}

/// Index of the level-c subgroup in U(1), by counting cosets.
inline long long unit_index_measured(int c, int q, int M) {
  if (M < c + 1) throw InsufficientPrecision("unit index needs M >= c + 1");
  U1Set all = norm_one_elements(q, M), sub = level_subgroup(c, q, M);
  std::vector<TruncatedSeries> reps;
  for (const auto& x : all) {
    bool found = false;
    for (const auto& r : reps)
      if (sub.count(x * r.inverse())) {
        found = true;
        break;
      }
    if (!found) reps.push_back(x);
  }
  return static_cast<long long>(reps.size());
}

/// For each s, some l in O_{v(s-1)}^x with conj(l)/l = s.
inline bool norm_one_preimages_exist(const U1Set& s_set, int q, int M) {
  std::map<int, U1Set> images;
  for (const auto& s : s_set) {
    int c = filtration_level(s);
    auto it = images.find(c);
    if (it == images.end()) it = images.emplace(c, norm_one_image(c, q, M)).first;
    if (!it->second.count(s)) return false;
  }
  return true;
}

// ---- U(W) over F_{q^2}[t]/(t^k) ----

/// 2x2 matrix over F_{q^2}[t]/(t^k); coefficient d of entry (i, j) sits at
/// c[(2i + j) k + d].
struct TruncMat2 {
  int k = 0;
  std::vector<Fq2Elem> c;

  const Fq2Elem& at(int i, int j, int d) const { return c[static_cast<size_t>((2 * i + j) * k + d)]; }
  Fq2Elem& at(int i, int j, int d) { return c[static_cast<size_t>((2 * i + j) * k + d)]; }
  TruncatedSeries entry(int i, int j, int m) const {
    std::vector<Fq2Elem> v(static_cast<size_t>(m), c[0].field->zero());
    for (int d = 0; d < std::min(m, k); ++d) v[d] = at(i, j, d);
    return TruncatedSeries(*c[0].field, v);
  }
  TruncatedSeries det(int m) const {
    if (m > k) throw InsufficientPrecision("determinant beyond element precision");
    return entry(0, 0, m) * entry(1, 1, m) - entry(0, 1, m) * entry(1, 0, m);
  }
  /// One more coefficient slot per entry, filled with zero.
  TruncMat2 widened() const {
    TruncMat2 r;
    r.k = k + 1;
    r.c.assign(static_cast<size_t>(4 * r.k), c[0].field->zero());
    for (int e = 0; e < 4; ++e)
      for (int d = 0; d < k; ++d) r.c[e * r.k + d] = c[e * k + d];
    return r;
  }
  friend bool operator==(const TruncMat2&, const TruncMat2&) = default;
  friend bool operator<(const TruncMat2& x, const TruncMat2& y) {
    if (x.k != y.k) return x.k < y.k;
    return std::lexicographical_compare(x.c.begin(), x.c.end(), y.c.begin(), y.c.end(),
                                        [](const Fq2Elem& u, const Fq2Elem& v) { return u < v; });
  }
};

/// h* J h = J modulo t^k, J antidiagonal.
inline bool is_unitary_trunc(const TruncMat2& h) {
  const Fq2Field& f = *h.c[0].field;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int d = 0; d < h.k; ++d) {
        Fq2Elem s = f.zero();
        for (int x = 0; x <= d; ++x)
          s += conj(h.at(0, i, x)) * h.at(1, j, d - x) + conj(h.at(1, i, x)) * h.at(0, j, d - x);
        Fq2Elem want = (d == 0 && i != j) ? f.one() : f.zero();
        if (!(s == want)) return false;
      }
  return true;
}

/// Integrality of B^-1 H B for an exact basis B with Gram matrix J. Stored as
/// P = t^nP B^-1 and Q = t^nQ B (polynomial), so the test is that every
/// coefficient of P H Q below t^depth vanishes.
struct IntegralityCondition {
  int n = 0;
  int depth = 0;
  std::vector<std::vector<std::vector<Fq2Elem>>> P, Q;  // [i][j][d], d < max(depth, 1)
};

inline IntegralityCondition make_condition(const LaurentMatrix& b) {
  const Fq2Field& f = b[0][0].field();
  const int n = static_cast<int>(b.size());
  LaurentMatrix J = lmat_zero(f, n, n);
  for (int i = 0; i < n; ++i) J[i][n - 1 - i] = BoundedLaurent::exact(f.one());
  LaurentMatrix binv = lmat_mul(J, lmat_mul(lmat_conj_transpose(b), J));
  LaurentMatrix id = lmat_mul(b, binv);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(id[i][j] == BoundedLaurent::exact(i == j ? f.one() : f.zero())))
        throw UsageError("lattice basis is not a Witt basis");
  auto minval = [](const LaurentMatrix& m) {
    int v = 0;
    for (const auto& row : m)
      for (const auto& x : row)
        if (!x.known_zero()) v = std::min(v, x.valuation());
    return v;
  };
  IntegralityCondition c;
  c.n = n;
  const int np = -minval(binv), nq = -minval(b);
  c.depth = np + nq;
  const int len = std::max(c.depth, 1);
  auto fill = [&](const LaurentMatrix& m, int shift) {
    std::vector<std::vector<std::vector<Fq2Elem>>> out(n, std::vector<std::vector<Fq2Elem>>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int d = 0; d < len; ++d) out[i][j].push_back(m[i][j].at(d - shift));
    return out;
  };
  c.P = fill(binv, np);
  c.Q = fill(b, nq);
  return c;
}

/// The group element as it acts in the space of the condition: h itself on
/// W, h (+) 1 on V with e0 in the middle.
inline Fq2Elem embedded_coeff(const TruncMat2& h, int n, int j, int m, int y) {
  const Fq2Field& f = *h.c[0].field;
  if (n == 2) return y < h.k ? h.at(j, m, y) : f.zero();
  if (j == 1 || m == 1) return (j == 1 && m == 1 && y == 0) ? f.one() : f.zero();
  return y < h.k ? h.at(j / 2, m / 2, y) : f.zero();
}

/// Coefficient d of P H Q with H built from h (coefficients beyond h.k read
/// as zero).
inline std::vector<std::vector<Fq2Elem>> condition_coeff(const IntegralityCondition& cond, const TruncMat2& h, int d) {
  const Fq2Field& f = *h.c[0].field;
  const int n = cond.n;
  std::vector<std::vector<Fq2Elem>> out(n, std::vector<Fq2Elem>(n, f.zero()));
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < n; ++m)
      for (int y = 0; y <= d; ++y) {
        Fq2Elem hv = embedded_coeff(h, n, j, m, y);
        if (hv.is_zero()) continue;
        for (int x = 0; x <= d - y; ++x) {
          int z = d - y - x;
          for (int i = 0; i < n; ++i) {
            const Fq2Elem& p = cond.P[i][j][x];
            if (p.is_zero()) continue;
            Fq2Elem ph = p * hv;
            for (int l = 0; l < n; ++l) out[i][l] += ph * cond.Q[m][l][z];
          }
        }
      }
  return out;
}

/// Every coefficient of P H Q below min(h.k, depth) vanishes.
inline bool satisfies_condition(const IntegralityCondition& cond, const TruncMat2& h) {
  for (int d = 0; d < std::min(h.k, cond.depth); ++d)
    for (const auto& row : condition_coeff(cond, h, d))
      for (const auto& x : row)
        if (!x.is_zero()) return false;
  return true;
}

namespace detail {

/// Solutions over F_q of L x = rhs (rows of length nvar); empty if none.
inline std::vector<std::vector<int>> solve_fq(const FiniteField& F, std::vector<std::vector<int>> L,
                                              std::vector<int> rhs, int nvar) {
  const int rows = static_cast<int>(L.size());
  std::vector<int> pivot_col;
  int r = 0;
  for (int col = 0; col < nvar && r < rows; ++col) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (L[i][col]) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(L[p], L[r]);
    std::swap(rhs[p], rhs[r]);
    int inv = F.inv(L[r][col]);
    for (int j = 0; j < nvar; ++j) L[r][j] = F.mul(L[r][j], inv);
    rhs[r] = F.mul(rhs[r], inv);
    for (int i = 0; i < rows; ++i) {
      if (i == r || !L[i][col]) continue;
      int fct = L[i][col];
      for (int j = 0; j < nvar; ++j) L[i][j] = F.sub(L[i][j], F.mul(fct, L[r][j]));
      rhs[i] = F.sub(rhs[i], F.mul(fct, rhs[r]));
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (rhs[i]) return {};
  std::vector<int> free_cols;
  for (int col = 0; col < nvar; ++col)
    if (std::find(pivot_col.begin(), pivot_col.end(), col) == pivot_col.end()) free_cols.push_back(col);
  std::vector<std::vector<int>> out;
  const int q = F.q();
  long long total = 1;
  for (size_t i = 0; i < free_cols.size(); ++i) total *= q;
  for (long long idx = 0; idx < total; ++idx) {
    std::vector<int> x(static_cast<size_t>(nvar), 0);
    long long t = idx;
    for (int fc : free_cols) {
      x[fc] = static_cast<int>(t % q);
      t /= q;
    }
    for (int i = 0; i < r; ++i) {
      int v = rhs[i];
      for (int fc : free_cols) v = F.sub(v, F.mul(L[i][fc], x[fc]));
      x[pivot_col[i]] = v;
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace detail

/// Lifts h (unitary mod t^k) to all unitary elements mod t^(k+1) that also
/// satisfy the given integrality conditions in degree k. Lifts are
/// h + t^k h0 J (-E/2 + A) with E the t^k-defect of h* J h and A
/// anti-Hermitian; the conditions are affine in A and solved over F_q.
inline std::vector<TruncMat2> unitary_lifts(const TruncMat2& h, const std::vector<const IntegralityCondition*>& conds) {
  const Fq2Field& f = *h.c[0].field;
  const FiniteField& F = f.base();
  const int k = h.k;
  TruncMat2 base = h.widened();
  // Defect E (Hermitian) in degree k.
  Fq2Elem E[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Fq2Elem s = f.zero();
      for (int x = 1; x < k; ++x)
        s += conj(h.at(0, i, x)) * h.at(1, j, k - x) + conj(h.at(1, i, x)) * h.at(0, j, k - x);
      E[i][j] = s;
    }
  auto h0J = [&](int i, int j) { return h.at(i, 1 - j, 0); };  // (h0 J)_{ij}
  auto times_h0J = [&](const Fq2Elem Y[2][2], Fq2Elem X[2][2]) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) X[i][j] = h0J(i, 0) * Y[0][j] + h0J(i, 1) * Y[1][j];
  };
  const Fq2Elem mhalf = -f.make(F.half());
  Fq2Elem Y0[2][2], X0[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) Y0[i][j] = mhalf * E[i][j];
  times_h0J(Y0, X0);
  // Anti-Hermitian basis over F_q: eta E11, eta E22, E12 - E21, eta (E12 + E21).
  Fq2Elem Xb[4][2][2];
  for (int v = 0; v < 4; ++v) {
    Fq2Elem A[2][2] = {{f.zero(), f.zero()}, {f.zero(), f.zero()}};
    if (v == 0) A[0][0] = f.eta();
    if (v == 1) A[1][1] = f.eta();
    if (v == 2) A[0][1] = f.one(), A[1][0] = -f.one();
    if (v == 3) A[0][1] = f.eta(), A[1][0] = f.eta();
    times_h0J(A, Xb[v]);
  }
  // Affine system from the active conditions.
  std::vector<std::vector<int>> L;
  std::vector<int> rhs;
  for (const auto* cond : conds) {
    if (k >= cond->depth) continue;
    const int n = cond->n;
    auto C = condition_coeff(*cond, h, k);  // h's degree-k part is still zero
    auto embed = [&](const Fq2Elem X[2][2], int j, int m) {
      if (n == 2) return X[j][m];
      if (j == 1 || m == 1) return f.zero();
      return X[j / 2][m / 2];
    };
    auto sandwich = [&](const Fq2Elem X[2][2], int i, int l) {
      Fq2Elem s = f.zero();
      for (int j = 0; j < n; ++j) {
        if (cond->P[i][j][0].is_zero()) continue;
        for (int m = 0; m < n; ++m) s += cond->P[i][j][0] * embed(X, j, m) * cond->Q[m][l][0];
      }
      return s;
    };
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        Fq2Elem cst = C[i][l] + sandwich(X0, i, l);
        Fq2Elem col[4];
        for (int v = 0; v < 4; ++v) col[v] = sandwich(Xb[v], i, l);
        L.push_back({col[0].a, col[1].a, col[2].a, col[3].a});
        rhs.push_back(F.neg(cst.a));
        L.push_back({col[0].b, col[1].b, col[2].b, col[3].b});
        rhs.push_back(F.neg(cst.b));
      }
  }
  std::vector<TruncMat2> out;
  for (const auto& x : detail::solve_fq(F, L, rhs, 4)) {
    TruncMat2 r = base;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Fq2Elem v = X0[i][j];
        for (int t = 0; t < 4; ++t)
          if (x[t]) v += f.make(x[t]) * Xb[t][i][j];
        r.at(i, j, k) = v;
      }
    out.push_back(std::move(r));
  }
  return out;
}

/// Unitary 2x2 matrices over F_{q^2}, by filtering all q^8 candidates.
inline std::vector<TruncMat2> unitary_level_one(int q) {
  const Fq2Field& f = Fq2Field::get(q);
  const int n = f.size();
  std::vector<TruncMat2> out;
  TruncMat2 h;
  h.k = 1;
  h.c.assign(4, f.zero());
  for (long long idx = 0; idx < 1LL * n * n * n * n; ++idx) {
    long long t = idx;
    for (int e = 0; e < 4; ++e) {
      h.c[e] = f.from_index(static_cast<int>(t % n));
      t /= n;
    }
    if (is_unitary_trunc(h)) out.push_back(h);
  }
  return out;
}

/// All of U(W)(F_{q^2}[t]/(t^M)).
inline std::vector<TruncMat2> enumerate_unitary(int q, int M, long long budget = 50'000'000) {
  if (M < 1) throw UsageError("precision must be >= 1");
  auto cur = unitary_level_one(q);
  for (int k = 1; k < M; ++k) {
    if (static_cast<long long>(cur.size()) * q * q * q * q > budget)
      throw BudgetExceeded("unitary enumeration exceeds budget at level " + std::to_string(k + 1));
    std::vector<TruncMat2> next;
    for (const auto& h : cur)
      for (auto& l : unitary_lifts(h, {})) next.push_back(std::move(l));
    cur = std::move(next);
  }
  return cur;
}

// ---- determinant image of the stabilizer ----

struct ConductorOptions {
  int s_multiplier = 1;  // the trace-zero parameter is s_multiplier * eta
  long long budget = 20'000'000;
  int workers = 1;
};

struct ConductorReport {
  int a = 0, b = 0, q = 0, M = 0;
  int search_depth = 0;  // precision at which stabilizer membership is decided
  int s_multiplier = 1;
  int measured = -1;
  int expected = 0;
  long long frontier = 0;  // stabilizer residues mod t^M before completion
  long long nodes = 0;     // search nodes visited
  std::vector<long long> level_sizes;  // |level-j subgroup|, j = 0..M-1
  std::vector<long long> image_sizes;  // |image  cap  level-j subgroup|
  bool image_in_subgroup = false;
  bool subgroup_in_image = false;
  bool closed = false;
  U1Set image;
  bool ok() const { return measured == expected && image_in_subgroup && subgroup_in_image && closed; }
};

/// Measures the determinant image of Stab_H(L_V, L_W) for the explicit pair
/// with invariant (a, b), modulo t^M.
inline ConductorReport stabilizer_det_conductor(int a, int b, int q, int M, const ConductorOptions& opt = {}) {
  const int expected = std::min(a, 2 * b);
  if (M < 2) throw UsageError("precision must be >= 2");
  if (M < expected + 1) throw InsufficientPrecision("precision " + std::to_string(M) + " cannot show level " +
                                                    std::to_string(expected));
  const Fq2Field& f = Fq2Field::get(q);
  Fq2Elem s = f.from_int(opt.s_multiplier) * f.eta();
  auto [bv, bw] = explicit_pair_bases(a, b, s);
  const IntegralityCondition cv = make_condition(bv), cw = make_condition(bw);
  const std::vector<const IntegralityCondition*> conds{&cv, &cw};
  ConductorReport rep;
  rep.a = a, rep.b = b, rep.q = q, rep.M = M, rep.expected = expected, rep.s_multiplier = opt.s_multiplier;
  const int K = std::max({M, cv.depth, cw.depth});
  rep.search_depth = K;

  std::atomic<long long> nodes{0};
  auto charge = [&](long long n) {
    if ((nodes += n) > opt.budget) throw BudgetExceeded("stabilizer search exceeded " + std::to_string(opt.budget) + " nodes");
  };

  std::vector<TruncMat2> frontier;
  for (auto& h : unitary_level_one(q))
    if (satisfies_condition(cv, h) && satisfies_condition(cw, h)) frontier.push_back(std::move(h));
  charge(static_cast<long long>(frontier.size()));
  for (int k = 1; k < M; ++k) {
    std::vector<TruncMat2> next;
    for (const auto& h : frontier)
      for (auto& l : unitary_lifts(h, conds)) next.push_back(std::move(l));
    charge(static_cast<long long>(next.size()));
    frontier = std::move(next);
  }
  rep.frontier = static_cast<long long>(frontier.size());

  // Group residues by determinant; a class is in the image once one member
  // extends to a stabilizer residue at depth K.
  std::map<TruncatedSeries, std::vector<const TruncMat2*>> classes;
  for (const auto& h : frontier) classes[h.det(M)].push_back(&h);
  std::vector<std::pair<TruncatedSeries, std::vector<const TruncMat2*>>> work(classes.begin(), classes.end());
  std::vector<char> hit(work.size(), 0);

  auto extends = [&](auto&& self, const TruncMat2& h) -> bool {
    if (h.k >= K) return true;
    auto kids = unitary_lifts(h, conds);
    charge(static_cast<long long>(kids.size()));
    for (const auto& c : kids)
      if (self(self, c)) return true;
    return false;
  };
  std::atomic<size_t> next_class{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&]() {
    try {
      for (size_t i; (i = next_class++) < work.size();)
        for (const auto* h : work[i].second)
          if (extends(extends, *h)) {
            hit[i] = 1;
            break;
          }
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mu);
      if (!err) err = std::current_exception();
    }
  };
  const int nw = std::max(1, opt.workers);
  std::vector<std::thread> pool;
  for (int t = 1; t < nw; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  rep.nodes = nodes;

  for (size_t i = 0; i < work.size(); ++i)
    if (hit[i]) rep.image.insert(work[i].first);
  if (rep.image.size() <= 1) throw InsufficientPrecision("determinant image is trivial modulo t^" + std::to_string(M));

  rep.closed = true;
  for (const auto& x : rep.image)
    for (const auto& y : rep.image)
      if (!rep.image.count(x * y)) rep.closed = false;

  const U1Set all = norm_one_elements(q, M);
  rep.measured = rep.image.size() == all.size() ? 0 : M - 1;
  if (rep.measured != 0)
    for (const auto& x : rep.image) rep.measured = std::min(rep.measured, filtration_level(x));
  for (int j = 0; j < M; ++j) {
    U1Set lj = level_subgroup(j, q, M);
    rep.level_sizes.push_back(static_cast<long long>(lj.size()));
    long long n = 0;
    for (const auto& x : rep.image) n += lj.count(x);
    rep.image_sizes.push_back(n);
  }
  const U1Set target = level_subgroup(rep.measured, q, M);
  rep.image_in_subgroup = std::includes(target.begin(), target.end(), rep.image.begin(), rep.image.end());
  rep.subgroup_in_image = std::includes(rep.image.begin(), rep.image.end(), target.begin(), target.end());
  return rep;
}

}  // namespace hecke

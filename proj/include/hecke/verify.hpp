#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hecke/conductor/oracle.hpp"
#include "hecke/invariants/invariants.hpp"
#include "hecke/tensor/hecke_tensor.hpp"

namespace hecke {

/// Outcome of one check. "fail" is the only verdict that counts against a
/// run; "mismatch" marks a reported discrepancy in a customarily printed
/// value; "info" carries computed output with nothing to compare.
struct CheckRecord {
  std::string check_id;
  std::string paper_ref;
  std::string verdict;
  std::string expected;
  std::string computed;
  long long millis = 0;
  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct RunConfig {
  int q = 3;
  int radius = 6;
  int precision = 4;
  uint64_t budget = 20'000'000;
  int workers = 1;
  uint64_t seed = 2024;
  bool stable = false;

  void validate() const {
    if (q < 3 || q % 2 == 0) throw UsageError("q must be an odd prime power");
    if (!is_prime_power(q)) throw UsageError("q must be an odd prime power");
    if (radius < 2) throw UsageError("radius must be at least 2");
    if (precision < 2) throw UsageError("precision must be at least 2");
    if (workers < 1) throw UsageError("workers must be positive");
  }

  static bool is_prime_power(int n) {
    int p = 2;
    while (n % p) ++p;
    while (n % p == 0) n /= p;
    return n == 1;
  }
};

/// Collects records, timing each check body.
class Recorder {
 public:
  explicit Recorder(bool stable) : stable_(stable) {}

  /// Runs `body`, which returns {ok, expected, computed}; exceptions fail the check.
  template <class F>
  void check(const std::string& id, const std::string& ref, F body, const char* miss_verdict = "fail") {
    auto t0 = std::chrono::steady_clock::now();
    CheckRecord r{id, ref, "", "", "", 0};
    try {
      auto [ok, expected, computed] = body();
      r.verdict = ok ? "pass" : miss_verdict;
      r.expected = std::move(expected);
      r.computed = std::move(computed);
    } catch (const std::exception& e) {
      r.verdict = "fail";
      r.computed = std::string("error: ") + e.what();
    }
    r.millis = stable_ ? 0 : elapsed(t0);
    records_.push_back(std::move(r));
  }
  void info(const std::string& id, const std::string& ref, std::string computed) {
    records_.push_back({id, ref, "info", "", std::move(computed), 0});
  }

  std::vector<CheckRecord>& records() { return records_; }

 private:
  static long long elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  }
  bool stable_;
  std::vector<CheckRecord> records_;
};

using CheckResult = std::tuple<bool, std::string, std::string>;

namespace detail {

template <class M>
std::string map_text(const M& m) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [k, v] : m) {
    os << (first ? "" : ", ") << k << ": " << v;
    first = false;
  }
  os << "}";
  return os.str();
}

inline std::string inv_text(const std::map<Invariant, BigInt>& m) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : m) {
    os << (first ? "" : ", ") << k << ":" << v;
    first = false;
  }
  return os.str();
}

inline std::string q_tag(int q) { return "q=" + std::to_string(q); }

}  // namespace detail

// ---- 1: unit-sphere retraction multiplicities ----

inline void check_satake_multiplicities(Recorder& rec, const std::vector<int>& qs) {
  for (int q : qs)
    for (bool in_W : {false, true}) {
      rec.check(std::string("retraction-tally-") + (in_W ? "W" : "V") + "-" + detail::q_tag(q),
                in_W ? "unit-sphere multiplicities in B(W)" : "unit-sphere multiplicities in B(V)", [&] {
                  BigInt top = in_W ? BigInt(q) * q : BigInt(q) * q * q * q;
                  std::map<int, BigInt> want{{1, 1}, {0, q - 1}, {-1, top}};
                  auto got = retraction_tally(q, 1, in_W);
                  return CheckResult{got == want, detail::map_text(want), detail::map_text(got)};
                });
    }
}

// ---- 2: generator images under the twisted transform ----

inline void check_generator_images(Recorder& rec) {
  const LaurentQ q = LaurentQ::q();
  struct G {
    int a, b;
    SymbolPoly want;
    const char* ref;
  };
  std::vector<G> gens{{1, 0, SymbolPoly(q * q) * SymbolPoly::var(0) + SymbolPoly(q - 1), "image of t10"},
                      {0, 1, SymbolPoly(q) * SymbolPoly::var(1) + SymbolPoly(q - 1), "image of t01"}};
  for (const auto& g : gens) {
    std::string id = "satake-t" + std::to_string(g.a) + std::to_string(g.b);
    rec.check(id, g.ref, [&] {
      TorusElement got = satake_symbolic(g.a, g.b);
      TorusElement want = s_to_torus(g.want);
      return CheckResult{got == want, g.want.to_string(kSNames), torus_to_string(got)};
    });
    rec.check(id + "-held-out", std::string(g.ref) + " at a held-out q", [&] {
      auto sym = torus_at(satake_symbolic(g.a, g.b), kHeldOutQ);
      auto num = torus_at(satake_numeric(g.a, g.b, kHeldOutQ), 0);
      return CheckResult{sym == num, "numeric tally at q=" + std::to_string(kHeldOutQ), sym == num ? "equal" : "differs"};
    });
  }
}

// ---- 3: Hecke polynomial round trip ----

inline void check_hecke_round_trip(Recorder& rec) {
  auto ref = reference_hecke_basis();
  auto th = hecke_polynomial_torus();
  rec.check("hecke-h2-round-trip", "H2 in Hecke generators maps to its torus form", [&] {
    auto img = satake_of_hecke(ref.h2);
    return CheckResult{img == th.h2, th.h2.to_string("z", torus_to_string), img.to_string("z", torus_to_string)};
  });
  rec.check("hecke-h4-round-trip", "H4 in Hecke generators maps to its torus form", [&] {
    auto img = satake_of_hecke(ref.h4);
    return CheckResult{img == th.h4, "torus H4", img == th.h4 ? "equal" : img.to_string("z", torus_to_string)};
  });
  rec.check("hecke-basis-derivation", "pullback of the torus form to Hecke generators", [&] {
    auto d = hecke_polynomial_hecke_basis();
    bool ok = d.h2 == ref.h2 && d.h4 == ref.h4;
    return CheckResult{ok, zpoly_to_string(ref.h2, kHeckeNames), zpoly_to_string(d.h2, kHeckeNames)};
  });
  rec.check("ratio-product-identity", "product over eigenvalue ratios equals H2 H4", [&] {
    auto r = ratio_identity_check();
    bool ok = r.identity && r.weyl_invariant && r.constant_term == TorusElement(LaurentQ::q_pow(18));
    return CheckResult{ok, "identity, Weyl invariant, constant q^18",
                       std::string(r.identity ? "identity" : "no identity") + ", constant " + torus_to_string(r.constant_term)};
  });
  auto stated = reference_coset_forms();
  auto diffs = coset_form_diffs();
  for (size_t i = 0; i < diffs.size(); ++i) {
    const auto& d = diffs[i];
    rec.check(
        "coset-form-" + d.name, "double-coset form of " + d.name,
        [&] { return CheckResult{d.match, cosets_to_string(stated[i].value), cosets_to_string(d.derived)}; }, "mismatch");
  }
}

// ---- 4: generator rules against brute-force tree tallies ----

inline void check_operator_oracle(Recorder& rec, const std::vector<int>& qs, int max_sum = 3) {
  for (int q : qs)
    for (int a = 0; a <= max_sum; ++a)
      for (int b = 0; a + b <= max_sum; ++b)
        for (Op o : {Op::T10, Op::T01}) {
          std::string name = o == Op::T10 ? "t10" : "t01";
          std::string id = "oracle-" + name + "-(" + std::to_string(a) + "," + std::to_string(b) + ")-" + detail::q_tag(q);
          rec.check(id, "generator action on invariants", [&] {
            auto want = brute_force_operator(o, a, b, q);
            auto got = apply_op(o, InvariantVector({a, b})).at(q);
            return CheckResult{got == want, detail::inv_text(want), detail::inv_text(got)};
          });
        }
  rec.check(
      "t01-printed-target", "raising term of t01",
      [&] {
        auto got = apply_t01(InvariantVector({0, 1})).coeff({0, 2});
        return CheckResult{false, "+ q^2 (no invariant attached)", "(" + got.to_string() + ")*(a,b+1)"};
      },
      "mismatch");
}

// ---- 5: distribution relation ----

inline void check_distribution(Recorder& rec) {
  auto r = distribution_check();
  const std::string ref = "H(1) applied to (0,0)";
  rec.check("distribution-support", ref, [&] {
    std::ostringstream os;
    for (const auto& [x, c] : r.value.terms()) os << x;
    return CheckResult{r.support_ok, "within the nine listed invariants", os.str()};
  });
  rec.check("distribution-divisible", ref, [&] {
    std::ostringstream os;
    for (const auto& x : r.not_divisible) os << x;
    return CheckResult{r.divisible, "all coefficients in q(q+1)Z[q]", r.divisible ? "all divisible" : "not: " + os.str()};
  });
  auto printed = distribution_printed();
  for (Invariant x : {Invariant{2, 1}, Invariant{0, 3}}) {
    std::ostringstream id;
    id << "distribution-coeff" << x;
    rec.check(id.str(), ref, [&] {
      auto got = r.value.coeff(x);
      return CheckResult{got == printed.at(x), printed.at(x).to_string(), got.to_string()};
    });
  }
  for (const auto& d : r.diffs) {
    if ((d.x.a == 2 && d.x.b == 1) || (d.x.a == 0 && d.x.b == 3)) continue;
    std::ostringstream id;
    id << "distribution-printed" << d.x;
    rec.check(
        id.str(), ref, [&] { return CheckResult{d.match, d.printed.to_string(), d.computed.to_string()}; }, "mismatch");
  }
}

// ---- 6: conductor oracle ----

inline void check_conductor_case(Recorder& rec, int a, int b, int q, int M, const RunConfig& cfg) {
  std::string id = "conductor-(" + std::to_string(a) + "," + std::to_string(b) + ")-" + detail::q_tag(q) + "-M" +
                   std::to_string(M);
  rec.check(id, "determinant conductor of the stabilizer", [&] {
    ConductorOptions o;
    o.budget = cfg.budget;
    o.workers = cfg.workers;
    auto r = stabilizer_det_conductor(a, b, q, M, o);
    std::string got = "c=" + std::to_string(r.measured) + (r.image_in_subgroup ? "" : ", image too large") +
                      (r.subgroup_in_image ? "" : ", image too small") + ", |image|=" + std::to_string(r.image.size());
    return CheckResult{r.ok() && r.measured == std::min(a, 2 * b), "c=" + std::to_string(std::min(a, 2 * b)), got};
  });
}

inline void check_conductor_grid(Recorder& rec, const RunConfig& cfg) {
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 2; ++b) check_conductor_case(rec, a, b, 3, std::min(a, 2 * b) + 2, cfg);
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 2; ++b) check_conductor_case(rec, a, b, 5, std::min(a, 2 * b) + 2, cfg);
}

// ---- 7: unit-group indices ----

inline void check_unit_indices(Recorder& rec) {
  for (int q : {3, 5})
    for (int c : {1, 2})
      rec.check("unit-index-c" + std::to_string(c) + "-" + detail::q_tag(q), "index of the level-c unit subgroup", [&] {
        BigInt want = unit_index(c).eval_integer(q);
        BigInt got = unit_index_measured(c, q, c + 1);
        return CheckResult{got == want, want.str(), got.str()};
      });
}

// ---- 8: composed products ----

inline void check_tensor(Recorder& rec, uint64_t seed) {
  auto pairs = random_monic_pairs(seed, 50);
  rec.check("tensor-oracle", "composed product against companion Kronecker charpoly", [&] {
    int agree = 0;
    for (const auto& [a, b] : pairs) agree += composed_product(a, b) == composed_product_oracle(a, b);
    return CheckResult{agree == 50, "50/50", std::to_string(agree) + "/50"};
  });
  rec.check("tensor-certificate", "ideal membership certificate", [&] {
    int ok = 0;
    for (const auto& [a, b] : pairs) {
      auto c = membership_certificate(a, b);
      ok += c.verify() && c.degrees_ok();
    }
    return CheckResult{ok == 50, "50/50", std::to_string(ok) + "/50"};
  });
  rec.check("tensor-hecke", "U(3) factor composed with U(2) factor", [&] {
    auto r = hecke_tensor_check();
    return CheckResult{r.match && r.certificate_ok, "H2 H4", r.match ? "equal" : r.composed.to_string("z", torus_to_string)};
  });
}

// ---- 9: structural invariants ----

inline void check_structure(Recorder& rec) {
  for (int q : {3, 5}) {
    rec.check("tree-degrees-" + detail::q_tag(q), "vertex degrees", [&] {
      TreePair t(q, 2);
      auto s = t.stats(2);
      const long long q3 = 1LL * q * q * q;
      bool ok = true;
      for (const auto& [d, n] : s.black_degree) ok = ok && d == q3 + 1;
      for (const auto& [d, n] : s.white_degree) ok = ok && d == q + 1;
      for (const auto& [d, n] : s.black_w_degree) ok = ok && d == q + 1;
      for (const auto& [d, n] : s.white_w_degree) ok = ok && d == q + 1;
      long long total = 0;
      for (auto v : s.vertices_per_depth) total += v;
      ok = ok && s.edges == total - 1;
      return CheckResult{ok, "black " + std::to_string(q3 + 1) + ", white " + std::to_string(q + 1),
                         "black " + detail::map_text(s.black_degree) + ", white " + detail::map_text(s.white_degree)};
    });
  }
  rec.check("tree-bipartite-q=3", "ball of radius 1 is a bipartite tree", [&] {
    TreePair t(3, 1);
    std::set<Vertex> seen{t.base()};
    std::queue<Vertex> todo;
    todo.push(t.base());
    long long edges = 0;
    bool ok = true;
    while (!todo.empty()) {
      Vertex v = todo.front();
      todo.pop();
      if (v.depth() >= t.max_depth()) continue;
      for (const auto& n : t.neighbors(v)) {
        ok = ok && n.black() != v.black();
        if (n.depth() < v.depth()) continue;
        ++edges;
        ok = ok && seen.insert(n).second;
        todo.push(n);
      }
    }
    ok = ok && edges == static_cast<long long>(seen.size()) - 1;
    return CheckResult{ok, "acyclic, colors alternate", std::to_string(seen.size()) + " vertices"};
  });
  const LaurentQ q = LaurentQ::q();
  rec.check("mass-conservation", "coefficient sums q^4+q and q^2+q", [&] {
    bool ok = true;
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; a + b <= 4; ++b) {
        ok = ok && apply_t10(InvariantVector({a, b})).coefficient_sum() == LaurentQ::q_pow(4) + q;
        ok = ok && apply_t01(InvariantVector({a, b})).coefficient_sum() == q * q + q;
      }
    return CheckResult{ok, "q^4 + q, q^2 + q", ok ? "holds for a+b<=4" : "violated"};
  });
  rec.check("generators-commute", "t10 t01 = t01 t10 on invariants", [&] {
    bool ok = true;
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; a + b <= 4; ++b) {
        InvariantVector v({a, b});
        ok = ok && apply_t10(apply_t01(v)) == apply_t01(apply_t10(v));
      }
    return CheckResult{ok, "commute for a+b<=4", ok ? "commute" : "differ"};
  });
  rec.check("weyl-invariance", "Satake images are Weyl invariant", [&] {
    bool ok = true;
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; b <= 2; ++b) ok = ok && is_weyl_invariant(satake_symbolic(a, b));
    auto th = hecke_polynomial_torus();
    for (const auto* p : {&th.h2, &th.h4})
      for (const auto& c : p->coeffs()) ok = ok && is_weyl_invariant(c);
    return CheckResult{ok, "invariant", ok ? "invariant" : "not invariant"};
  });
}

// ---- the acceptance suite ----

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<void(Recorder&, const RunConfig&)> run;
};

inline std::vector<Criterion> acceptance_criteria() {
  return {
      {1, "retraction multiplicities", 1, [](Recorder& r, const RunConfig&) { check_satake_multiplicities(r, {3, 5}); }},
      {2, "generator Satake images", 5, [](Recorder& r, const RunConfig&) { check_generator_images(r); }},
      {3, "Hecke polynomial round trip", 1, [](Recorder& r, const RunConfig&) { check_hecke_round_trip(r); }},
      {4, "generator rules vs tree tallies", 30, [](Recorder& r, const RunConfig&) { check_operator_oracle(r, {3, 5}); }},
      {5, "distribution relation", 1, [](Recorder& r, const RunConfig&) { check_distribution(r); }},
      {6, "conductor oracle", 300, [](Recorder& r, const RunConfig& c) { check_conductor_grid(r, c); }},
      {7, "unit-group indices", 10, [](Recorder& r, const RunConfig&) { check_unit_indices(r); }},
      {8, "composed products", 10, [](Recorder& r, const RunConfig& c) { check_tensor(r, c.seed); }},
      {9, "structural invariants", 30, [](Recorder& r, const RunConfig&) { check_structure(r); }},
  };
}

inline bool any_failed(const std::vector<CheckRecord>& rs) {
  return std::any_of(rs.begin(), rs.end(), [](const CheckRecord& r) { return r.verdict == "fail"; });
}

}  // namespace hecke

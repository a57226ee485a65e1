#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hecke/error.hpp"

namespace hecke {

/// Tree vertex named by its path of child indices from the base vertex.
/// Even depth is black (hyperspecial), odd depth white (special).
struct Vertex {
  std::vector<int> path;

  int depth() const { return static_cast<int>(path.size()); }
  bool black() const { return path.size() % 2 == 0; }
  std::string id() const {
    if (path.empty()) return "base";
    std::string s;
    for (size_t i = 0; i < path.size(); ++i) s += (i ? "." : "") + std::to_string(path[i]);
    return s;
  }
  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

/// Orbit invariant (a, b) of a hyperspecial pair, in black-distance units.
struct Invariant {
  int a = 0;
  int b = 0;
  friend bool operator==(const Invariant&, const Invariant&) = default;
  friend auto operator<=>(const Invariant&, const Invariant&) = default;
};

struct WeightedVertex {
  Vertex v;
  uint64_t weight = 1;
};

/// Which end of the fixed apartment a retraction folds from.
enum class End { Plus, Minus };

/// The tree B(V) of U(3) at an inert place with the subtree B(W) of U(2)
/// marked. Children of each vertex, in index order:
///   base (black):   q^3 + 1 white children, indices 0..q in W;
///   other black:    q^3 white children (its parent is the remaining
///                   neighbor); if in W, indices 0..q-1 are in W;
///   white:          q black children, in W iff the white vertex is.
/// Thus black vertices have q^3+1 neighbors (q+1 in W when in W) and white
/// vertices q+1 neighbors, all in W when the white vertex is.
///
/// The fixed apartment is the line through the rays 0,0,0,... and 1,0,0,...
/// It lies in B(W). Apartment positions are in half-edge units, positive
/// along the first ray.
///
/// Vertices are generated on demand; only depths up to 2*radius are valid.
class TreePair {
 public:
  TreePair(int q, int radius) : q_(q), radius_(radius) {
    if (q < 2) throw UsageError("q must be at least 2");
    if (radius < 1) throw UsageError("radius must be positive");
  }

  int q() const { return q_; }
  int radius() const { return radius_; }
  int max_depth() const { return 2 * radius_; }

  Vertex base() const { return {}; }

  int child_count(const Vertex& v) const {
    if (!v.black()) return q_;
    long long q3 = static_cast<long long>(q_) * q_ * q_;
    return static_cast<int>(v.path.empty() ? q3 + 1 : q3);
  }
  /// Number of children of v lying in W (given v's own membership).
  int children_in_W(const Vertex& v, bool v_in_W) const {
    if (!v_in_W) return 0;
    if (!v.black()) return q_;
    return v.path.empty() ? q_ + 1 : q_;
  }
  bool child_in_W(const Vertex& v, bool v_in_W, int c) const { return c < children_in_W(v, v_in_W); }

  bool in_W(const Vertex& v) const {
    Vertex cur;
    bool w = true;
    for (int c : v.path) {
      w = child_in_W(cur, w, c);
      if (!w) return false;
      cur.path.push_back(c);
    }
    return true;
  }

  Vertex child(const Vertex& v, int c) const {
    if (v.depth() + 1 > max_depth()) throw RadiusExceeded("vertex beyond generation radius");
    if (c < 0 || c >= child_count(v)) throw UsageError("child index out of range");
    Vertex r = v;
    r.path.push_back(c);
    return r;
  }
  Vertex parent(const Vertex& v) const {
    if (v.path.empty()) throw UsageError("base vertex has no parent");
    Vertex r = v;
    r.path.pop_back();
    return r;
  }

  void check(const Vertex& v) const {
    if (v.depth() > max_depth()) throw RadiusExceeded("vertex " + v.id() + " beyond radius " + std::to_string(radius_));
    Vertex cur;
    for (int c : v.path) {
      if (c < 0 || c >= child_count(cur)) throw UsageError("invalid vertex " + v.id());
      cur.path.push_back(c);
    }
  }

  std::vector<Vertex> neighbors(const Vertex& v) const {
    check(v);
    if (v.depth() + 1 > max_depth()) throw RadiusExceeded("neighbors of " + v.id() + " leave the generated radius");
    std::vector<Vertex> out;
    if (!v.path.empty()) out.push_back(parent(v));
    for (int c = 0; c < child_count(v); ++c) out.push_back(child(v, c));
    return out;
  }
  std::vector<Vertex> neighbors_in_W(const Vertex& v) const {
    std::vector<Vertex> out;
    for (auto& n : neighbors(v))
      if (in_W(n)) out.push_back(std::move(n));
    return out;
  }

  /// Distance in half-edge units (edges have length 1/2).
  static int half_distance(const Vertex& x, const Vertex& y) {
    size_t l = 0;
    while (l < x.path.size() && l < y.path.size() && x.path[l] == y.path[l]) ++l;
    return x.depth() + y.depth() - 2 * static_cast<int>(l);
  }
  /// Distance between black vertices, an integer.
  static int distance(const Vertex& x, const Vertex& y) {
    int h = half_distance(x, y);
    if (h % 2) throw UsageError("black-to-black distance requested for mixed colors");
    return h / 2;
  }

  /// Nearest vertex of B(W): the last ancestor of x (possibly x) in W.
  Vertex project_to_W(const Vertex& x) const {
    Vertex cur;
    bool w = true;
    for (int c : x.path) {
      w = child_in_W(cur, w, c);
      if (!w) break;
      cur.path.push_back(c);
    }
    return cur;
  }

  Invariant invariant(const Vertex& xv, const Vertex& xw) const {
    if (!xv.black() || !xw.black()) throw UsageError("invariants are defined for black vertices");
    if (!in_W(xw)) throw UsageError("second vertex must lie in W");
    Vertex p = project_to_W(xv);
    return {distance(xv, p), distance(p, xw)};
  }

  /// One representative pair with invariant (a, b): x_W lies b steps along
  /// the apartment ray inside W, x_V leaves W at the base through a white
  /// neighbor outside W and walks a steps away.
  std::pair<Vertex, Vertex> make_configuration(int a, int b) const {
    if (a < 0 || b < 0) throw UsageError("invariant components must be nonnegative");
    if (a + b + 1 > radius_) throw RadiusExceeded("configuration (" + std::to_string(a) + "," + std::to_string(b) +
                                                  ") needs radius " + std::to_string(a + b + 1));
    Vertex xw;
    xw.path.assign(static_cast<size_t>(2 * b), 0);
    Vertex xv;
    if (a > 0) {
      xv.path.assign(static_cast<size_t>(2 * a), 0);
      xv.path[0] = q_ + 1;
    }
    return {xv, xw};
  }

  // ---- apartment and retractions ----

  static Vertex apartment_vertex(int pos) {
    Vertex v;
    if (pos > 0) v.path.assign(static_cast<size_t>(pos), 0);
    if (pos < 0) {
      v.path.assign(static_cast<size_t>(-pos), 0);
      v.path[0] = 1;
    }
    return v;
  }
  /// Deepest ancestor of x on the apartment and its position.
  static std::pair<Vertex, int> apartment_gate(const Vertex& x) {
    if (x.path.empty()) return {Vertex{}, 0};
    int first = x.path[0];
    if (first != 0 && first != 1) return {Vertex{}, 0};
    size_t k = 1;
    while (k < x.path.size() && x.path[k] == 0) ++k;
    int pos = first == 0 ? static_cast<int>(k) : -static_cast<int>(k);
    return {apartment_vertex(pos), pos};
  }
  static std::optional<int> apartment_position(const Vertex& x) {
    auto [g, pos] = apartment_gate(x);
    if (g.depth() == x.depth()) return pos;
    return std::nullopt;
  }
  /// Canonical retraction from an end onto the apartment: the apartment
  /// vertex at distance dist(x, gate) from the gate, on the side away from
  /// the end. Returns the position in half-edge units.
  static int retract(const Vertex& x, End end) {
    auto [g, pos] = apartment_gate(x);
    int d = half_distance(x, g);
    return end == End::Plus ? pos - d : pos + d;
  }

  // ---- spheres ----

  /// All vertices at exactly `half_r` half-edges from x, optionally staying
  /// inside B(W) (x must then be in W).
  std::vector<Vertex> sphere(const Vertex& x, int half_r, bool within_W = false) const {
    std::vector<Vertex> out;
    walk(x, half_r, within_W, false, {}, [&](const Vertex& v, uint64_t) { out.push_back(v); });
    return out;
  }

  /// The same sphere with interchangeable children collapsed: siblings that
  /// are not on the apartment or on a path to one of `marks` and share their
  /// W-membership have isomorphic subtrees for every quantity computed here
  /// (distances to marked points, projections, retractions), so only the
  /// smallest index of each class is visited, carrying the class size.
  std::vector<WeightedVertex> sphere_weighted(const Vertex& x, int half_r, bool within_W,
                                              const std::vector<Vertex>& marks) const {
    std::vector<WeightedVertex> out;
    walk(x, half_r, within_W, true, marks, [&](const Vertex& v, uint64_t w) { out.push_back({v, w}); });
    return out;
  }

  /// Visit the sphere without materializing it.
  template <class F>
  void walk(const Vertex& x, int half_r, bool within_W, bool collapse, const std::vector<Vertex>& marks,
            F&& visit) const {
    check(x);
    if (x.depth() + half_r > max_depth())
      throw RadiusExceeded("sphere of radius " + std::to_string(half_r) + " half-edges around " + x.id() +
                           " leaves radius " + std::to_string(radius_));
    if (within_W && !in_W(x)) throw UsageError("sphere inside W around a vertex outside W");
    // Membership of each ancestor of x (index = depth).
    std::vector<bool> anc_w(x.path.size() + 1, true);
    {
      Vertex cur;
      for (size_t i = 0; i < x.path.size(); ++i) {
        anc_w[i + 1] = anc_w[i] && child_in_W(cur, anc_w[i], x.path[i]);
        cur.path.push_back(x.path[i]);
      }
    }
    Vertex cur = x;
    // Phase 1: go up j steps (j = 0..min(r, depth)), then down r - j steps
    // avoiding the child we came from.
    for (int j = 0; j <= std::min(half_r, x.depth()); ++j) {
      if (j > 0) cur.path.pop_back();
      bool w = anc_w[cur.path.size()];
      if (within_W && !w) break;  // ancestors outside W cannot occur since x in W
      int excluded = j > 0 ? x.path[cur.path.size()] : -1;
      descend(cur, w, half_r - j, excluded, within_W, collapse, marks, 1, visit);
    }
  }

  /// Vertex and edge counts of the ball of the given radius (in black-distance
  /// units) around the base, with degree histograms, computed from the
  /// branching rules level by level.
  struct Stats {
    std::vector<long long> vertices_per_depth;
    std::vector<long long> w_vertices_per_depth;
    std::map<int, long long> black_degree, white_degree;
    std::map<int, long long> black_w_degree, white_w_degree;
    long long edges = 0;
  };
  Stats stats(int r) const {
    if (r > radius_) throw RadiusExceeded("stats radius exceeds generation radius");
    Stats s;
    // Classes at each depth: (black?, is base?, in W) -> count.
    struct Cls {
      bool base;
      bool w;
      long long n;
    };
    std::vector<Cls> level{{true, true, 1}};
    for (int d = 0; d <= 2 * r; ++d) {
      long long tot = 0, totw = 0;
      std::vector<Cls> next;
      for (const auto& c : level) {
        tot += c.n;
        if (c.w) totw += c.n;
        Vertex rep;
        if (!c.base) rep.path.assign(static_cast<size_t>(d), 0);
        int kids = child_count(rep);
        int kids_w = children_in_W(rep, c.w);
        int deg = kids + (c.base ? 0 : 1);
        int deg_w = c.w ? kids_w + (c.base ? 0 : 1) : 0;
        bool black = d % 2 == 0;
        (black ? s.black_degree : s.white_degree)[deg] += c.n;
        if (c.w) (black ? s.black_w_degree : s.white_w_degree)[deg_w] += c.n;
        if (d < 2 * r) {
          if (kids_w) next.push_back({false, true, c.n * kids_w});
          if (kids - kids_w) next.push_back({false, false, c.n * (kids - kids_w)});
        }
      }
      s.vertices_per_depth.push_back(tot);
      s.w_vertices_per_depth.push_back(totw);
      if (d > 0) s.edges += tot;
      level = std::move(next);
    }
    return s;
  }

 private:
  static bool is_mark_prefix(const Vertex& v, const std::vector<Vertex>& marks) {
    // Apartment rays.
    bool on_ray = true;
    for (size_t i = 0; i < v.path.size(); ++i)
      if (!(v.path[i] == 0 || (i == 0 && v.path[i] == 1))) {
        on_ray = false;
        break;
      }
    if (on_ray) return true;
    for (const auto& m : marks)
      if (m.path.size() >= v.path.size() && std::equal(v.path.begin(), v.path.end(), m.path.begin())) return true;
    return false;
  }

  template <class F>
  void descend(Vertex& v, bool v_w, int steps, int excluded, bool within_W, bool collapse,
               const std::vector<Vertex>& marks, uint64_t weight, F& visit) const {
    if (steps == 0) {
      visit(v, weight);
      return;
    }
    const int kids = child_count(v);
    const int kids_w = children_in_W(v, v_w);
    const int limit = within_W ? kids_w : kids;
    if (!collapse) {
      for (int c = 0; c < limit; ++c) {
        if (c == excluded) continue;
        v.path.push_back(c);
        descend(v, c < kids_w, steps - 1, -1, within_W, collapse, marks, weight, visit);
        v.path.pop_back();
      }
      return;
    }
    // Distinguished children are visited individually; the rest collapse
    // into one representative per W-class.
    std::vector<int> special;
    for (int c : {0, 1}) {
      if (c >= limit) continue;
      v.path.push_back(c);
      if (is_mark_prefix(v, marks)) special.push_back(c);
      v.path.pop_back();
    }
    for (const auto& m : marks)
      if (m.path.size() > v.path.size() && std::equal(v.path.begin(), v.path.end(), m.path.begin())) {
        int c = m.path[v.path.size()];
        if (c < limit && std::find(special.begin(), special.end(), c) == special.end()) special.push_back(c);
      }
    std::sort(special.begin(), special.end());
    for (int c : special) {
      if (c == excluded) continue;
      v.path.push_back(c);
      descend(v, c < kids_w, steps - 1, -1, within_W, collapse, marks, weight, visit);
      v.path.pop_back();
    }
    auto is_skipped = [&](int c) {
      return c == excluded || std::binary_search(special.begin(), special.end(), c);
    };
    auto run_class = [&](int lo, int hi, bool cw) {
      int rep = -1;
      uint64_t n = 0;
      for (int c = lo; c < hi; ++c) {
        if (is_skipped(c)) continue;
        if (rep < 0) rep = c;
        ++n;
        // Counting beyond a handful of skipped indices is arithmetic.
        if (c > lo + static_cast<int>(special.size()) + 2) {
          n += static_cast<uint64_t>(hi - c - 1);
          for (int s : special)
            if (s > c && s < hi) --n;
          if (excluded > c && excluded < hi && !std::binary_search(special.begin(), special.end(), excluded)) --n;
          break;
        }
      }
      if (rep < 0 || n == 0) return;
      uint64_t w;
      if (__builtin_mul_overflow(weight, n, &w)) throw ArithmeticOverflow("sphere weight");
      v.path.push_back(rep);
      descend(v, cw, steps - 1, -1, within_W, collapse, marks, w, visit);
      v.path.pop_back();
    };
    run_class(0, kids_w, true);
    if (!within_W) run_class(kids_w, kids, false);
  }

  int q_;
  int radius_;
};

}  // namespace hecke

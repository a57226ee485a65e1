#pragma once

#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "hecke/error.hpp"

namespace hecke {

/// Residue field parameters: q = p^e with p an odd prime, plus a fixed
/// non-square of F_q used to present F_{q^2} = F_q[eta]/(eta^2 - nonsquare).
struct FqParams {
  int p = 0;
  int e = 0;
  int q = 0;
  int nonsquare = 0;
};

namespace detail {

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

/// Table-driven F_q. Elements are encoded as integers 0..q-1 holding the
/// base-p digits of a polynomial over Z/p reduced by a fixed irreducible
/// modulus; 0 and 1 encode the field's zero and one.
class FiniteField {
 public:
  explicit FiniteField(int q) {
    if (q < 3 || q > 4096) throw UsageError("residue field size out of range: " + std::to_string(q));
    int p = 2;
    while (q % p != 0) ++p;
    int e = 0;
    for (int r = q; r > 1; r /= p) {
      if (r % p != 0) throw UsageError(std::to_string(q) + " is not a prime power");
      ++e;
    }
    if (p == 2) throw UsageError("residue characteristic must be odd");
    params_.p = p;
    params_.e = e;
    params_.q = q;
    modulus_ = find_irreducible(p, e);
    build_tables();
    params_.nonsquare = find_nonsquare();
  }

  const FqParams& params() const { return params_; }
  int p() const { return params_.p; }
  int q() const { return params_.q; }
  int nonsquare() const { return params_.nonsquare; }
  /// Coefficients (low to high, monic) of the modulus defining F_q over Z/p.
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int x, int y) const { return add_[x * q() + y]; }
  int mul(int x, int y) const { return mul_[x * q() + y]; }
  int neg(int x) const { return neg_[x]; }
  int sub(int x, int y) const { return add(x, neg(y)); }
  int inv(int x) const {
    if (x == 0) throw NonUnit("inverse of zero in F_" + std::to_string(q()));
    return inv_[x];
  }
  int pow(int x, long long n) const {
    int r = 1;
    while (n > 0) {
      if (n & 1) r = mul(r, x);
      x = mul(x, x);
      n >>= 1;
    }
    return r;
  }
  /// Image of the integer n under Z -> F_q.
  int from_int(long long n) const {
    long long r = n % p();
    if (r < 0) r += p();
    return static_cast<int>(r);
  }
  int half() const { return inv(from_int(2)); }

 private:
  static std::vector<int> digits(int x, int p, int e) {
    std::vector<int> d(e);
    for (int i = 0; i < e; ++i, x /= p) d[i] = x % p;
    return d;
  }

  // Smallest monic irreducible of degree e over Z/p (brute force: no monic
  // factor of degree <= e/2).
  static std::vector<int> find_irreducible(int p, int e) {
    if (e == 1) return {0, 1};
    auto poly_mod_is_zero = [p](std::vector<int> num, const std::vector<int>& den) {
      int dn = static_cast<int>(den.size()) - 1;
      for (int i = static_cast<int>(num.size()) - 1; i >= dn; --i) {
        int c = num[i] % p;
        if (c == 0) continue;
        for (int j = 0; j <= dn; ++j) num[i - dn + j] = ((num[i - dn + j] - c * den[j]) % p + p) % p;
      }
      for (int v : num)
        if (v % p != 0) return false;
      return true;
    };
    int count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (int code = 0; code < count; ++code) {
      std::vector<int> f = digits(code, p, e);
      f.push_back(1);
      bool irreducible = true;
      for (int d = 1; d <= e / 2 && irreducible; ++d) {
        int dc = 1;
        for (int i = 0; i < d; ++i) dc *= p;
        for (int g = 0; g < dc; ++g) {
          std::vector<int> h = digits(g, p, d);
          h.push_back(1);
          if (poly_mod_is_zero(f, h)) {
            irreducible = false;
            break;
          }
        }
      }
      if (irreducible) return f;
    }
    throw Error("no irreducible polynomial found");
  }

  void build_tables() {
    const int q = params_.q, p = params_.p, e = params_.e;
    add_.assign(static_cast<size_t>(q) * q, 0);
    mul_.assign(static_cast<size_t>(q) * q, 0);
    neg_.assign(q, 0);
    inv_.assign(q, 0);
    auto encode = [p, e](const std::vector<int>& d) {
      int x = 0;
      for (int i = e - 1; i >= 0; --i) x = x * p + d[i];
      return x;
    };
    for (int x = 0; x < q; ++x) {
      auto dx = digits(x, p, e);
      std::vector<int> dn(e);
      for (int i = 0; i < e; ++i) dn[i] = (p - dx[i]) % p;
      neg_[x] = static_cast<uint16_t>(encode(dn));
      for (int y = 0; y < q; ++y) {
        auto dy = digits(y, p, e);
        std::vector<int> s(e);
        for (int i = 0; i < e; ++i) s[i] = (dx[i] + dy[i]) % p;
        add_[x * q + y] = static_cast<uint16_t>(encode(s));
        std::vector<int> prod(2 * e - 1, 0);
        for (int i = 0; i < e; ++i)
          for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + dx[i] * dy[j]) % p;
        for (int i = 2 * e - 2; i >= e; --i) {
          int c = prod[i];
          if (c == 0) continue;
          for (int j = 0; j <= e; ++j) prod[i - e + j] = ((prod[i - e + j] - c * modulus_[j]) % p + p) % p;
        }
        prod.resize(e);
        mul_[x * q + y] = static_cast<uint16_t>(encode(prod));
      }
    }
    for (int x = 1; x < q; ++x)
      for (int y = 1; y < q; ++y)
        if (mul_[x * q + y] == 1) {
          inv_[x] = static_cast<uint16_t>(y);
          break;
        }
  }

  int find_nonsquare() const {
    const int minus_one = neg(1);
    for (int x = 2; x < q(); ++x)
      if (pow(x, (q() - 1) / 2) == minus_one) return x;
    throw Error("no non-square found");
  }

  FqParams params_;
  std::vector<int> modulus_;
  std::vector<uint16_t> add_, mul_, neg_, inv_;
};

class Fq2Field;

/// Element a + b*eta of F_{q^2}. Carries a pointer to its (process-lifetime)
/// field so that arithmetic operators need no extra context.
struct Fq2Elem {
  const Fq2Field* field = nullptr;
  uint16_t a = 0;
  uint16_t b = 0;

  bool is_zero() const { return a == 0 && b == 0; }
  bool in_base_field() const { return b == 0; }
  friend bool operator==(const Fq2Elem& x, const Fq2Elem& y) { return x.a == y.a && x.b == y.b; }
  friend auto operator<=>(const Fq2Elem& x, const Fq2Elem& y) {
    if (auto c = x.a <=> y.a; c != 0) return c;
    return x.b <=> y.b;
  }
};

/// F_{q^2} = F_q[eta]/(eta^2 - nonsquare); conjugation is eta -> -eta.
class Fq2Field {
 public:
  /// Shared instance for residue cardinality q; instances live for the whole
  /// process so element back-pointers never dangle.
  static const Fq2Field& get(int q) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Fq2Field>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(q);
    if (it == registry.end()) it = registry.emplace(q, std::unique_ptr<Fq2Field>(new Fq2Field(q))).first;
    return *it->second;
  }

  const FiniteField& base() const { return base_; }
  int q() const { return base_.q(); }
  /// Number of elements, q^2.
  int size() const { return q() * q(); }

  Fq2Elem make(int a, int b = 0) const {
    assert(a >= 0 && a < q() && b >= 0 && b < q());
    return Fq2Elem{this, static_cast<uint16_t>(a), static_cast<uint16_t>(b)};
  }
  Fq2Elem zero() const { return make(0, 0); }
  Fq2Elem one() const { return make(1, 0); }
  Fq2Elem eta() const { return make(0, 1); }
  Fq2Elem from_int(long long n) const { return make(base_.from_int(n), 0); }
  /// Enumeration index in [0, q^2): a + q*b.
  Fq2Elem from_index(int i) const { return make(i % q(), i / q()); }
  int index(const Fq2Elem& x) const { return x.a + q() * x.b; }

  Fq2Elem add(const Fq2Elem& x, const Fq2Elem& y) const {
    return make(base_.add(x.a, y.a), base_.add(x.b, y.b));
  }
  Fq2Elem sub(const Fq2Elem& x, const Fq2Elem& y) const {
    return make(base_.sub(x.a, y.a), base_.sub(x.b, y.b));
  }
  Fq2Elem neg(const Fq2Elem& x) const { return make(base_.neg(x.a), base_.neg(x.b)); }
  Fq2Elem mul(const Fq2Elem& x, const Fq2Elem& y) const {
    const auto& F = base_;
    int ac = F.mul(x.a, y.a);
    int bd = F.mul(x.b, y.b);
    int ad = F.mul(x.a, y.b);
    int bc = F.mul(x.b, y.a);
    return make(F.add(ac, F.mul(bd, F.nonsquare())), F.add(ad, bc));
  }
  Fq2Elem conj(const Fq2Elem& x) const { return make(x.a, base_.neg(x.b)); }
  /// N(x) = x * conj(x), an element of F_q.
  int norm(const Fq2Elem& x) const {
    const auto& F = base_;
    return F.sub(F.mul(x.a, x.a), F.mul(F.nonsquare(), F.mul(x.b, x.b)));
  }
  Fq2Elem inv(const Fq2Elem& x) const {
    if (x.is_zero()) throw NonUnit("inverse of zero in F_" + std::to_string(size()));
    int n_inv = base_.inv(norm(x));
    Fq2Elem c = conj(x);
    return make(base_.mul(c.a, n_inv), base_.mul(c.b, n_inv));
  }
  Fq2Elem pow(Fq2Elem x, long long n) const {
    Fq2Elem r = one();
    while (n > 0) {
      if (n & 1) r = mul(r, x);
      x = mul(x, x);
      n >>= 1;
    }
    return r;
  }
  Fq2Elem random(std::mt19937_64& rng) const {
    std::uniform_int_distribution<int> d(0, size() - 1);
    return from_index(d(rng));
  }

 private:
  explicit Fq2Field(int q) : base_(q) {}
  FiniteField base_;
};

inline Fq2Elem operator+(const Fq2Elem& x, const Fq2Elem& y) { return x.field->add(x, y); }
inline Fq2Elem operator-(const Fq2Elem& x, const Fq2Elem& y) { return x.field->sub(x, y); }
inline Fq2Elem operator-(const Fq2Elem& x) { return x.field->neg(x); }
inline Fq2Elem operator*(const Fq2Elem& x, const Fq2Elem& y) { return x.field->mul(x, y); }
inline Fq2Elem operator/(const Fq2Elem& x, const Fq2Elem& y) { return x.field->mul(x, x.field->inv(y)); }
inline Fq2Elem& operator+=(Fq2Elem& x, const Fq2Elem& y) { return x = x + y; }
inline Fq2Elem& operator-=(Fq2Elem& x, const Fq2Elem& y) { return x = x - y; }
inline Fq2Elem& operator*=(Fq2Elem& x, const Fq2Elem& y) { return x = x * y; }

/// The q-power Frobenius of F_{q^2}: a + b*eta -> a - b*eta.
inline Fq2Elem conj(const Fq2Elem& x) { return x.field->conj(x); }
inline Fq2Elem inverse(const Fq2Elem& x) { return x.field->inv(x); }

inline std::ostream& operator<<(std::ostream& os, const Fq2Elem& x) {
  return os << '(' << x.a << '+' << x.b << "h)";
}

}  // namespace hecke

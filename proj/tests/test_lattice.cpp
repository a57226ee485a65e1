#include <gtest/gtest.h>

#include <random>

#include "hecke/lattice/hermitian.hpp"

using namespace hecke;

namespace {

LaurentMatrix diag_lattice(const Fq2Field& f, std::vector<int> exps, int prec) {
  auto m = lmat_zero(f, static_cast<int>(exps.size()), static_cast<int>(exps.size()));
  for (size_t i = 0; i < exps.size(); ++i) m[i][i] = BoundedLaurent::monomial(f.one(), exps[i]).truncated(prec);
  return m;
}

}  // namespace

TEST(Lattice, StandardIsSelfDual) {
  const auto& f = Fq2Field::get(3);
  auto l = HermitianLattice::standard(HermitianSpace::V(f), 8);
  EXPECT_TRUE(is_self_dual(l));
  auto w = HermitianLattice::standard(HermitianSpace::W(f), 8);
  EXPECT_TRUE(is_self_dual(w));
}

TEST(Lattice, DualScalesInversely) {
  const auto& f = Fq2Field::get(3);
  auto l = HermitianLattice(HermitianSpace::V(f), diag_lattice(f, {1, 0, 2}, 10));
  auto lhs = dual_lattice(l.scaled(1));
  auto rhs = dual_lattice(l).scaled(-1);
  EXPECT_TRUE(same_lattice(lhs, rhs));
  EXPECT_FALSE(same_lattice(l, dual_lattice(l)));
}

TEST(Lattice, ApartmentLatticeIsSelfDual) {
  const auto& f = Fq2Field::get(5);
  auto l = HermitianLattice(HermitianSpace::V(f), diag_lattice(f, {1, 0, -1}, 8));
  EXPECT_TRUE(is_self_dual(l));
  // Direct pairing check: Gram matrix is J.
  auto g = l.gram();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(g[i][j].coeff(0), i + j == 2 ? f.one() : f.zero());
}

TEST(Lattice, DualOfDualIsOriginal) {
  const auto& f = Fq2Field::get(3);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10; ++i) {
    auto h = random_unitary(HermitianSpace::V(f), 12, rng);
    auto base = HermitianLattice(HermitianSpace::V(f), diag_lattice(f, {2, -1, 0}, 12));
    auto l = base.transformed(lmat_from_series(h));
    EXPECT_TRUE(same_lattice(dual_lattice(dual_lattice(l)), l));
  }
}

TEST(Lattice, RelativePositionOnApartment) {
  const auto& f = Fq2Field::get(3);
  auto space = HermitianSpace::V(f);
  auto base = HermitianLattice::standard(space, 12);
  EXPECT_TRUE(relative_position(base, base).is_zero());
  for (int a = 0; a <= 4; ++a) {
    auto l = HermitianLattice(space, diag_lattice(f, {a, 0, -a}, 12));
    auto rp = relative_position(base, l);
    EXPECT_EQ(rp.r, (std::vector<int>{a, 0, -a}));
    EXPECT_EQ(rp.dist(), a);
    for (int b = 0; b <= 4; ++b) {
      auto m = HermitianLattice(space, diag_lattice(f, {b, 0, -b}, 12));
      EXPECT_EQ(relative_position(l, m).dist(), std::abs(a - b));
    }
  }
}

TEST(Lattice, RelativePositionAntisymmetric) {
  const auto& f = Fq2Field::get(3);
  std::mt19937_64 rng(2);
  auto space = HermitianSpace::V(f);
  for (int i = 0; i < 10; ++i) {
    auto h = lmat_from_series(random_unitary(space, 12, rng));
    auto l = HermitianLattice(space, diag_lattice(f, {1, 0, -1}, 12)).transformed(h);
    auto m = HermitianLattice(space, diag_lattice(f, {3, 1, -2}, 12));
    auto p = relative_position(l, m).r, q = relative_position(m, l).r;
    std::vector<int> neg_rev(q.rbegin(), q.rend());
    for (auto& x : neg_rev) x = -x;
    EXPECT_EQ(p, neg_rev);
    // Pivot choice does not change the multiset.
    EXPECT_EQ(relative_position(l, m, true).r, p);
  }
}

TEST(Lattice, RelativePositionUnitaryInvariance) {
  const auto& f = Fq2Field::get(3);
  std::mt19937_64 rng(3);
  auto space = HermitianSpace::V(f);
  Fq2Elem s = f.eta();
  for (int i = 0; i < 50; ++i) {
    auto h = random_unitary(space, 4, rng);
    ASSERT_TRUE(is_unitary(h, space));
    auto hl = lmat_from_series(h);
    auto p = explicit_lattice_pair(1, 0, s, 0);
    auto l = HermitianLattice::standard(space, 4);
    auto m = HermitianLattice(space, diag_lattice(f, {1, 0, -1}, 4));
    EXPECT_EQ(relative_position(l.transformed(hl), m.transformed(hl)), relative_position(l, m));
    EXPECT_EQ(relative_position(l.transformed(hl), p.lv.transformed(hl)), relative_position(l, p.lv));
  }
}

TEST(Lattice, UnitaryPreservesSelfDuality) {
  const auto& f = Fq2Field::get(3);
  std::mt19937_64 rng(4);
  auto space = HermitianSpace::V(f);
  for (int i = 0; i < 50; ++i) {
    auto h = lmat_from_series(random_unitary(space, 16, rng));
    for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 0}, {1, 2}, {2, 1}}) {
      auto p = explicit_lattice_pair(a, b, f.eta());
      EXPECT_TRUE(is_self_dual(p.lv.transformed(h)));
    }
  }
}

TEST(ExplicitPair, PairsAreSelfDualWithInvariant) {
  for (int q : {3, 5}) {
    const auto& f = Fq2Field::get(q);
    for (Fq2Elem s : {f.zero(), f.eta(), f.make(0, 2)}) {
      for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b) {
          auto p = explicit_lattice_pair(a, b, s);
          auto c = certify_pair(p);
          EXPECT_TRUE(c.consistent()) << a << "," << b;
          EXPECT_EQ(c.a(), a);
          EXPECT_EQ(c.b(), b);
          EXPECT_EQ(c.dist_v_to_w, a + b);
          // Witt-basis check: L_V basis pairs to an antidiagonal unit form.
          auto g = p.lv.gram();
          EXPECT_TRUE(g[2][2].certified_integral() && g[2][2].valuation() > 0);
          EXPECT_EQ(g[0][2].coeff(0), f.one());
        }
    }
  }
}

TEST(ExplicitPair, StandardAtOrigin) {
  const auto& f = Fq2Field::get(3);
  auto p = explicit_lattice_pair(0, 0, f.zero());
  EXPECT_TRUE(same_lattice(p.lv, HermitianLattice::standard(HermitianSpace::V(f), 6)));
  EXPECT_TRUE(same_lattice(p.lw, HermitianLattice::standard(HermitianSpace::W(f), 6)));
}

TEST(ExplicitPair, RejectsNonTraceZero) {
  const auto& f = Fq2Field::get(3);
  EXPECT_THROW(explicit_lattice_pair(1, 1, f.one()), TraceNotZero);
}

TEST(Unitary, IdentityTorusAndTraceTwist) {
  const auto& f = Fq2Field::get(3);
  auto V = HermitianSpace::V(f);
  EXPECT_TRUE(is_unitary(smat_identity(f, 3, 5), V));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    auto lam = TruncatedSeries::random(f, 5, rng);
    if (!lam.is_unit()) continue;
    auto w = TruncatedSeries::random(f, 5, rng);
    if (!w.is_unit()) continue;
    SeriesMatrix d = smat_identity(f, 3, 5);
    d[0][0] = lam;
    d[1][1] = w * w.conj().inverse();
    d[2][2] = lam.conj().inverse();
    EXPECT_TRUE(is_unitary(d, V));
    d[2][2] = lam.inverse();
    if (!(lam.conj() == lam)) {
      EXPECT_FALSE(is_unitary(d, V));
    }
    // gamma = -1/2 has trace -1, a unit.
    auto gamma = TruncatedSeries::constant(-f.make(f.base().half()), 5);
    auto a = trace_twist_matrix(lam, gamma);
    EXPECT_TRUE(is_unitary(a, V));
    EXPECT_EQ(det3(a), lam * lam.conj().inverse());
  }
  SeriesMatrix bad = smat_identity(f, 3, 5);
  bad[0][1] = TruncatedSeries::one(f, 5);
  EXPECT_FALSE(is_unitary(bad, V));
}

#include <gtest/gtest.h>

#include "hecke/conductor/oracle.hpp"

using namespace hecke;

TEST(Unitary, LevelOneOrder) {
  EXPECT_EQ(unitary_level_one(3).size(), 96u);
  EXPECT_EQ(unitary_level_one(5).size(), 720u);
}

TEST(Unitary, EnumerationCountsPerLevel) {
  EXPECT_EQ(enumerate_unitary(3, 1).size(), 96u);
  auto m2 = enumerate_unitary(3, 2);
  EXPECT_EQ(m2.size(), 7776u);
  EXPECT_EQ(enumerate_unitary(3, 3).size(), 96u * 81u * 81u);
  EXPECT_EQ(enumerate_unitary(5, 2).size(), 720u * 625u);
  // Every element is unitary, they are distinct, and the identity is present.
  std::set<TruncMat2> seen(m2.begin(), m2.end());
  EXPECT_EQ(seen.size(), m2.size());
  for (const auto& h : m2) ASSERT_TRUE(is_unitary_trunc(h));
  const auto& f = Fq2Field::get(3);
  TruncMat2 id{2, std::vector<Fq2Elem>(8, f.zero())};
  id.at(0, 0, 0) = f.one();
  id.at(1, 1, 0) = f.one();
  EXPECT_TRUE(seen.count(id));
}

TEST(Unitary, EnumerationBudget) { EXPECT_THROW(enumerate_unitary(3, 3, 1000), BudgetExceeded); }

TEST(NormOne, FiltrationLevel) {
  const auto& f = Fq2Field::get(3);
  EXPECT_EQ(filtration_level(TruncatedSeries::one(f, 4)), 3);
  TruncatedSeries lam(f, {f.one(), f.eta(), f.zero(), f.zero()});
  EXPECT_EQ(filtration_level(lam.conj() * lam.inverse()), 1);
  EXPECT_THROW(filtration_level(TruncatedSeries::constant(f.from_int(2) * f.one() + f.eta(), 3)), NotNormOne);
}

TEST(NormOne, ImageOfOcIsLevelSubgroup) {
  for (int c = 0; c <= 2; ++c) {
    auto img = norm_one_image(c, 3, 4);
    EXPECT_EQ(img, level_subgroup(c, 3, 4)) << c;
    int lo = 3;
    for (const auto& s : img) lo = std::min(lo, filtration_level(s));
    EXPECT_EQ(lo, c);
  }
  EXPECT_EQ(norm_one_elements(3, 4).size(), 4u * 27u);
}

TEST(NormOne, UnitIndices) {
  EXPECT_EQ(unit_index_measured(0, 3, 3), 1);
  EXPECT_EQ(unit_index_measured(1, 3, 3), 4);
  EXPECT_EQ(unit_index_measured(2, 3, 3), 12);
  EXPECT_EQ(unit_index_measured(1, 5, 3), 6);
  EXPECT_EQ(unit_index_measured(2, 5, 3), 30);
  EXPECT_THROW(unit_index_measured(2, 3, 2), InsufficientPrecision);
}

TEST(Conductor, Examples) {
  EXPECT_EQ(stabilizer_det_conductor(0, 0, 3, 2).measured, 0);
  EXPECT_EQ(stabilizer_det_conductor(1, 1, 3, 3).measured, 1);
  EXPECT_EQ(stabilizer_det_conductor(3, 1, 3, 4).measured, 2);
}

TEST(Conductor, GridAtThree) {
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 2; ++b) {
      auto r = stabilizer_det_conductor(a, b, 3, std::min(a, 2 * b) + 2);
      EXPECT_TRUE(r.ok()) << a << "," << b << " measured " << r.measured;
      EXPECT_TRUE(r.closed);
      EXPECT_EQ(r.measured, std::min(a, 2 * b));
    }
}

TEST(Conductor, GridAtFive) {
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 2; ++b) {
      auto r = stabilizer_det_conductor(a, b, 5, std::min(a, 2 * b) + 2);
      EXPECT_TRUE(r.ok()) << a << "," << b;
    }
}

TEST(Conductor, OtherTraceZeroParameter) {
  for (int m : {0, 2}) {
    ConductorOptions o;
    o.s_multiplier = m;
    EXPECT_EQ(stabilizer_det_conductor(2, 1, 3, 4, o).measured, 2);
    EXPECT_EQ(stabilizer_det_conductor(1, 2, 3, 3, o).measured, 1);
  }
}

TEST(Conductor, WorkersGiveSameImage) {
  ConductorOptions o;
  o.workers = 4;
  auto a = stabilizer_det_conductor(3, 2, 3, 5, o);
  auto b = stabilizer_det_conductor(3, 2, 3, 5);
  EXPECT_EQ(a.image, b.image);
  EXPECT_EQ(a.nodes, b.nodes);
}

TEST(Conductor, BudgetIsEnforced) {
  ConductorOptions o;
  o.budget = 100;
  EXPECT_THROW(stabilizer_det_conductor(0, 0, 3, 2, o), BudgetExceeded);
}

TEST(Conductor, PreimagesLieInMatchingOrder) {
  for (auto [a, b, M] : std::vector<std::array<int, 3>>{{0, 0, 2}, {1, 1, 3}, {2, 1, 3}, {1, 0, 2}}) {
    auto r = stabilizer_det_conductor(a, b, 3, M);
    EXPECT_TRUE(norm_one_preimages_exist(r.image, 3, M)) << a << "," << b;
  }
}

TEST(Conductor, StabilizerResiduesAreUnitaryAndStabilize) {
  const auto& f = Fq2Field::get(3);
  auto [bv, bw] = explicit_pair_bases(2, 1, f.eta());
  auto cv = make_condition(bv), cw = make_condition(bw);
  EXPECT_EQ(cv.depth, 4);
  EXPECT_EQ(cw.depth, 2);
  // Plain filtering of the whole level-2 group agrees with the solved lifts.
  auto all = enumerate_unitary(3, 2);
  std::set<TruncMat2> filtered;
  for (const auto& h : all)
    if (satisfies_condition(cv, h) && satisfies_condition(cw, h)) filtered.insert(h);
  std::set<TruncMat2> solved;
  for (const auto& h : unitary_level_one(3))
    if (satisfies_condition(cv, h) && satisfies_condition(cw, h))
      for (auto& l : unitary_lifts(h, {&cv, &cw})) solved.insert(l);
  EXPECT_EQ(filtered, solved);
  EXPECT_FALSE(solved.empty());
}

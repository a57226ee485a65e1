#include <gtest/gtest.h>

#include "hecke/report.hpp"

using namespace hecke;

TEST(Report, RecordsRoundTrip) {
  Recorder rec(false);
  check_hecke_round_trip(rec);
  check_unit_indices(rec);
  rec.info("note", "free text", "line with \"quotes\" and \\ backslash");
  auto& rs = rec.records();
  ASSERT_FALSE(rs.empty());
  EXPECT_EQ(parse_records(emit_records(rs)), rs);
}

TEST(Report, StableOutputIsByteIdentical) {
  RunConfig cfg;
  cfg.workers = 3;
  Recorder a(true), b(true);
  check_conductor_case(a, 2, 1, 3, 4, cfg);
  check_tensor(a, cfg.seed);
  cfg.workers = 1;
  check_conductor_case(b, 2, 1, 3, 4, cfg);
  check_tensor(b, cfg.seed);
  EXPECT_EQ(emit_records(a.records()), emit_records(b.records()));
}

TEST(Report, FailuresAndMismatches) {
  Recorder rec(true);
  rec.check("ok", "", [] { return CheckResult{true, "1", "1"}; });
  rec.check("typo", "", [] { return CheckResult{false, "1", "2"}; }, "mismatch");
  EXPECT_FALSE(any_failed(rec.records()));
  rec.check("throws", "", []() -> CheckResult { throw UsageError("bad"); });
  EXPECT_TRUE(any_failed(rec.records()));
  EXPECT_EQ(rec.records().back().computed, "error: UsageError: bad");
}

TEST(Report, ConfigValidation) {
  RunConfig c;
  EXPECT_NO_THROW(c.validate());
  c.q = 9;
  EXPECT_NO_THROW(c.validate());
  c.q = 15;
  EXPECT_THROW(c.validate(), UsageError);
  c.q = 4;
  EXPECT_THROW(c.validate(), UsageError);
  c = RunConfig{};
  c.precision = 1;
  EXPECT_THROW(c.validate(), UsageError);
}

TEST(Verify, AcceptanceSuiteHasNineCriteria) {
  auto cs = acceptance_criteria();
  ASSERT_EQ(cs.size(), 9u);
  for (size_t i = 0; i < cs.size(); ++i) EXPECT_EQ(cs[i].id, static_cast<int>(i) + 1);
}

TEST(Verify, FastCriteriaPass) {
  RunConfig cfg;
  for (const auto& c : acceptance_criteria()) {
    if (c.id == 4 || c.id == 6) continue;
    Recorder rec(true);
    c.run(rec, cfg);
    for (const auto& r : rec.records()) EXPECT_NE(r.verdict, "fail") << r.check_id << ": " << r.computed;
  }
}

// SPDX-License-Identifier: Apache-2.0

#include "edusat/batch.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace edusat {
namespace {

using namespace edusat::testing;

constexpr Engine kAll[] = {Engine::Naive, Engine::Dpll, Engine::Robdd};

void expect_same_answers(const BatchReport& a, const BatchReport& b) {
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    ASSERT_EQ(a.records[i].runs.size(), b.records[i].runs.size());
    for (std::size_t k = 0; k < a.records[i].runs.size(); ++k) {
      EXPECT_EQ(a.records[i].runs[k].engine, b.records[i].runs[k].engine);
      EXPECT_EQ(a.records[i].runs[k].result.models, b.records[i].runs[k].result.models) << i;
      EXPECT_EQ(a.records[i].runs[k].decisions, b.records[i].runs[k].decisions) << i;
    }
    EXPECT_EQ(a.records[i].agree, b.records[i].agree);
    EXPECT_EQ(a.records[i].verified, b.records[i].verified);
  }
  for (std::size_t k = 0; k < a.totals.size(); ++k) {
    EXPECT_EQ(a.totals[k].decisions, b.totals[k].decisions);
    EXPECT_EQ(a.totals[k].sat, b.totals[k].sat);
  }
}

TEST(BatchTest, GenerateUsesConsecutiveSeeds) {
  GenConfig cfg;
  cfg.seed = 40;
  const auto batch = generate_batch(cfg, 3);
  cfg.seed = 42;
  EXPECT_EQ(batch[2], gen_bool_tree(cfg));
}

TEST(BatchTest, ParallelMatchesSerial) {
  GenConfig cfg;
  cfg.seed = 7;
  const auto formulas = generate_batch(cfg, 200);
  for (SolveMode mode : {SolveMode::Single, SolveMode::All})
    expect_same_answers(run_batch(formulas, mode, kAll), run_batch_serial(formulas, mode, kAll));
}

TEST(BatchTest, EnginesAgreeAndVerify) {
  GenConfig cfg;
  cfg.num_vars = 3;
  cfg.depth = 3;
  const auto report = run_batch(generate_batch(cfg, 300), SolveMode::All, kAll);
  EXPECT_TRUE(report.all_agree());
  EXPECT_TRUE(report.all_verified());
  EXPECT_DOUBLE_EQ(report.accuracy(), 1.0);
  EXPECT_EQ(report.totals[0].sat, report.totals[2].sat);
  EXPECT_EQ(report.totals[2].decisions, 0u);
}

TEST(BatchTest, DisagreementIsReported) {
  // Single mode: engines may pick different models but must agree on the verdict.
  const std::vector<Formula> formulas{Or(X(0), X(1))};
  const auto single = run_batch_serial(formulas, SolveMode::Single, kAll);
  EXPECT_TRUE(single.all_agree());
  BatchReport tampered = single;
  tampered.records[0].agree = false;
  EXPECT_DOUBLE_EQ(tampered.accuracy(), 0.0);
}

TEST(EngineTest, Names) {
  for (Engine e : kAll) EXPECT_EQ(engine_from_string(to_string(e)), e);
  EXPECT_EQ(engine_from_string("cdcl"), std::nullopt);
}

}  // namespace
}  // namespace edusat

#include <gtest/gtest.h>

#include <string>

#include "vsalisp/bench.hpp"
#include "vsalisp/errors.hpp"

namespace vsalisp {
namespace {

SessionConfig bench_config(std::size_t dim) {
  SessionConfig c;
  c.dim = dim;
  c.seed = 7;
  return c;
}

TEST(Kanerva, EveryStoredSublistRetrievesItself) {
  const Report r = bench_kanerva(bench_config(1024));
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.cell(0, "sublists"), "50");
  EXPECT_DOUBLE_EQ(std::stod(r.cell(0, "self_retrieval_rate")), 1.0);
  // The permutation code's car would need the head atom, which is never the
  // nearest row: that is the flaw.
  EXPECT_LT(std::stod(r.cell(0, "car_retrieval_rate")), 0.5);
  EXPECT_NEAR(std::stod(r.cell(0, "mean_top_similarity")), 1.0, 1e-9);
}

TEST(Kanerva, RejectsEmptySizes) {
  KanervaOptions opts;
  opts.sublists = 0;
  EXPECT_THROW(bench_kanerva(bench_config(256), opts), Error);
}

TEST(Capacity, LookupIsExactOnCleanProbes) {
  CapacityOptions opts;
  opts.trace_counts = {16, 1024};
  opts.probes = 40;
  const Report r = bench_capacity(bench_config(2048), opts);
  ASSERT_EQ(r.rows.size(), 5u * opts.trace_counts.size());
  std::size_t lookup_rows = 0;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (r.cell(i, "memory") != "lookup") continue;
    ++lookup_rows;
    EXPECT_GE(std::stod(r.cell(i, "clean_accuracy")), 0.99) << r.cell(i, "traces");
  }
  EXPECT_EQ(lookup_rows, opts.trace_counts.size());
}

TEST(Capacity, LowTemperatureMhnBlendsPastItsLimit) {
  // At beta = 1 the softmax over unit traces is nearly flat, so once many
  // traces are stored the output is a blend that no longer points at the
  // probed row. Lookup stays exact on the same stores.
  CapacityOptions opts;
  opts.trace_counts = {16, 1024};
  opts.probes = 50;
  const Report r = bench_capacity(bench_config(512), opts);
  double mhn_small = -1, mhn_large = -1, lookup_large = -1;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const double acc = std::stod(r.cell(i, "clean_accuracy"));
    const bool large = r.cell(i, "traces") == "1024";
    if (r.cell(i, "memory") == "mhn") (large ? mhn_large : mhn_small) = acc;
    if (r.cell(i, "memory") == "lookup" && large) lookup_large = acc;
  }
  EXPECT_EQ(mhn_small, 1.0);
  EXPECT_LT(mhn_large, 0.9);
  EXPECT_EQ(lookup_large, 1.0);
}

TEST(UpdateRules, LargeGammaLeavesOtherRowsUntouched) {
  UpdateRuleOptions opts;
  opts.gammas = {0.0, 1000.0};
  opts.trials = 5;
  const Report r = bench_update_rules(bench_config(512), opts);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.cell(1, "gamma"), "1000");
  EXPECT_LE(std::stod(r.cell(1, "interference_max")), 1e-12);
  EXPECT_GT(std::stod(r.cell(1, "target_step")), 0.0);
  // gamma = 0 spreads the step over every row.
  EXPECT_GT(std::stod(r.cell(0, "interference_max")), 1e-3);
}

TEST(Report, TsvHasHeaderAndRows) {
  Report r;
  r.config = {{"kind", "demo"}};
  r.columns = {"a", "b"};
  r.rows = {{"1", "2"}};
  EXPECT_EQ(r.to_tsv(), "# kind: demo\na\tb\n1\t2\n");
  EXPECT_EQ(r.cell(0, "b"), "2");
  EXPECT_THROW(r.cell(0, "c"), Error);
}

TEST(Report, ByteIdenticalAcrossRuns) {
  const SessionConfig c = bench_config(512);
  EXPECT_EQ(bench_kanerva(c).to_tsv(), bench_kanerva(c).to_tsv());
  CapacityOptions cap;
  cap.trace_counts = {8, 32};
  cap.probes = 20;
  EXPECT_EQ(bench_capacity(c, cap).to_tsv(), bench_capacity(c, cap).to_tsv());
  UpdateRuleOptions up;
  up.trials = 3;
  EXPECT_EQ(bench_update_rules(c, up).to_tsv(), bench_update_rules(c, up).to_tsv());
}

}  // namespace
}  // namespace vsalisp

#include <gtest/gtest.h>

#include "seif/report.hpp"

using namespace seif;

namespace {

FlowResult result(Verdict v, int cycles, int steps, int backtracks, double wall) {
  FlowResult r;
  r.verdict = v;
  r.cycles = cycles;
  r.path.source = "s";
  r.path.sink = "t";
  r.path.hops.push_back(IFEdge{"s", "t", EdgeKind::Explicit, AssignClass::Nonblocking, {}, {}, 0});
  r.stats.step_calls = steps;
  r.stats.backtracks = backtracks;
  r.stats.wall_time_s = wall;
  return r;
}

std::vector<FlowResult> sample() {
  return {result(Verdict::FoundFromReset, 4, 10, 2, 0.5), result(Verdict::FoundIntermediate, 2, 6, 0, 0.25),
          result(Verdict::PrunedGlobal, 0, 0, 0, 0.125), result(Verdict::InfeasibleBounded, 0, 24, 6, 1.0)};
}

}  // namespace

TEST(Report, Aggregate) {
  Aggregate a = aggregate(sample());
  EXPECT_EQ(a.paths, 4);
  EXPECT_EQ(a.found, 2);
  EXPECT_DOUBLE_EQ(a.found_pct, 50.0);
  EXPECT_DOUBLE_EQ(a.avg_cycles, 3.0);
  EXPECT_EQ(a.backtracks, 8);
  EXPECT_EQ(a.step_calls, 40);
  EXPECT_DOUBLE_EQ(a.backtrack_frequency, 0.2);
  EXPECT_DOUBLE_EQ(a.avg_wall_time_s, 1.875 / 4);
  Aggregate empty = aggregate({});
  EXPECT_EQ(empty.paths, 0);
  EXPECT_DOUBLE_EQ(empty.backtrack_frequency, 0.0);
}

TEST(Report, HistogramCoversEveryVerdict) {
  auto h = histogram(sample());
  EXPECT_EQ(h.size(), kAllVerdicts.size());
  int total = 0;
  for (const auto& [v, n] : h) total += n;
  EXPECT_EQ(total, 4);
  EXPECT_EQ(h[Verdict::NotTrueFlow], 0);
}

TEST(Report, FoundByCycleIsCumulative) {
  EXPECT_EQ(found_by_cycle(sample(), 5), (std::vector<int>{0, 0, 1, 1, 2, 2}));
}

TEST(Report, ReportJsonOmitsWallTimes) {
  StrategyRun a{Strategy::StallBacktrack, 5, sample(), false};
  StrategyRun b = a;
  for (auto& r : b.results) r.stats.wall_time_s *= 3;
  ReportMeta meta;
  meta.top = "m";
  meta.sources = {"s"};
  EXPECT_EQ(dump(report_json(meta, {a})), dump(report_json(meta, {b})));
  EXPECT_EQ(dump(report_json(meta, {a})).find("wall"), std::string::npos);
  EXPECT_NE(dump(timing_json({a})), dump(timing_json({b})));
  auto j = report_json(meta, {a});
  EXPECT_EQ(j["runs"][0]["histogram"]["found_from_reset"], 1);
  EXPECT_EQ(j["strategy_aggregates"][0]["strategy"], "stall_backtrack");
}

TEST(Report, SweepCsv) {
  std::vector<SweepRow> rows = {{Strategy::StallUnsatCore, 0, 4, 1, 25.0}, {Strategy::StallUnsatCore, 1, 4, 3, 75.0}};
  EXPECT_EQ(sweep_csv(rows),
            "strategy,stall_bound,paths,found,found_pct\n"
            "stall_unsat_core,0,4,1,25.0000\n"
            "stall_unsat_core,1,4,3,75.0000\n");
}

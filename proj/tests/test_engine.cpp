#include <gtest/gtest.h>

#include "seif/engine.hpp"
#include "seif/simulator.hpp"
#include "seif/verilog.hpp"
#include "test_support.hpp"

using namespace seif;

namespace {

IFPath only_path(const DesignIR& ir, const std::string& source, const std::string& sink,
                 const std::string& text = "") {
  IFGraph g = build_if_graph(ir);
  auto en = enumerate_paths(g, source, sink);
  for (const auto& p : en.paths) {
    if (text.empty() || path_to_string(p) == text) return p;
  }
  throw std::runtime_error("path not found");
}

Expr condition(const DesignIR& ir, const std::string& text) {
  return elaborate_condition(ir, *verilog::parse_expression(text));
}

FlowResult run(const DesignIR& ir, const IFPath& p, Strategy s, bool from_reset = false) {
  SmtSession smt(test::solver_options());
  SearchConfig cfg;
  cfg.strategy = s;
  cfg.from_reset = from_reset;
  return analyze_path(ir, smt, p, cfg);
}

bool has_label(const std::vector<std::string>& core, const std::string& prefix) {
  for (const auto& l : core) {
    if (l.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

}  // namespace

TEST(Engine, StrategyNames) {
  EXPECT_EQ(parse_strategy("backtrack"), Strategy::BacktrackOnly);
  EXPECT_EQ(parse_strategy("unsat_core"), Strategy::StallUnsatCore);
  EXPECT_EQ(parse_strategy("continue_stall"), Strategy::ContinueStall);
  EXPECT_FALSE(parse_strategy("bogus").has_value());
  SearchConfig c;
  c.strategy = Strategy::StallBacktrack;
  EXPECT_EQ(c.effective_stall_bound(), 5);
  c.strategy = Strategy::StallUnsatCore;
  EXPECT_EQ(c.effective_stall_bound(), 4);
  c.strategy = Strategy::BacktrackOnly;
  c.stall_bound = 7;
  EXPECT_EQ(c.effective_stall_bound(), 0);
}

TEST(Engine, GlobalPruneToy2) {
  DesignIR ir = test::load_corpus("toy2.v");
  SmtSession smt(test::solver_options());
  auto segs = segment_path(only_path(ir, "secret", "led2"));
  PruneResult pr = prune_global(ir, smt, segs);
  EXPECT_FALSE(pr.keep);
  EXPECT_EQ(pr.segment, 0);
  EXPECT_TRUE(has_label(pr.core, "seg0/h0/"));
  EXPECT_TRUE(has_label(pr.core, "seg0/h1/"));
  EXPECT_TRUE(prune_global(ir, smt, segment_path(only_path(test::load_corpus("toy1.v"), "secret", "led"))).keep);

  IFPath single;
  single.source = "x";
  single.sink = "y";
  single.hops.push_back(IFEdge{"x", "y", EdgeKind::Explicit, AssignClass::Nonblocking, {}, {}, 0});
  EXPECT_TRUE(prune_global(ir, smt, segment_path(single)).keep);
}

TEST(Engine, CycleBoundary) {
  DesignIR ir = test::load_corpus("toy1.v");
  SmtSession smt(test::solver_options());
  auto segs = segment_path(only_path(ir, "secret", "led"));
  auto reset = cycle_boundary_prune(ir, smt, init_state(ir, StartMode::Reset), segs[0], 0);
  EXPECT_FALSE(reset.feasible);
  EXPECT_TRUE(has_label(reset.core, "c0/seg0/"));
  EXPECT_TRUE(cycle_boundary_prune(ir, smt, init_state(ir, StartMode::Free), segs[0], 0).feasible);
  SymbolicState s3 = init_state(ir, StartMode::Reset);
  s3.regs["state"] = constant(2, 3);
  EXPECT_TRUE(cycle_boundary_prune(ir, smt, s3, segs[0], 0).feasible);
}

TEST(Engine, StallStep) {
  SmtSession smt(test::solver_options());
  DesignIR ir = test::load_corpus("toy_stalling.v");
  SymbolicExecutor ex(ir, smt);
  SymbolicState s = init_state(ir, StartMode::Free);
  StallResult r = stall_step(ex, s, "guard0");
  ASSERT_FALSE(r.successors.empty());
  for (const auto& n : r.successors) {
    EXPECT_TRUE(n.history.back().stall);
    for (const auto& l : n.history.back().lines) {
      EXPECT_NE(l.line, 19);
      EXPECT_NE(l.line, 17);
    }
    // guard0 keeps its value
    EXPECT_TRUE(structurally_equal(n.regs.at("guard0"), s.regs.at("guard0")));
  }

  DesignIR nw = test::load_text(
      "module m(clk, a, q, r);\n  input clk, a;\n  output reg q = 0;\n  output reg r = 0;\n"
      "  always @(posedge clk) begin\n    q <= a;\n    r <= 0;\n  end\nendmodule\n");
  SymbolicExecutor ex2(nw, smt);
  StallResult none = stall_step(ex2, init_state(nw, StartMode::Free), "");
  EXPECT_EQ(none.successors.size(), ex2.step_cycle(init_state(nw, StartMode::Free)).successors.size());
  StallResult stuck = stall_step(ex2, init_state(nw, StartMode::Free), "r");
  EXPECT_TRUE(stuck.cannot_stall_here);
  EXPECT_TRUE(stuck.successors.empty());
}

TEST(Engine, Toy1FoundFromResetInFourCycles) {
  DesignIR ir = test::load_corpus("toy1.v");
  FlowResult r = run(ir, only_path(ir, "secret", "led"), Strategy::StallUnsatCore);
  ASSERT_EQ(r.verdict, Verdict::FoundFromReset);
  EXPECT_EQ(r.cycles, 4);
  ASSERT_TRUE(r.trace.has_value());
  ASSERT_EQ(r.trace->cycles(), 4);
  for (const auto& step : r.trace->steps) EXPECT_EQ(step.at("enable"), 1u);
  EXPECT_TRUE(r.replay_confirmed);
  EXPECT_TRUE(differential_replay(ir, *r.trace, "secret", "led").flow_confirmed);
  EXPECT_EQ(r.stall_cycles, (std::vector<int>{0, 1, 2}));
}

TEST(Engine, Toy1StallingStrategiesAgree) {
  DesignIR ir = test::load_corpus("toy1.v");
  IFPath p = only_path(ir, "secret", "led");
  for (Strategy s : {Strategy::ContinueStall, Strategy::StallBacktrack, Strategy::StallUnsatCore}) {
    FlowResult r = run(ir, p, s, true);
    EXPECT_EQ(r.verdict, Verdict::FoundFromReset) << strategy_name(s);
    EXPECT_EQ(r.cycles, 4) << strategy_name(s);
  }
  // without stalling the only realization starts from state == 3
  EXPECT_EQ(run(ir, p, Strategy::BacktrackOnly).verdict, Verdict::FoundIntermediate);
  EXPECT_EQ(run(ir, p, Strategy::BacktrackOnly, true).verdict, Verdict::InfeasibleBounded);
}

TEST(Engine, Toy2PrunedWithoutExecution) {
  DesignIR ir = test::load_corpus("toy2.v");
  FlowResult r = run(ir, only_path(ir, "secret", "led2"), Strategy::StallUnsatCore);
  EXPECT_EQ(r.verdict, Verdict::PrunedGlobal);
  EXPECT_EQ(r.stats.step_calls, 0);
  EXPECT_EQ(r.core_segment, 0);
}

TEST(Engine, StallingDesign) {
  DesignIR ir = test::load_corpus("toy_stalling.v");
  IFPath p = only_path(ir, "secret", "led");
  FlowResult r = run(ir, p, Strategy::StallUnsatCore);
  ASSERT_EQ(r.verdict, Verdict::FoundFromReset);
  EXPECT_FALSE(r.stall_cycles.empty());
  for (int c : r.stall_cycles) EXPECT_EQ(r.trace->steps.at(c).at("clear"), 0u);
  EXPECT_TRUE(r.replay_confirmed);
  EXPECT_EQ(run(ir, p, Strategy::StallBacktrack).verdict, Verdict::FoundFromReset);
  EXPECT_FALSE(is_found(run(ir, p, Strategy::BacktrackOnly).verdict));
}

TEST(Engine, SemanticPruning) {
  DesignIR xs = test::load_corpus("xor_self.v");
  EXPECT_EQ(run(xs, only_path(xs, "x", "y"), Strategy::StallUnsatCore).verdict, Verdict::NotTrueFlow);

  auto verdicts = [](const char* file) {
    DesignIR ir = test::load_corpus(file);
    IFGraph g = build_if_graph(ir);
    std::set<Verdict> out;
    SmtSession smt(test::solver_options());
    for (const auto& p : enumerate_paths(g, "x", std::string("z")).paths) {
      out.insert(analyze_path(ir, smt, p, SearchConfig{}).verdict);
    }
    return out;
  };
  EXPECT_EQ(verdicts("reconv_case1.v"), std::set<Verdict>{Verdict::NotTrueFlow});
  EXPECT_EQ(verdicts("reconv_case2.v"), std::set<Verdict>{Verdict::NotTrueFlow});
  EXPECT_EQ(verdicts("reconv_case3.v"), std::set<Verdict>{Verdict::FoundFromReset});
}

TEST(Engine, SemanticCheckDirect) {
  DesignIR ir = test::load_text(
      "module m(clk, x, y);\n  input clk;\n  input [1:0] x;\n  output reg [1:0] y = 0;\n"
      "  always @(posedge clk) y <= x;\nendmodule\n");
  SmtSession smt(test::solver_options());
  SymbolicExecutor ex(ir, smt);
  auto succ = ex.step_cycle(init_state(ir, StartMode::Reset)).successors;
  ASSERT_EQ(succ.size(), 1u);
  SemanticCheck sc = semantic_check(ir, smt, succ[0], "x", "y");
  EXPECT_TRUE(sc.true_flow);
  EXPECT_FALSE(sc.unknown);
}

TEST(Engine, ResetCheck) {
  DesignIR ir = test::load_corpus("toy1.v");
  SmtSession smt(test::solver_options());
  SymbolicState s = init_state(ir, StartMode::Free);
  EXPECT_TRUE(reset_check(ir, smt, s).from_reset);
  s.pc.push_back({"needs3", eq(s.regs.at("state"), constant(2, 3))});
  EXPECT_FALSE(reset_check(ir, smt, s).from_reset);
}

TEST(Engine, CheckProperty) {
  DesignIR ir = test::load_corpus("toy1.v");
  IFGraph g = build_if_graph(ir);
  auto violations = [&](const std::string& pre) {
    auto sa = check_property(ir, g, "secret", "led", condition(ir, pre), SearchConfig{},
                             test::solver_options());
    int n = 0;
    for (const auto& r : sa.results) n += is_violation(r) ? 1 : 0;
    return n;
  };
  EXPECT_EQ(violations("1"), 1);
  EXPECT_EQ(violations("enable == 0"), 0);
  EXPECT_EQ(violations("state != 3"), 0);
}

TEST(Engine, AnalyzeSourceIsDeterministicAcrossJobs) {
  DesignIR ir = test::load_corpus("multi_guard.v");
  IFGraph g = build_if_graph(ir);
  AnalysisLimits one, four;
  four.jobs = 4;
  auto a = analyze_source(ir, g, "secret", std::nullopt, SearchConfig{}, test::solver_options(), one);
  auto b = analyze_source(ir, g, "secret", std::nullopt, SearchConfig{}, test::solver_options(), four);
  ASSERT_EQ(a.results.size(), b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    EXPECT_EQ(a.results[i].verdict, b.results[i].verdict);
    EXPECT_EQ(a.results[i].cycles, b.results[i].cycles);
    EXPECT_EQ(a.results[i].stats.step_calls, b.results[i].stats.step_calls);
  }
  EXPECT_THROW(analyze_source(ir, g, "cnt", std::nullopt, SearchConfig{}, test::solver_options()), Error);
}

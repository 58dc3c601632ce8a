#include <gtest/gtest.h>

#include "seif/simulator.hpp"
#include "test_support.hpp"

using namespace seif;

namespace {

Valuation in(std::initializer_list<std::pair<const std::string, Value>> v) { return Valuation(v); }

}  // namespace

TEST(Simulator, Toy1FirstTransition) {
  DesignIR ir = test::load_corpus("toy1.v");
  ConcreteState s0 = reset_state(ir);
  auto st = sim_step(ir, s0, in({{"enable", 1}, {"secret", 1}}));
  EXPECT_EQ(st.next.regs.at("state"), 1u);
  EXPECT_EQ(st.next.regs.at("prev"), 0u);
  EXPECT_EQ(st.next.regs.at("guard"), 0u);
  EXPECT_EQ(st.values.at("led"), 0u);
  EXPECT_EQ(st.next.cycle, 1);
}

TEST(Simulator, Toy1HoldsWithoutEnable) {
  DesignIR ir = test::load_corpus("toy1.v");
  auto st = sim_step(ir, reset_state(ir), in({{"enable", 0}, {"secret", 1}}));
  EXPECT_EQ(st.next.regs, reset_state(ir).regs);
}

TEST(Simulator, Toy1FourStepSequence) {
  DesignIR ir = test::load_corpus("toy1.v");
  ConcreteState s = reset_state(ir);
  const Value expect_state[] = {1, 2, 3, 0};
  const Value expect_prev[] = {0, 1, 2, 3};
  const Value expect_guard[] = {0, 0, 0, 1};
  for (int c = 0; c < 4; ++c) {
    s = sim_step(ir, s, in({{"enable", 1}, {"secret", 1}})).next;
    EXPECT_EQ(s.regs.at("state"), expect_state[c]);
    EXPECT_EQ(s.regs.at("prev"), expect_prev[c]);
    EXPECT_EQ(s.regs.at("guard"), expect_guard[c]);
  }
  EXPECT_EQ(sim_observe(ir, s, in({{"enable", 0}, {"secret", 0}})).at("led"), 1u);
}

TEST(Simulator, ExecutedPathMatchesCfg) {
  DesignIR ir = test::load_corpus("toy1.v");
  auto st = sim_step(ir, reset_state(ir), in({{"enable", 1}, {"secret", 0}}));
  ASSERT_EQ(st.cfg_paths.size(), 1u);
  const auto& path = ir.processes[0].cfg.paths().at(st.cfg_paths[0]);
  EXPECT_EQ(path.lines, st.lines);
}

TEST(Simulator, InputWidthIsChecked) {
  DesignIR ir = test::load_corpus("toy1.v");
  try {
    sim_step(ir, reset_state(ir), in({{"enable", 2}, {"secret", 0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WidthMismatch);
  }
  EXPECT_THROW(sim_step(ir, reset_state(ir), in({{"enable", 1}})), Error);
}

TEST(Simulator, DifferentialReplayToy1) {
  DesignIR ir = test::load_corpus("toy1.v");
  InputTrace t;
  t.initial = reset_state(ir).regs;
  for (int c = 0; c < 4; ++c) t.steps.push_back(in({{"enable", 1}, {"secret", 1}}));
  t.observe = in({{"enable", 0}, {"secret", 1}});
  auto r = differential_replay(ir, t, "secret", "led");
  EXPECT_TRUE(r.flow_confirmed);
  EXPECT_EQ(r.original, 1u);
  EXPECT_EQ(r.alternate, 0u);

  InputTrace empty;
  empty.initial = reset_state(ir).regs;
  EXPECT_FALSE(differential_replay(ir, empty, "secret", "led").flow_confirmed);
}

TEST(Simulator, TraceJsonlRoundTrip) {
  InputTrace t;
  t.initial = {{"r", 3}};
  t.from_reset = false;
  t.steps = {in({{"a", 1}}), in({{"a", 0}})};
  t.observe = in({{"a", 1}});
  InputTrace back = InputTrace::from_jsonl(t.to_jsonl());
  EXPECT_EQ(back.initial, t.initial);
  EXPECT_EQ(back.from_reset, false);
  EXPECT_EQ(back.steps, t.steps);
  EXPECT_EQ(back.observe, t.observe);
}

TEST(BruteForce, Toy1NeedsFourCycles) {
  DesignIR ir = test::load_corpus("toy1.v");
  auto r4 = brute_force_flows(ir, "secret", "led", 4);
  EXPECT_TRUE(r4.exists);
  EXPECT_EQ(r4.cycles, 4);
  EXPECT_FALSE(brute_force_flows(ir, "secret", "led", 3).exists);
}

TEST(BruteForce, Toy2HasNoFlowToLed2) {
  DesignIR ir = test::load_corpus("toy2.v");
  EXPECT_FALSE(brute_force_flows(ir, "secret", "led2", 6).exists);
}

TEST(BruteForce, XorSelfHasNoFlow) {
  DesignIR ir = test::load_corpus("xor_self.v");
  EXPECT_FALSE(brute_force_flows(ir, "x", "y", 4).exists);
}

TEST(BruteForce, ReconvergentCases) {
  EXPECT_FALSE(brute_force_flows(test::load_corpus("reconv_case1.v"), "x", "z", 6).exists);
  EXPECT_FALSE(brute_force_flows(test::load_corpus("reconv_case2.v"), "x", "z", 6).exists);
  EXPECT_TRUE(brute_force_flows(test::load_corpus("reconv_case3.v"), "x", "z", 6).exists);
  EXPECT_TRUE(brute_force_flows(test::load_corpus("reconv_case4.v"), "x", "z", 6).exists);
}

TEST(BruteForce, GuardRejectsLargeDesigns) {
  DesignIR ir = test::load_text(
      "module big(clk, a, q);\n  input clk;\n  input [7:0] a;\n  output reg [7:0] q = 0;\n"
      "  always @(posedge clk) q <= a;\nendmodule\n");
  try {
    brute_force_flows(ir, "a", "q", 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
  }
}

TEST(BruteForce, StallBlockedLinesExcludeSelfLoops) {
  DesignIR ir = test::load_corpus("toy_stalling.v");
  auto blocked = stall_blocked_lines(ir, "guard0");
  std::set<int> lines;
  for (const auto& l : blocked) lines.insert(l.line);
  EXPECT_EQ(lines, (std::set<int>{17, 19}));
}

TEST(BruteForce, Toy1Prev2StillLeaks) {
  // state == 3 with prev == 2 is reachable: three enabled cycles, then one
  // with enable low latches the secret while prev stays 2.
  DesignIR ir = test::load_corpus("toy1_prev2.v");
  auto r = brute_force_flows(ir, "secret", "led", 16);
  EXPECT_TRUE(r.exists);
  EXPECT_EQ(r.cycles, 4);
  InputTrace t;
  t.initial = reset_state(ir).regs;
  for (int c = 0; c < 3; ++c) t.steps.push_back(in({{"enable", 1}, {"secret", 0}}));
  t.steps.push_back(in({{"enable", 0}, {"secret", 1}}));
  t.observe = in({{"enable", 0}, {"secret", 1}});
  EXPECT_TRUE(differential_replay(ir, t, "secret", "led").flow_confirmed);
}

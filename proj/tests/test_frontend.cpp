#include <gtest/gtest.h>

#include <filesystem>

#include "seif/design.hpp"
#include "seif/verilog.hpp"
#include "test_support.hpp"

using namespace seif;
namespace fs = std::filesystem;

namespace {

ErrorKind error_of(const std::string& text, const std::string& top = "") {
  try {
    test::load_text(text, top);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ErrorKind::Config;
}

Value eval_const(const Expr& e) {
  return evaluate(e, [](const Symbol&) -> std::optional<Value> { return std::nullopt; });
}

}  // namespace

TEST(Parser, CorpusRoundTripsThroughPrinter) {
  int files = 0;
  for (const auto& entry : fs::directory_iterator(SEIF_CORPUS_DIR)) {
    if (entry.path().extension() != ".v") continue;
    ++files;
    verilog::SourceUnit u;
    u.files.push_back({entry.path().string(), test::read_file(entry.path().string())});
    verilog::Ast a = verilog::parse(u);
    std::string printed;
    for (const auto& m : a.modules) printed += verilog::print(m);
    verilog::SourceUnit again;
    again.files.push_back({"printed", printed});
    verilog::Ast b = verilog::parse(again);
    EXPECT_TRUE(verilog::same_structure(a, b)) << entry.path();
  }
  EXPECT_GE(files, 8);
}

TEST(Parser, Toy1Shape) {
  verilog::SourceUnit u;
  u.files.push_back({"toy1.v", test::read_file(test::corpus_path("toy1.v"))});
  auto ast = verilog::parse(u);
  ASSERT_EQ(ast.modules.size(), 1u);
  const auto& m = ast.modules[0];
  EXPECT_EQ(m.name, "toy1");
  EXPECT_EQ(m.always.size(), 1u);
  EXPECT_EQ(m.assigns.size(), 1u);
  EXPECT_EQ(m.port_order, (std::vector<std::string>{"clk", "enable", "secret", "led"}));
}

TEST(Parser, SyntaxErrorsCarryPositions) {
  try {
    test::load_text("module m(a);\n  input a\n  wire b;\nendmodule\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Syntax);
    EXPECT_TRUE(e.has_pos());
    EXPECT_EQ(e.pos().line, 3);
    EXPECT_EQ(format_diagnostic(e, {"m.v"}).rfind("m.v:3:", 0), 0u);
  }
}

TEST(Parser, RejectsUnsupportedConstructs) {
  EXPECT_EQ(error_of("module m(a, b); input a; output b; assign b = a << 1; endmodule"),
            ErrorKind::UnsupportedConstruct);
  EXPECT_EQ(error_of("module m(c, a); input c, a; reg r; always @(negedge c) r <= a; endmodule"),
            ErrorKind::UnsupportedConstruct);
  EXPECT_EQ(error_of("module m(a); input a; integer i; endmodule"), ErrorKind::UnsupportedConstruct);
  EXPECT_EQ(error_of("module m(a, b); input a; output b; assign b = 1'bx; endmodule"),
            ErrorKind::UnsupportedConstruct);
  EXPECT_EQ(error_of("module m(c, a); input c, a; reg r; always @(*) r = a; endmodule"),
            ErrorKind::UnsupportedConstruct);
  EXPECT_EQ(error_of("module m(a); input a; reg [3:0] mem [0:3]; endmodule"),
            ErrorKind::UnsupportedConstruct);
}

TEST(Parser, StandaloneExpression) {
  auto e = verilog::parse_expression("state != 3 && enable");
  EXPECT_EQ(verilog::print(*e), "((state != 3) && enable)");
}

TEST(Elaborate, Toy1SignalsAndReset) {
  DesignIR ir = test::load_corpus("toy1.v");
  EXPECT_EQ(ir.top, "toy1");
  EXPECT_EQ(ir.clock, "clk");
  EXPECT_EQ(ir.signal("state").width, 2u);
  EXPECT_EQ(ir.signal("guard").kind, SignalKind::Reg);
  EXPECT_EQ(ir.signal("led").kind, SignalKind::Wire);
  EXPECT_TRUE(ir.signal("led").is_output);
  ASSERT_EQ(ir.data_inputs().size(), 2u);
  EXPECT_EQ(ir.registers().size(), 3u);
  for (const auto* r : ir.registers()) EXPECT_EQ(ir.reset_value(r->name), 0u);
  EXPECT_TRUE(ir.warnings.empty());
  ASSERT_EQ(ir.processes.size(), 1u);
  // Two independent if statements: 2 x 2 intra-cycle paths.
  EXPECT_EQ(ir.processes[0].cfg.paths().size(), 4u);
}

TEST(Elaborate, StatementLinesMatchSource) {
  DesignIR ir = test::load_corpus("toy1.v");
  std::set<int> assign_lines;
  for (const auto& st : ir.processes[0].stmts) {
    if (st.kind == StmtKind::Assign) assign_lines.insert(st.line.line);
  }
  EXPECT_EQ(assign_lines, (std::set<int>{13, 14, 17, 19}));
  EXPECT_EQ(ir.continuous_assigns.at(0).line.line, 23);
}

TEST(Elaborate, UnknownSignalLookup) {
  DesignIR ir = test::load_corpus("toy1.v");
  try {
    ir.signal("nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownSignal);
  }
}

TEST(Elaborate, VerilogWidthRules) {
  // Context-determined sizing: the carry of a + b survives in a 5-bit sum.
  DesignIR ir = test::load_text(
      "module m(a, b, s, c, n, k);\n"
      "  input [3:0] a, b;\n"
      "  output [4:0] s;\n"
      "  output c, n, k;\n"
      "  assign s = a + b;\n"
      "  assign c = (a + b) > 4'd15;\n"
      "  assign n = !a;\n"
      "  assign k = a == 20;\n"
      "endmodule\n");
  auto eval = [&](const std::string& wire, Value av, Value bv) {
    Expr e = *ir.driver_of(wire);
    return evaluate(e, [&](const Symbol& s) -> std::optional<Value> {
      return s.name == "a" ? av : bv;
    });
  };
  for (Value av = 0; av < 16; ++av) {
    for (Value bv = 0; bv < 16; ++bv) {
      EXPECT_EQ(eval("s", av, bv), av + bv);
      // Comparison operands are sized to max(4, 4): the carry is lost.
      EXPECT_EQ(eval("c", av, bv), 0u);
      EXPECT_EQ(eval("n", av, bv), av == 0 ? 1u : 0u);
      EXPECT_EQ(eval("k", av, bv), 0u);
    }
  }
  // 20 never fits in 4 bits, so the comparison folds away.
  EXPECT_TRUE(ir.driver_of("k")->is_const());
}

TEST(Elaborate, CaseDesugarsToPriorityChain) {
  DesignIR ir = test::load_corpus("fsm_case.v");
  const auto& p = ir.processes.at(0);
  ASSERT_EQ(p.body.size(), 1u);
  const Stmt& first = p.stmts[p.body[0]];
  EXPECT_EQ(first.kind, StmtKind::If);
  EXPECT_TRUE(first.from_case);
  // 0: (go / no go), 1, 2, default
  EXPECT_EQ(p.cfg.paths().size(), 5u);
  EXPECT_EQ(eval_const(substitute(first.cond, [](const Symbol&, Width w) -> std::optional<Expr> {
              return constant(w, 0);
            })),
            1u);
}

TEST(Elaborate, HierarchyFlattensWithPrefixes) {
  verilog::SourceUnit u;
  for (const char* f : {"toy1.v", "hier_wrap.v"}) {
    u.files.push_back({f, test::read_file(test::corpus_path(f))});
  }
  DesignIR ir = load_design(u);
  EXPECT_EQ(ir.top, "hier_wrap");
  EXPECT_TRUE(ir.is_state("core.state"));
  EXPECT_TRUE(ir.is_state("core.guard"));
  // An output reg bound to a whole parent wire becomes that wire.
  EXPECT_FALSE(ir.find("ticks.q"));
  EXPECT_TRUE(ir.is_state("count"));
  EXPECT_EQ(ir.data_inputs().size(), 3u);
  // Ports bound to whole signals are aliased, not copied.
  EXPECT_FALSE(ir.find("core.enable"));
  const auto& core = ir.processes.at(0);
  EXPECT_TRUE(mentions_signal(core.stmts[core.body[0]].cond, "en"));
  EXPECT_EQ(ir.processes.size(), 2u);
  // inner_led is the alias of core.led: it is driven directly by the guard mux.
  EXPECT_TRUE(mentions_signal(*ir.driver_of("light"), "core.guard"));
}

TEST(Elaborate, TwoInstancesGetDistinctLineIds) {
  DesignIR ir = test::load_text(
      "module leaf(clk, d, q);\n"
      "  input clk, d;\n"
      "  output reg q = 0;\n"
      "  always @(posedge clk) q <= d;\n"
      "endmodule\n"
      "module top(clk, a, b, x, y);\n"
      "  input clk, a, b;\n"
      "  output x, y;\n"
      "  leaf l0(.clk(clk), .d(a), .q(x));\n"
      "  leaf l1(.clk(clk), .d(b), .q(y));\n"
      "endmodule\n");
  ASSERT_EQ(ir.processes.size(), 2u);
  EXPECT_NE(ir.processes[0].stmts[0].line, ir.processes[1].stmts[0].line);
  EXPECT_TRUE(ir.is_state("x"));
  EXPECT_TRUE(ir.is_state("y"));
}

TEST(Elaborate, StructuralErrors) {
  EXPECT_EQ(error_of("module m(a, b); input a; output b; assign b = a; assign b = !a; endmodule"),
            ErrorKind::MultipleDrivers);
  EXPECT_EQ(error_of("module m(c, a); input c, a; reg r;\n"
                     "always @(posedge c) r <= a;\nalways @(posedge c) r <= !a;\nendmodule"),
            ErrorKind::MultipleDrivers);
  EXPECT_EQ(error_of("module m(a); input a; missing u(.x(a)); endmodule"),
            ErrorKind::UnresolvedModule);
  EXPECT_EQ(error_of("module m(a); input a; m u(.a(a)); endmodule\nmodule t(a); input a; m u(.a(a)); endmodule", "t"),
            ErrorKind::RecursiveInstantiation);
  EXPECT_EQ(error_of("module m(a, b); input a; output b; wire w; assign w = b; assign b = w; endmodule"),
            ErrorKind::CombinationalCycle);
  EXPECT_EQ(error_of("module m(a, b); input a; output b; assign b = q; endmodule"),
            ErrorKind::UnknownSignal);
}

TEST(Elaborate, MissingResetWarns) {
  DesignIR ir = test::load_text(
      "module m(clk, a, q);\n  input clk, a;\n  output reg q;\n  always @(posedge clk) q <= a;\nendmodule\n");
  ASSERT_EQ(ir.warnings.size(), 1u);
  EXPECT_NE(ir.warnings[0].find("no reset"), std::string::npos);
  EXPECT_EQ(ir.reset_value("q"), 0u);
}

TEST(Elaborate, InitialBlockSetsReset) {
  DesignIR ir = test::load_text(
      "module m(clk, a, q);\n  input clk, a;\n  output reg [2:0] q;\n"
      "  initial begin q = 3'd5; end\n  always @(posedge clk) q <= q + a;\nendmodule\n");
  EXPECT_EQ(ir.reset_value("q"), 5u);
}

TEST(Elaborate, ConditionOverDesignSignals) {
  DesignIR ir = test::load_corpus("toy1.v");
  Expr c = elaborate_condition(ir, *verilog::parse_expression("state != 3"));
  EXPECT_EQ(c.width(), 1u);
  EXPECT_TRUE(mentions_signal(c, "state"));
}

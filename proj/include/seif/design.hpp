// Elaborated, flattened design representation.

#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "seif/diagnostics.hpp"
#include "seif/expr.hpp"
#include "seif/verilog.hpp"

namespace seif {

/// Stable statement identity: file index, 1-based line, ordinal among the
/// statements that start on that line. `instance` separates copies of the
/// same module text after flattening (0 for the first copy).
struct LineId {
  int file = 0;
  int line = 0;
  int ordinal = 0;
  int instance = 0;

  auto operator<=>(const LineId&) const = default;
  std::string str() const;
};

enum class SignalKind { Input, Wire, Reg };

const char* signal_kind_name(SignalKind k);

struct SignalDecl {
  std::string name;
  SignalKind kind = SignalKind::Wire;
  bool is_output = false;
  Width width = 1;
};

enum class StmtKind { If, Assign };

/// Statements live in a per-process arena and refer to children by index,
/// so a Process can be copied freely.
struct Stmt {
  StmtKind kind = StmtKind::Assign;
  LineId line;
  SourcePos pos;
  Expr cond;  // If: 1-bit guard
  std::vector<int> then_body;
  std::vector<int> else_body;
  bool from_case = false;
  bool blocking = false;  // Assign
  std::string lhs;
  Expr rhs;  // already fitted to the lhs width
};

/// One step of an intra-cycle execution path.
struct PathStep {
  int stmt = -1;
  bool taken = true;  // for If statements
};

struct CfgPath {
  int id = 0;
  std::vector<PathStep> steps;
  std::set<LineId> lines;  // every statement executed, branches included
};

struct CfgNode {
  enum class Kind { Entry, Exit, Branch, Assign, Join };
  Kind kind = Kind::Entry;
  int stmt = -1;
  std::vector<int> succ;  // Branch: {then, else}
};

struct Process;

/// DAG of one clock cycle of a process. Paths are enumerated eagerly in
/// then-before-else order, which is the order successors are explored in.
class ControlFlowGraph {
 public:
  std::vector<CfgNode> nodes;
  int entry = 0;
  int exit = 0;

  const std::vector<CfgPath>& paths() const { return paths_; }
  /// Paths that execute every required line belonging to this process and
  /// none of the blocked ones. Lines outside the process are ignored.
  std::vector<int> lines_on_some_path(const std::set<LineId>& required,
                                      const std::set<LineId>& blocked) const;
  const std::set<LineId>& all_lines() const { return lines_; }

 private:
  friend ControlFlowGraph build_cfg(const Process& p);
  std::vector<CfgPath> paths_;
  std::set<LineId> lines_;
};

struct Process {
  std::string clock;
  SourcePos pos;
  std::vector<Stmt> stmts;
  std::vector<int> body;
  ControlFlowGraph cfg;
};

ControlFlowGraph build_cfg(const Process& p);

struct ContinuousAssign {
  std::string lhs;
  Expr rhs;
  LineId line;
  SourcePos pos;
};

struct StmtRef {
  int process = -1;  // -1 for continuous assigns
  int index = -1;    // statement index, or continuous assign index
};

struct DesignIR {
  std::string top;
  std::vector<std::string> files;
  std::vector<SignalDecl> signals;
  std::vector<Process> processes;
  std::vector<ContinuousAssign> continuous_assigns;
  std::map<std::string, Value> reset_spec;
  std::map<LineId, StmtRef> stmt_index;
  std::string clock;  // empty for purely combinational designs
  std::vector<std::string> warnings;

  const SignalDecl* find(const std::string& name) const;
  const SignalDecl& signal(const std::string& name) const;  // throws UnknownSignal
  bool is_state(const std::string& name) const;
  bool is_input(const std::string& name) const;
  /// Inputs other than the clock, in declaration order.
  std::vector<const SignalDecl*> data_inputs() const;
  std::vector<const SignalDecl*> registers() const;
  /// Initial value of a register (0 when no reset value was declared).
  Value reset_value(const std::string& reg) const;
  /// Continuous assigns in dependency order. Throws CombinationalCycle.
  std::vector<int> combinational_order() const;
  /// Expression driving a wire, with other wires inlined recursively.
  std::optional<Expr> driver_of(const std::string& wire) const;

  std::map<std::string, int> index_;
};

/// Flattens the instance tree rooted at ast.top_module.
DesignIR elaborate(const verilog::Ast& ast);

/// Parse + elaborate convenience.
DesignIR load_design(const verilog::SourceUnit& src);

/// Elaborates a standalone expression over the signals of a design, e.g. a
/// property precondition; result is 1 bit.
Expr elaborate_condition(const DesignIR& ir, const verilog::AstExpr& e);

/// Formats an error as `file:line:col: message` using the design's files.
std::string format_diagnostic(const Error& err, const std::vector<std::string>& files);

}  // namespace seif

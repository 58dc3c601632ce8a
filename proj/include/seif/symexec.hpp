// Cycle-at-a-time symbolic execution of a DesignIR.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "seif/design.hpp"
#include "seif/smt.hpp"
#include "seif/trace.hpp"

namespace seif {

enum class StartMode { Reset, Free };

const char* start_mode_name(StartMode m);

struct CycleRecord {
  int cycle = 0;
  std::vector<int> cfg_paths;  // chosen path id per process
  std::set<LineId> lines;      // statements executed in the cycle
  bool stall = false;
};

struct SymbolicState {
  StartMode mode = StartMode::Reset;
  int cycle = 0;
  std::map<std::string, Expr> regs;
  ConstraintSet pc;
  std::vector<CycleRecord> history;
};

struct StepRestriction {
  std::set<LineId> required;
  std::set<LineId> blocked;
  /// 1-bit expressions over signal refs, evaluated against the cycle's
  /// entry registers, inputs and wires. Labels must be unique per cycle.
  ConstraintSet extra;
};

enum class StepFailure { None, RestrictionUnsatisfiable, PathConditionUnsat };

const char* step_failure_name(StepFailure f);

struct StepResult {
  std::vector<SymbolicState> successors;
  StepFailure failure = StepFailure::None;
  bool truncated = false;  // successor cap hit
  int unknown = 0;         // candidates dropped because the solver answered unknown
};

struct ExecOptions {
  int successor_cap = 256;
};

/// Input symbol for `name` sampled in `cycle`.
Symbol input_symbol(const std::string& name, int cycle, int variant = 0);

SymbolicState init_state(const DesignIR& ir, StartMode mode);

/// Wire values in `cycle` given register values; inputs become name@cycle.
std::map<std::string, Expr> wire_env(const DesignIR& ir, const std::map<std::string, Expr>& regs,
                                     int cycle);
std::map<std::string, Expr> wire_env(const DesignIR& ir, const SymbolicState& s);

/// Rewrites signal refs in `e` using registers, wires and inputs of `cycle`.
Expr bind_signals(const DesignIR& ir, const Expr& e, const std::map<std::string, Expr>& regs,
                  const std::map<std::string, Expr>& wires, int cycle);

/// Value of any signal (register, wire or input) at the state's cycle.
Expr observe(const DesignIR& ir, const SymbolicState& s, const std::string& signal);

class SymbolicExecutor {
 public:
  SymbolicExecutor(const DesignIR& ir, SmtSession& smt, ExecOptions opts = {});

  StepResult step_cycle(const SymbolicState& s, const StepRestriction& r = {});

  /// Joint CFG paths (one path id per process) allowed by the restriction's
  /// lines, in exploration order. Purely syntactic.
  std::vector<std::vector<int>> candidate_paths(const StepRestriction& r) const;

  /// Statements executed by a joint path.
  std::set<LineId> lines_of(const std::vector<int>& joint) const;

  const DesignIR& ir() const { return ir_; }
  SmtSession& smt() { return smt_; }

 private:
  struct PathEffect {
    ConstraintSet branches;
    std::map<std::string, Expr> writes;
  };
  PathEffect run_path(int process, int path, const SymbolicState& s,
                      const std::map<std::string, Expr>& wires) const;

  const DesignIR& ir_;
  SmtSession& smt_;
  ExecOptions opts_;
};

/// Model-derived trace for a satisfiable state. `observe_inputs` also values
/// the inputs of the state's own cycle (the sampling cycle).
InputTrace concretize_inputs(const DesignIR& ir, SmtSession& smt, const SymbolicState& s,
                             bool observe_inputs = false);

/// Same, reading values from an existing model; missing symbols become 0.
/// Inputs named in `primed` are read from their variant-1 symbols.
InputTrace trace_from_model(const DesignIR& ir, const Model& m, const SymbolicState& s,
                            bool observe_inputs, const std::set<std::string>& primed = {});

/// Every input symbol of cycles [0, cycles) plus, in free mode, the initial
/// register symbols.
std::map<Symbol, Width> trace_symbols(const DesignIR& ir, const SymbolicState& s, int cycles);

}  // namespace seif

// Per-path flow analysis: global pruning, guided multi-cycle search with
// stalling, reset post-processing and the two-run dependence check.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "seif/if_graph.hpp"
#include "seif/symexec.hpp"

namespace seif {

enum class Strategy { ContinueStall, BacktrackOnly, StallBacktrack, StallUnsatCore };

inline constexpr std::array<Strategy, 4> kAllStrategies = {
    Strategy::ContinueStall, Strategy::BacktrackOnly, Strategy::StallBacktrack,
    Strategy::StallUnsatCore};

const char* strategy_name(Strategy s);
/// Accepts the full names plus the short CLI spellings `backtrack` and `unsat_core`.
std::optional<Strategy> parse_strategy(const std::string& text);
int default_stall_bound(Strategy s);

enum class Verdict {
  FoundFromReset,
  FoundIntermediate,
  PrunedGlobal,
  InfeasibleBounded,
  NotTrueFlow,
  Unaccounted,
};

inline constexpr std::array<Verdict, 6> kAllVerdicts = {
    Verdict::FoundFromReset, Verdict::FoundIntermediate, Verdict::PrunedGlobal,
    Verdict::InfeasibleBounded, Verdict::NotTrueFlow, Verdict::Unaccounted};

const char* verdict_name(Verdict v);
bool is_found(Verdict v);

struct SearchConfig {
  Strategy strategy = Strategy::StallUnsatCore;
  int stall_bound = -1;  // -1: strategy default; ignored by backtrack_only
  int max_cycles = 16;
  double time_budget_s = 30.0;
  int backtrack_limit = 1000;
  bool from_reset = false;  // skip the free-mode search
  int frontier_cap = 4096;  // continue_stall only
  ExecOptions exec;
  /// 1-bit expressions over signal refs that must hold in every cycle.
  std::vector<Expr> precondition;

  int effective_stall_bound() const;
};

struct SearchStats {
  int step_calls = 0;  // symbolic cycles executed (continues and stalls)
  int stalls = 0;      // stall cycles executed
  int backtracks = 0;  // returns to an earlier segment
  long solver_queries = 0;
  int terminals = 0;  // states realizing every segment
  double wall_time_s = 0;
};

struct FlowResult {
  int index = 0;
  IFPath path;
  Verdict verdict = Verdict::Unaccounted;
  std::string mode;  // start mode of the search that decided the verdict

  // found_*
  std::optional<InputTrace> trace;
  std::optional<InputTrace> alternate;  // same inputs, source values of the second run
  int cycles = 0;
  std::vector<int> stall_cycles;  // clock edges that were stalls
  bool replay_confirmed = false;

  // pruned_global / cycle-boundary contradictions
  int core_segment = -1;
  std::vector<std::string> core;

  std::string sink_expr;    // terminal sink expression for dependence checks
  std::string reason;       // unaccounted / infeasible explanation
  bool path_dependent = false;
  bool solver_unknown = false;
  SearchStats stats;
};

/// Hop conditions of one segment with wires inlined; each top-level
/// conjunct is its own constraint, labeled "seg<k>/h<hop>/<n>".
ConstraintSet segment_atoms(const DesignIR& ir, const Segment& seg, int k);

struct PruneResult {
  bool keep = true;
  int segment = -1;
  std::vector<std::string> core;
  bool unknown = false;
};

/// Discards a path when one segment's conditions cannot hold together with
/// every signal fixed to a single value.
PruneResult prune_global(const DesignIR& ir, SmtSession& smt, const std::vector<Segment>& segs);

struct BoundaryCheck {
  bool feasible = true;
  std::vector<std::string> core;
  bool unknown = false;
};

/// Can segment `k` start in state `s`? Checks s.pc together with the
/// segment's conditions bound to the current registers.
BoundaryCheck cycle_boundary_prune(const DesignIR& ir, SmtSession& smt, const SymbolicState& s,
                                   const Segment& seg, int k);

struct StallResult {
  std::vector<SymbolicState> successors;
  bool cannot_stall_here = false;
  bool truncated = false;
  int unknown = 0;
};

/// One cycle that must not overwrite `resident` (no restriction when empty or
/// not a register). Successors are marked as stalls in their history.
StallResult stall_step(SymbolicExecutor& ex, const SymbolicState& s, const std::string& resident,
                       const ConstraintSet& extra = {});

struct ResetCheck {
  bool from_reset = false;
  bool unknown = false;
  Model model;
};

/// Is the state's path condition consistent with the reset values? Extra
/// constraints (the dependence query) are kept alongside.
ResetCheck reset_check(const DesignIR& ir, SmtSession& smt, const SymbolicState& s,
                       const ConstraintSet& extra = {}, const std::map<Symbol, Width>& symbols = {});

struct SemanticCheck {
  bool true_flow = false;
  bool unknown = false;
  Expr sink_expr;
  ConstraintSet query;  // pc, primed pc and the difference
  std::map<Symbol, Width> symbols;
  Model model;
};

/// Two runs along the same design path that share every symbol except the
/// source inputs: can the sink differ?
SemanticCheck semantic_check(const DesignIR& ir, SmtSession& smt, const SymbolicState& terminal,
                             const std::string& source, const std::string& sink);

/// Full pipeline for one path.
FlowResult analyze_path(const DesignIR& ir, SmtSession& smt, const IFPath& path,
                        const SearchConfig& cfg);

struct AnalysisLimits {
  PathLimits paths;
  int jobs = 1;
};

struct SourceAnalysis {
  std::vector<FlowResult> results;  // in path enumeration order
  bool truncated = false;           // path enumeration hit max_paths
};

/// Every IF path from `source` (to `sink` when given), analyzed on `jobs`
/// workers, each with its own solver session.
SourceAnalysis analyze_source(const DesignIR& ir, const IFGraph& g, const std::string& source,
                              const std::optional<std::string>& sink, const SearchConfig& cfg,
                              const SmtOptions& smt, const AnalysisLimits& limits = {});

/// analyze_source with `precondition` (signal-ref expression) held in every
/// cycle. Only replay-confirmed results found from reset are violations.
SourceAnalysis check_property(const DesignIR& ir, const IFGraph& g, const std::string& source,
                              const std::string& sink, const Expr& precondition,
                              SearchConfig cfg, const SmtOptions& smt,
                              const AnalysisLimits& limits = {});

bool is_violation(const FlowResult& r);

}  // namespace seif

// Concrete two-valued cycle simulator and brute-force flow oracles.

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "seif/design.hpp"
#include "seif/if_graph.hpp"
#include "seif/trace.hpp"

namespace seif {

struct ConcreteState {
  Valuation regs;
  int cycle = 0;

  bool operator==(const ConcreteState&) const = default;
};

ConcreteState reset_state(const DesignIR& ir);

struct SimStep {
  ConcreteState next;
  Valuation values;            // every signal before the edge (regs, inputs, wires)
  std::vector<int> cfg_paths;  // per process
  std::set<LineId> lines;
};

/// One clock edge. Every data input must be present and fit its width
/// (Error WidthMismatch otherwise).
SimStep sim_step(const DesignIR& ir, const ConcreteState& s, const Valuation& inputs);

/// Values of all signals in the state's cycle with the given inputs.
Valuation sim_observe(const DesignIR& ir, const ConcreteState& s, const Valuation& inputs);

/// Runs a trace from its initial registers; returns the signal values
/// observed after the last edge.
Valuation run_trace(const DesignIR& ir, const InputTrace& t);

struct ReplayResult {
  bool flow_confirmed = false;
  Value original = 0;
  Value alternate = 0;
};

/// Replays `trace` and a copy whose `source` values are replaced (by
/// `alternate` when given, else bitwise complement); compares `sink` at the
/// end of the trace.
ReplayResult differential_replay(const DesignIR& ir, const InputTrace& trace,
                                 const std::string& source, const std::string& sink,
                                 const InputTrace* alternate = nullptr);

struct BruteForceResult {
  bool exists = false;
  int cycles = -1;  // clock edges before the differing observation
};

/// Exhaustive search from reset over pairs of runs that share every input
/// except `source`. Throws Error(TooLarge) when
/// 2*state_bits + other_input_bits + 2*source_bits > 24.
BruteForceResult brute_force_flows(const DesignIR& ir, const std::string& source,
                                   const std::string& sink, int bound);

/// Concrete counterpart of the segment-by-segment search: is there, from
/// any initial register valuation, a run of at most `bound` edges realizing
/// every segment in order, stalling between segments without overwriting the
/// resident register? Throws Error(TooLarge) above 24 state+input bits.
bool brute_force_segments(const DesignIR& ir, const std::vector<Segment>& segments, int bound);

/// Lines a stall must avoid: every write to `resident` except self-referential ones.
std::set<LineId> stall_blocked_lines(const DesignIR& ir, const std::string& resident);

}  // namespace seif

// Concrete input traces shared by the executor, simulator and reports.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "seif/expr.hpp"

namespace seif {

using Valuation = std::map<std::string, Value>;

/// Inputs applied on each clock edge, plus the input values present when the
/// outputs are sampled after the last edge (only meaningful when the flow
/// ends in combinational logic).
struct InputTrace {
  Valuation initial;  // register values before the first edge
  bool from_reset = true;
  std::vector<Valuation> steps;
  Valuation observe;

  int cycles() const { return static_cast<int>(steps.size()); }

  /// One JSON object per line: a header, one line per cycle, then the
  /// observation inputs.
  std::string to_jsonl() const;
  static InputTrace from_jsonl(const std::string& text);
};

}  // namespace seif

// Run reports: report.json (byte-stable), summary.txt, timing.json,
// per-path traces and stall-bound sweep tables.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "seif/engine.hpp"

namespace seif {

inline constexpr const char* kToolVersion = "0.1.0";

struct StrategyRun {
  Strategy strategy = Strategy::StallUnsatCore;
  int stall_bound = 0;
  std::vector<FlowResult> results;
  bool truncated = false;  // path enumeration hit max_paths
};

struct ReportMeta {
  std::string command;
  std::string top;
  std::vector<std::string> files;
  std::vector<std::string> sources;
  std::optional<std::string> sink;
  std::optional<std::string> precondition;
  nlohmann::json config = nlohmann::json::object();
  std::string solver_version;
  std::vector<std::string> warnings;
  int max_cycles = 16;
};

struct Aggregate {
  int paths = 0;
  int found = 0;
  double found_pct = 0;
  double avg_cycles = 0;  // over found paths
  long backtracks = 0;
  long step_calls = 0;
  long solver_queries = 0;
  double backtrack_frequency = 0;  // backtracks per symbolic cycle
  double avg_wall_time_s = 0;
};

Aggregate aggregate(const std::vector<FlowResult>& results);
std::map<Verdict, int> histogram(const std::vector<FlowResult>& results);
/// Cumulative number of found paths needing at most c cycles, c = 0..max_cycles.
std::vector<int> found_by_cycle(const std::vector<FlowResult>& results, int max_cycles);

/// Trace file name (relative to the report directory) of a found result.
std::string trace_file_name(const StrategyRun& run, const FlowResult& r);

nlohmann::json trace_json(const InputTrace& t);
nlohmann::json flow_result_json(const FlowResult& r, const std::vector<std::string>& files,
                                const std::string& trace_file);
/// Everything except wall-clock times, so equal inputs give equal bytes.
nlohmann::json report_json(const ReportMeta& meta, const std::vector<StrategyRun>& runs);
nlohmann::json timing_json(const std::vector<StrategyRun>& runs);
std::string summary_text(const ReportMeta& meta, const std::vector<StrategyRun>& runs);

/// Creates `dir` and writes report.json, summary.txt, timing.json and
/// traces/*.jsonl.
void write_report_dir(const std::string& dir, const ReportMeta& meta,
                      const std::vector<StrategyRun>& runs);

struct SweepRow {
  Strategy strategy = Strategy::StallUnsatCore;
  int stall_bound = 0;
  int paths = 0;
  int found = 0;
  double found_pct = 0;
};

std::string sweep_csv(const std::vector<SweepRow>& rows);
nlohmann::json sweep_json(const ReportMeta& meta, const std::vector<SweepRow>& rows);

/// Deterministic JSON text (2-space indent, trailing newline).
std::string dump(const nlohmann::json& j);

}  // namespace seif

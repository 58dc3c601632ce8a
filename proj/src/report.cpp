#include "seif/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace seif {

using nlohmann::json;

namespace {

double round4(double x) { return std::round(x * 10000.0) / 10000.0; }

json valuation_json(const Valuation& v) {
  json o = json::object();
  for (const auto& [k, x] : v) o[k] = x;
  return o;
}

std::string file_of(const LineId& l, const std::vector<std::string>& files) {
  return l.file >= 0 && l.file < static_cast<int>(files.size()) ? files[l.file] : "";
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorKind::Config, "cannot write '" + p.string() + "'");
  out << text;
}

}  // namespace

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Aggregate aggregate(const std::vector<FlowResult>& results) {
  Aggregate a;
  a.paths = static_cast<int>(results.size());
  long cycles = 0;
  double wall = 0;
  for (const auto& r : results) {
    if (is_found(r.verdict)) {
      ++a.found;
      cycles += r.cycles;
    }
    a.backtracks += r.stats.backtracks;
    a.step_calls += r.stats.step_calls;
    a.solver_queries += r.stats.solver_queries;
    wall += r.stats.wall_time_s;
  }
  if (a.paths > 0) {
    a.found_pct = 100.0 * a.found / a.paths;
    a.avg_wall_time_s = wall / a.paths;
  }
  if (a.found > 0) a.avg_cycles = static_cast<double>(cycles) / a.found;
  if (a.step_calls > 0) a.backtrack_frequency = static_cast<double>(a.backtracks) / a.step_calls;
  return a;
}

std::map<Verdict, int> histogram(const std::vector<FlowResult>& results) {
  std::map<Verdict, int> h;
  for (Verdict v : kAllVerdicts) h[v] = 0;
  for (const auto& r : results) ++h[r.verdict];
  return h;
}

std::vector<int> found_by_cycle(const std::vector<FlowResult>& results, int max_cycles) {
  std::vector<int> curve(std::max(0, max_cycles) + 1, 0);
  for (const auto& r : results) {
    if (!is_found(r.verdict)) continue;
    for (int c = std::max(0, r.cycles); c <= max_cycles; ++c) ++curve[c];
  }
  return curve;
}

std::string trace_file_name(const StrategyRun& run, const FlowResult& r) {
  std::ostringstream os;
  os << "traces/" << strategy_name(run.strategy) << "-" << r.path.source << "-" << std::setw(4)
     << std::setfill('0') << r.index << ".jsonl";
  return os.str();
}

json trace_json(const InputTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) steps.push_back(valuation_json(s));
  return {{"from_reset", t.from_reset},
          {"initial", valuation_json(t.initial)},
          {"steps", steps},
          {"observe", valuation_json(t.observe)}};
}

json flow_result_json(const FlowResult& r, const std::vector<std::string>& files,
                      const std::string& trace_file) {
  json hops = json::array();
  for (const auto& h : r.path.hops) {
    json conds = json::array();
    for (const auto& c : h.conditions) conds.push_back(to_string(c));
    hops.push_back({{"src", h.src},
                    {"dst", h.dst},
                    {"kind", edge_kind_name(h.kind)},
                    {"assign_class", assign_class_name(h.assign_class)},
                    {"file", file_of(h.line, files)},
                    {"line", h.line.line},
                    {"line_id", h.line.str()},
                    {"conditions", conds}});
  }
  json stats = {{"step_calls", r.stats.step_calls},
                {"stalls", r.stats.stalls},
                {"backtracks", r.stats.backtracks},
                {"solver_queries", r.stats.solver_queries},
                {"terminals", r.stats.terminals}};
  json j = {{"index", r.index},
            {"path", {{"source", r.path.source},
                      {"sink", r.path.sink},
                      {"text", path_to_string(r.path)},
                      {"segments", segment_path(r.path).size()},
                      {"hops", hops}}},
            {"verdict", verdict_name(r.verdict)},
            {"mode", r.mode},
            {"cycles", r.cycles},
            {"stall_cycles", r.stall_cycles},
            {"replay_confirmed", r.replay_confirmed},
            {"core_segment", r.core_segment},
            {"core", r.core},
            {"sink_expr", r.sink_expr},
            {"reason", r.reason},
            {"path_dependent", r.path_dependent},
            {"solver_unknown", r.solver_unknown},
            {"stats", stats}};
  j["trace"] = r.trace ? trace_json(*r.trace) : json(nullptr);
  j["alternate"] = r.alternate ? trace_json(*r.alternate) : json(nullptr);
  j["trace_file"] = trace_file.empty() ? json(nullptr) : json(trace_file);
  return j;
}

json report_json(const ReportMeta& meta, const std::vector<StrategyRun>& runs) {
  json jruns = json::array();
  json aggregates = json::array();
  for (const auto& run : runs) {
    json results = json::array();
    for (const auto& r : run.results) {
      results.push_back(flow_result_json(r, meta.files, r.trace ? trace_file_name(run, r) : ""));
    }
    json hist = json::object();
    for (const auto& [v, n] : histogram(run.results)) hist[verdict_name(v)] = n;
    const Aggregate a = aggregate(run.results);
    json agg = {{"strategy", strategy_name(run.strategy)},
                {"stall_bound", run.stall_bound},
                {"paths", a.paths},
                {"found", a.found},
                {"found_pct", round4(a.found_pct)},
                {"avg_cycles", round4(a.avg_cycles)},
                {"backtracks", a.backtracks},
                {"step_calls", a.step_calls},
                {"solver_queries", a.solver_queries},
                {"backtrack_frequency", round4(a.backtrack_frequency)}};
    aggregates.push_back(agg);
    jruns.push_back({{"strategy", strategy_name(run.strategy)},
                     {"stall_bound", run.stall_bound},
                     {"paths_truncated", run.truncated},
                     {"histogram", hist},
                     {"found_by_cycle", found_by_cycle(run.results, meta.max_cycles)},
                     {"results", results}});
  }
  return {{"schema_version", 1},
          {"tool", {{"name", "seif"}, {"version", kToolVersion}, {"solver", meta.solver_version}}},
          {"command", meta.command},
          {"design", {{"top", meta.top}, {"files", meta.files}, {"warnings", meta.warnings}}},
          {"sources", meta.sources},
          {"sink", meta.sink ? json(*meta.sink) : json(nullptr)},
          {"precondition", meta.precondition ? json(*meta.precondition) : json(nullptr)},
          {"config", meta.config},
          {"strategy_aggregates", aggregates},
          {"runs", jruns}};
}

json timing_json(const std::vector<StrategyRun>& runs) {
  json out = json::array();
  for (const auto& run : runs) {
    json per = json::array();
    double total = 0;
    for (const auto& r : run.results) {
      per.push_back({{"index", r.index}, {"source", r.path.source}, {"wall_time_s", r.stats.wall_time_s}});
      total += r.stats.wall_time_s;
    }
    out.push_back({{"strategy", strategy_name(run.strategy)},
                   {"total_wall_time_s", total},
                   {"avg_wall_time_s", aggregate(run.results).avg_wall_time_s},
                   {"paths", per}});
  }
  return {{"schema_version", 1}, {"runs", out}};
}

std::string summary_text(const ReportMeta& meta, const std::vector<StrategyRun>& runs) {
  std::ostringstream os;
  os << "seif " << kToolVersion << " (" << meta.solver_version << ")\n";
  os << "design: " << meta.top << "\n";
  os << "source:";
  for (const auto& s : meta.sources) os << " " << s;
  os << "\n";
  if (meta.sink) os << "sink: " << *meta.sink << "\n";
  if (meta.precondition) os << "precondition: " << *meta.precondition << "\n";
  for (const auto& w : meta.warnings) os << "warning: " << w << "\n";
  for (const auto& run : runs) {
    const Aggregate a = aggregate(run.results);
    os << "\nstrategy " << strategy_name(run.strategy) << " (stall bound " << run.stall_bound << ")\n";
    os << "  paths " << a.paths << (run.truncated ? " (truncated)" : "") << ", found " << a.found
       << std::fixed << std::setprecision(1) << " (" << a.found_pct << "%)"
       << ", avg cycles " << std::setprecision(2) << a.avg_cycles << ", backtrack frequency "
       << std::setprecision(3) << a.backtrack_frequency << ", avg time " << a.avg_wall_time_s << " s\n";
    os.unsetf(std::ios::fixed);
    for (const auto& [v, n] : histogram(run.results)) {
      os << "  " << std::left << std::setw(20) << verdict_name(v) << std::right << n << "\n";
    }
    for (const auto& r : run.results) {
      os << "  [" << r.index << "] " << path_to_string(r.path) << ": " << verdict_name(r.verdict);
      if (is_found(r.verdict)) {
        os << " in " << r.cycles << " cycles";
        if (!r.stall_cycles.empty()) os << ", " << r.stall_cycles.size() << " stalls";
        os << (r.replay_confirmed ? ", replay confirmed" : ", replay not confirmed");
      }
      if (r.path_dependent) os << " (path dependent)";
      if (!r.reason.empty() && !is_found(r.verdict)) os << " - " << r.reason;
      os << "\n";
    }
  }
  return os.str();
}

void write_report_dir(const std::string& dir, const ReportMeta& meta,
                      const std::vector<StrategyRun>& runs) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(fs::path(dir) / "traces", ec);
  if (ec) throw Error(ErrorKind::Config, "cannot create '" + dir + "': " + ec.message());
  write_file(fs::path(dir) / "report.json", dump(report_json(meta, runs)));
  write_file(fs::path(dir) / "timing.json", dump(timing_json(runs)));
  write_file(fs::path(dir) / "summary.txt", summary_text(meta, runs));
  for (const auto& run : runs) {
    for (const auto& r : run.results) {
      if (r.trace) write_file(fs::path(dir) / trace_file_name(run, r), r.trace->to_jsonl());
    }
  }
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "strategy,stall_bound,paths,found,found_pct\n";
  for (const auto& r : rows) {
    os << strategy_name(r.strategy) << "," << r.stall_bound << "," << r.paths << "," << r.found << ","
       << std::fixed << std::setprecision(4) << r.found_pct << "\n";
    os.unsetf(std::ios::fixed);
  }
  return os.str();
}

json sweep_json(const ReportMeta& meta, const std::vector<SweepRow>& rows) {
  json jr = json::array();
  for (const auto& r : rows) {
    jr.push_back({{"strategy", strategy_name(r.strategy)},
                  {"stall_bound", r.stall_bound},
                  {"paths", r.paths},
                  {"found", r.found},
                  {"found_pct", round4(r.found_pct)}});
  }
  return {{"schema_version", 1},
          {"tool", {{"name", "seif"}, {"version", kToolVersion}, {"solver", meta.solver_version}}},
          {"design", {{"top", meta.top}, {"files", meta.files}}},
          {"sources", meta.sources},
          {"config", meta.config},
          {"rows", jr}};
}

}  // namespace seif

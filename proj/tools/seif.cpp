// seif: information-flow path analysis for small synchronous Verilog designs.
//
// Exit codes: 0 done, 1 property violated (check-property), 2 usage,
// configuration or design error, 3 internal failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "seif/corpus.hpp"
#include "seif/engine.hpp"
#include "seif/report.hpp"

using namespace seif;
using nlohmann::json;

namespace {

struct Options {
  std::vector<std::string> files;
  std::string top;
  std::vector<std::string> sources;
  std::string sink;
  std::string strategy = "unsat_core";
  int stall_bound = -1;
  int max_cycles = 16;
  int max_paths = 100000;
  int max_hops = 12;
  bool from_reset = false;
  std::string solver = "z3";
  unsigned seed = 0;
  int jobs = 1;
  double timeout_per_path = 30.0;
  int solver_timeout_ms = 10000;
  int backtrack_limit = 1000;
  std::string report;
  bool debug_smt = false;
  bool emit_graph = false;
  std::string precondition;
  int max_stall_bound = 6;
  std::string manifest;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Strategy> strategies_of(const Options& o, bool stalling_only) {
  if (o.strategy == "all") {
    std::vector<Strategy> out;
    for (Strategy s : kAllStrategies) {
      if (!stalling_only || s != Strategy::BacktrackOnly) out.push_back(s);
    }
    return out;
  }
  auto s = parse_strategy(o.strategy);
  if (!s) throw UsageError("unknown strategy '" + o.strategy + "'");
  return {*s};
}

SearchConfig search_config(const Options& o, Strategy s) {
  SearchConfig c;
  c.strategy = s;
  c.stall_bound = o.stall_bound;
  c.max_cycles = o.max_cycles;
  c.time_budget_s = o.timeout_per_path;
  c.backtrack_limit = o.backtrack_limit;
  c.from_reset = o.from_reset;
  return c;
}

SmtOptions smt_options(const Options& o) {
  SmtOptions s;
  s.solver_path = o.solver;
  s.timeout_ms = o.solver_timeout_ms;
  s.seed = o.seed;
  if (o.debug_smt) {
    s.keep_transcript = true;
    const std::string dir = o.report.empty() ? "." : o.report;
    std::filesystem::create_directories(dir);
    s.transcript_path = (std::filesystem::path(dir) / "smt-transcript.smt2").string();
  }
  return s;
}

AnalysisLimits analysis_limits(const Options& o) {
  AnalysisLimits l;
  l.paths.max_paths = o.max_paths;
  l.paths.max_hops = o.max_hops;
  l.jobs = o.jobs;
  return l;
}

// Settings that influence results; output locations and debugging are left out.
json config_echo(const Options& o) {
  return {{"strategy", o.strategy},         {"stall_bound", o.stall_bound},
          {"max_cycles", o.max_cycles},     {"max_paths", o.max_paths},
          {"max_hops", o.max_hops},         {"from_reset", o.from_reset},
          {"seed", o.seed},                 {"timeout_per_path", o.timeout_per_path},
          {"solver_timeout_ms", o.solver_timeout_ms}, {"backtrack_limit", o.backtrack_limit}};
}

std::string solver_version(const Options& o) {
  SmtOptions s = smt_options(o);
  s.keep_transcript = false;
  return SmtSession(s).version();
}

void validate(const Options& o) {
  if (o.max_cycles < 1) throw UsageError("--max-cycles must be positive");
  if (o.max_paths < 1) throw UsageError("--max-paths must be positive");
  if (o.jobs < 1) throw UsageError("--jobs must be positive");
  if (o.timeout_per_path <= 0) throw UsageError("--timeout-per-path must be positive");
}

ReportMeta meta_for(const std::string& command, const Options& o, const DesignIR& ir) {
  ReportMeta m;
  m.command = command;
  m.top = ir.top;
  m.files = ir.files;
  m.sources = o.sources;
  if (!o.sink.empty()) m.sink = o.sink;
  m.config = config_echo(o);
  m.solver_version = solver_version(o);
  m.warnings = ir.warnings;
  m.max_cycles = o.max_cycles;
  return m;
}

void check_sources(const DesignIR& ir, const std::vector<std::string>& sources, const std::string& sink) {
  if (sources.empty()) throw UsageError("at least one --source is required");
  for (const auto& s : sources) {
    if (!ir.find(s)) throw UsageError("unknown source signal '" + s + "'");
    if (!ir.is_input(s)) throw UsageError("source '" + s + "' is not an input of " + ir.top);
  }
  if (!sink.empty() && !ir.find(sink)) throw UsageError("unknown sink signal '" + sink + "'");
}

StrategyRun run_strategy(const DesignIR& ir, const IFGraph& g, const Options& o, Strategy s,
                         const std::optional<Expr>& precondition) {
  StrategyRun run;
  run.strategy = s;
  SearchConfig cfg = search_config(o, s);
  run.stall_bound = cfg.effective_stall_bound();
  std::optional<std::string> sink;
  if (!o.sink.empty()) sink = o.sink;
  for (const auto& src : o.sources) {
    SourceAnalysis sa = precondition
                            ? check_property(ir, g, src, o.sink, *precondition, cfg, smt_options(o),
                                             analysis_limits(o))
                            : analyze_source(ir, g, src, sink, cfg, smt_options(o), analysis_limits(o));
    run.truncated = run.truncated || sa.truncated;
    for (auto& r : sa.results) run.results.push_back(std::move(r));
  }
  return run;
}

void finish(const Options& o, const ReportMeta& meta, const std::vector<StrategyRun>& runs,
            const IFGraph& g) {
  std::cout << summary_text(meta, runs);
  if (o.report.empty()) return;
  write_report_dir(o.report, meta, runs);
  if (o.emit_graph) {
    std::ofstream(std::filesystem::path(o.report) / "graph.dot") << to_dot(g);
  }
  std::cout << "\nreport written to " << o.report << "\n";
}

int cmd_analyze(const Options& o) {
  DesignIR ir = load_design_files(o.files, o.top);
  check_sources(ir, o.sources, o.sink);
  IFGraph g = build_if_graph(ir);
  ReportMeta meta = meta_for("analyze", o, ir);
  std::vector<StrategyRun> runs;
  for (Strategy s : strategies_of(o, false)) runs.push_back(run_strategy(ir, g, o, s, std::nullopt));
  finish(o, meta, runs, g);
  return 0;
}

int cmd_check_property(const Options& o) {
  DesignIR ir = load_design_files(o.files, o.top);
  if (o.sink.empty()) throw UsageError("check-property needs --sink");
  check_sources(ir, o.sources, o.sink);
  const std::string text = o.precondition.empty() ? "1" : o.precondition;
  Expr pre;
  try {
    pre = elaborate_condition(ir, *verilog::parse_expression(text));
  } catch (const Error& e) {
    throw UsageError("bad --precondition '" + text + "': " + e.what());
  }
  IFGraph g = build_if_graph(ir);
  ReportMeta meta = meta_for("check-property", o, ir);
  meta.precondition = text;
  std::vector<StrategyRun> runs;
  for (Strategy s : strategies_of(o, false)) runs.push_back(run_strategy(ir, g, o, s, pre));
  finish(o, meta, runs, g);

  int violations = 0;
  for (const auto& run : runs) {
    for (const auto& r : run.results) {
      if (!is_violation(r)) continue;
      ++violations;
      std::cout << "violation: " << path_to_string(r.path) << " (" << strategy_name(run.strategy)
                << ", " << r.cycles << " cycles)";
      if (!o.report.empty()) std::cout << " trace " << trace_file_name(run, r);
      std::cout << "\n";
    }
  }
  std::cout << (violations ? "property violated\n" : "no violation found\n");
  return violations ? 1 : 0;
}

struct Target {
  DesignIR ir;
  std::vector<std::string> sources;
  std::optional<std::string> sink;
};

std::vector<Target> sweep_targets(const Options& o) {
  std::vector<Target> out;
  if (!o.manifest.empty()) {
    for (const auto& e : load_manifest(o.manifest)) {
      out.push_back({load_design_files(e.files, e.top), e.sources, e.sink});
    }
    return out;
  }
  DesignIR ir = load_design_files(o.files, o.top);
  check_sources(ir, o.sources, o.sink);
  std::optional<std::string> sink;
  if (!o.sink.empty()) sink = o.sink;
  out.push_back({std::move(ir), o.sources, sink});
  return out;
}

int cmd_sweep(const Options& o) {
  if (o.max_stall_bound < 0) throw UsageError("--max-stall-bound must not be negative");
  std::vector<Target> targets = sweep_targets(o);
  std::vector<IFGraph> graphs;
  for (const auto& t : targets) graphs.push_back(build_if_graph(t.ir));
  std::vector<SweepRow> rows;
  for (Strategy s : strategies_of(o, true)) {
    for (int bound = 0; bound <= o.max_stall_bound; ++bound) {
      SweepRow row;
      row.strategy = s;
      row.stall_bound = bound;
      for (std::size_t i = 0; i < targets.size(); ++i) {
        SearchConfig cfg = search_config(o, s);
        cfg.stall_bound = bound;
        for (const auto& src : targets[i].sources) {
          auto sa = analyze_source(targets[i].ir, graphs[i], src, targets[i].sink, cfg, smt_options(o),
                                   analysis_limits(o));
          for (const auto& r : sa.results) {
            ++row.paths;
            row.found += is_found(r.verdict) ? 1 : 0;
          }
        }
      }
      row.found_pct = row.paths ? 100.0 * row.found / row.paths : 0.0;
      rows.push_back(row);
      if (s == Strategy::BacktrackOnly) break;
    }
  }
  const std::string csv = sweep_csv(rows);
  std::cout << csv;
  if (!o.report.empty()) {
    ReportMeta meta;
    meta.config = config_echo(o);
    meta.config["max_stall_bound"] = o.max_stall_bound;
    meta.solver_version = solver_version(o);
    if (targets.size() == 1) {
      meta.top = targets[0].ir.top;
      meta.files = targets[0].ir.files;
      meta.sources = targets[0].sources;
    } else {
      meta.top = "corpus";
      for (const auto& t : targets) meta.files.insert(meta.files.end(), t.ir.files.begin(), t.ir.files.end());
    }
    std::filesystem::create_directories(o.report);
    std::ofstream(std::filesystem::path(o.report) / "sweep.csv", std::ios::binary) << csv;
    std::ofstream(std::filesystem::path(o.report) / "sweep.json", std::ios::binary)
        << dump(sweep_json(meta, rows));
  }
  return 0;
}

int cmd_export_graph(const Options& o) {
  DesignIR ir = load_design_files(o.files, o.top);
  IFGraph g = build_if_graph(ir);
  if (o.report.empty()) {
    std::cout << to_dot(g);
    return 0;
  }
  std::filesystem::create_directories(o.report);
  std::ofstream(std::filesystem::path(o.report) / "graph.dot", std::ios::binary) << to_dot(g);
  std::ofstream(std::filesystem::path(o.report) / "graph.json", std::ios::binary) << to_json(g, ir.files);
  std::cout << "graph written to " << o.report << "\n";
  return 0;
}

void add_common(CLI::App& app, Options& o) {
  app.add_option("--file", o.files, "Verilog source file (repeatable)")->envname("SEIF_FILE");
  app.add_option("--top", o.top, "Top module (default: the only uninstantiated module)")->envname("SEIF_TOP");
  app.add_option("--source", o.sources, "Source input signal (repeatable)")->envname("SEIF_SOURCE");
  app.add_option("--sink", o.sink, "Restrict paths to this sink")->envname("SEIF_SINK");
  app.add_option("--strategy", o.strategy,
                 "continue_stall|backtrack|stall_backtrack|unsat_core|all")
      ->envname("SEIF_STRATEGY");
  app.add_option("--stall-bound", o.stall_bound, "Stalls per segment (-1: strategy default)")
      ->envname("SEIF_STALL_BOUND");
  app.add_option("--max-cycles", o.max_cycles, "Clock cycles per path search")->envname("SEIF_MAX_CYCLES");
  app.add_option("--max-paths", o.max_paths, "Paths enumerated per source")->envname("SEIF_MAX_PATHS");
  app.add_option("--max-hops", o.max_hops, "Edges per path")->envname("SEIF_MAX_HOPS");
  app.add_flag("--from-reset", o.from_reset, "Search from the reset state only")->envname("SEIF_FROM_RESET");
  app.add_option("--solver", o.solver, "SMT-LIB2 solver binary")->envname("SEIF_SOLVER");
  app.add_option("--seed", o.seed, "Solver random seed")->envname("SEIF_SEED");
  app.add_option("--jobs", o.jobs, "Worker threads")->envname("SEIF_JOBS");
  app.add_option("--timeout-per-path", o.timeout_per_path, "Search budget per path in seconds")
      ->envname("SEIF_TIMEOUT_PER_PATH");
  app.add_option("--solver-timeout-ms", o.solver_timeout_ms, "Per-query solver timeout")
      ->envname("SEIF_SOLVER_TIMEOUT_MS");
  app.add_option("--backtrack-limit", o.backtrack_limit, "Backtracks per path search")
      ->envname("SEIF_BACKTRACK_LIMIT");
  app.add_option("--report", o.report, "Report directory")->envname("SEIF_REPORT");
  app.add_flag("--debug-smt", o.debug_smt, "Write solver transcripts")->envname("SEIF_DEBUG_SMT");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information-flow path analysis for synchronous Verilog designs", "seif"};
  app.set_version_flag("--version", std::string("seif ") + kToolVersion);
  app.set_config("--config", "", "TOML configuration file (keys are the long option names)");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  add_common(app, o);

  auto* analyze = app.add_subcommand("analyze", "Classify every IF path from the sources");
  auto* check = app.add_subcommand("check-property", "Search for flows violating a property");
  auto* sweep = app.add_subcommand("sweep-stall-bound", "Found-% per stall bound and strategy");
  auto* graph = app.add_subcommand("export-graph", "Write the IF graph as DOT and JSON");
  std::vector<std::string> positional;
  for (auto* sub : {analyze, check, sweep, graph}) sub->add_option("files", positional, "Verilog files");
  analyze->add_flag("--emit-graph", o.emit_graph, "Also write graph.dot");
  check->add_option("--precondition", o.precondition, "Condition assumed on every cycle")
      ->envname("SEIF_PRECONDITION");
  check->add_flag("--emit-graph", o.emit_graph, "Also write graph.dot");
  sweep->add_option("--max-stall-bound", o.max_stall_bound, "Largest stall bound swept")
      ->envname("SEIF_MAX_STALL_BOUND");
  sweep->add_option("--manifest", o.manifest, "Run over every design of a corpus manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  o.files.insert(o.files.end(), positional.begin(), positional.end());

  try {
    validate(o);
    if (*analyze) return cmd_analyze(o);
    if (*check) return cmd_check_property(o);
    if (*sweep) return cmd_sweep(o);
    return cmd_export_graph(o);
  } catch (const UsageError& e) {
    std::cerr << "seif: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << format_diagnostic(e, o.files) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "seif: internal error: " << e.what() << "\n";
    return 3;
  }
}

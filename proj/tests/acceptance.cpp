// Acceptance checks over the shipped corpus. Prints one PASS/FAIL line per
// criterion and exits non-zero when any criterion fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "seif/corpus.hpp"
#include "seif/engine.hpp"
#include "seif/simulator.hpp"
#include "seif/verilog.hpp"

using namespace seif;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

SmtOptions solver() {
  SmtOptions o;
  o.solver_path = SEIF_SOLVER;
  return o;
}

std::string corpus(const std::string& name) { return std::string(SEIF_CORPUS_DIR) + "/" + name; }

DesignIR load(const std::string& file) { return load_design_files({corpus(file)}); }

std::vector<std::string> nodes_of(const IFPath& p) {
  std::vector<std::string> out{p.source};
  for (const auto& h : p.hops) out.push_back(h.dst);
  return out;
}

std::optional<IFPath> find_path(const DesignIR& ir, const std::vector<std::string>& nodes) {
  IFGraph g = build_if_graph(ir);
  for (auto& p : enumerate_paths(g, nodes.front(), nodes.back()).paths) {
    if (nodes_of(p) == nodes) return p;
  }
  return std::nullopt;
}

FlowResult analyze(const DesignIR& ir, const IFPath& p, SearchConfig cfg) {
  SmtSession smt(solver());
  return analyze_path(ir, smt, p, cfg);
}

SearchConfig with(Strategy s) {
  SearchConfig c;
  c.strategy = s;
  return c;
}

int bits(const std::vector<const SignalDecl*>& sigs) {
  int n = 0;
  for (const auto* s : sigs) n += s->width;
  return n;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int n, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << secs;
  std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title << "  ["
            << o.detail << "; " << os.str() << " s]" << std::endl;
}

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string(SEIF_CLI) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc != 0) throw std::runtime_error("command failed (" + std::to_string(rc) + "): " + cmd);
  return cmd;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome toy1_flow() {
  DesignIR ir = load("toy1.v");
  const auto t0 = Clock::now();
  auto sa = analyze_source(ir, build_if_graph(ir), "secret", std::string("led"), SearchConfig{}, solver());
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  for (const auto& r : sa.results) {
    if (nodes_of(r.path) != std::vector<std::string>{"secret", "guard", "led"}) continue;
    bool enabled = r.trace.has_value();
    if (r.trace) {
      for (const auto& step : r.trace->steps) enabled = enabled && step.at("enable") == 1;
    }
    std::ostringstream d;
    d << verdict_name(r.verdict) << ", " << r.cycles << " cycles, enable=1 every cycle: "
      << (enabled ? "yes" : "no") << ", wall " << secs << " s";
    return {r.verdict == Verdict::FoundFromReset && r.cycles == 4 && enabled && secs < 5.0, d.str()};
  }
  return {false, "path secret -> guard -> led not enumerated"};
}

Outcome prev2_variant() {
  DesignIR ir = load("toy1_prev2.v");
  auto p = find_path(ir, {"secret", "guard", "led"});
  if (!p) return {false, "path not enumerated"};
  SearchConfig cfg;
  cfg.max_cycles = 16;
  FlowResult r = analyze(ir, *p, cfg);
  BruteForceResult bf = brute_force_flows(ir, "secret", "led", 16);
  std::ostringstream d;
  d << "engine " << verdict_name(r.verdict);
  if (is_found(r.verdict)) d << " in " << r.cycles << " cycles";
  d << ", brute force " << (bf.exists ? "exists after " + std::to_string(bf.cycles) + " cycles" : "not_within_bound");
  return {r.verdict == Verdict::InfeasibleBounded && !bf.exists, d.str()};
}

Outcome toy2_pruning() {
  DesignIR ir = load("toy2.v");
  auto p = find_path(ir, {"secret", "temp", "result", "led2"});
  if (!p) return {false, "path not enumerated"};
  FlowResult r = analyze(ir, *p, SearchConfig{});
  ConstraintSet atoms = segment_atoms(ir, segment_path(*p)[std::max(0, r.core_segment)], std::max(0, r.core_segment));
  std::set<std::string> hops;
  bool all_enable = !r.core.empty();
  std::vector<std::string> printed;
  for (const auto& label : r.core) {
    for (const auto& a : atoms) {
      if (a.label != label) continue;
      printed.push_back(to_string(a.expr));
      bool mentions = false;
      for (const auto& [s, w] : collect_symbols(a.expr)) mentions = mentions || s.name == "enable";
      all_enable = all_enable && mentions;
      hops.insert(label.substr(0, label.rfind('/')));
    }
  }
  std::ostringstream d;
  d << verdict_name(r.verdict) << ", core {";
  for (std::size_t i = 0; i < printed.size(); ++i) d << (i ? ", " : "") << printed[i];
  d << "} over " << hops.size() << " hops, " << r.stats.step_calls << " symbolic cycles";
  return {r.verdict == Verdict::PrunedGlobal && printed.size() == r.core.size() && all_enable &&
              hops.size() >= 2 && r.stats.step_calls == 0,
          d.str()};
}

Outcome stalling() {
  DesignIR ir = load("toy_stalling.v");
  auto p = find_path(ir, {"secret", "guard0", "guard", "led"});
  if (!p) return {false, "path not enumerated"};
  FlowResult uc = analyze(ir, *p, with(Strategy::StallUnsatCore));
  FlowResult sb = analyze(ir, *p, with(Strategy::StallBacktrack));
  FlowResult bo = analyze(ir, *p, with(Strategy::BacktrackOnly));
  bool clear_low = uc.trace.has_value() && !uc.stall_cycles.empty();
  for (int c : uc.stall_cycles) clear_low = clear_low && uc.trace->steps.at(c).at("clear") == 0;
  std::ostringstream d;
  d << "stall_unsat_core " << verdict_name(uc.verdict) << " with " << uc.stall_cycles.size()
    << " stalls (clear=0 on all: " << (clear_low ? "yes" : "no") << "), stall_backtrack "
    << verdict_name(sb.verdict) << ", backtrack_only " << verdict_name(bo.verdict);
  return {uc.verdict == Verdict::FoundFromReset && clear_low && sb.verdict == Verdict::FoundFromReset &&
              !is_found(bo.verdict),
          d.str()};
}

Outcome semantic() {
  struct Case {
    const char* file;
    const char* source;
    const char* sink;
    bool true_flow;
  };
  const Case cases[] = {{"xor_self.v", "x", "y", false},
                        {"reconv_case1.v", "x", "z", false},
                        {"reconv_case3.v", "x", "z", true}};
  bool ok = true;
  std::ostringstream d;
  for (const auto& c : cases) {
    DesignIR ir = load(c.file);
    auto sa = analyze_source(ir, build_if_graph(ir), c.source, std::string(c.sink), SearchConfig{}, solver());
    int found = 0, not_true = 0, replayed = 0;
    for (const auto& r : sa.results) {
      if (is_found(r.verdict)) {
        ++found;
        if (differential_replay(ir, *r.trace, c.source, c.sink, r.alternate ? &*r.alternate : nullptr)
                .flow_confirmed) {
          ++replayed;
        }
      }
      if (r.verdict == Verdict::NotTrueFlow) ++not_true;
    }
    const bool oracle = brute_force_flows(ir, c.source, c.sink, 6).exists;
    const bool good = c.true_flow ? (found > 0 && replayed == found && oracle)
                                  : (not_true == static_cast<int>(sa.results.size()) && !oracle);
    ok = ok && good && !sa.results.empty();
    d << c.file << ": " << found << " found/" << not_true << " not_true_flow of " << sa.results.size()
      << ", oracle " << (oracle ? "flow" : "no flow") << "; ";
  }
  return {ok, d.str()};
}

Outcome oracle_soundness(const std::vector<CorpusEntry>& entries) {
  SearchConfig cfg;
  cfg.max_cycles = 6;
  cfg.stall_bound = 6;
  int designs = 0, paths = 0, found = 0, refuted = 0, bad = 0;
  std::string first_bad;
  SmtSession smt(solver());
  for (const auto& e : entries) {
    DesignIR ir = load_design_files(e.files, e.top);
    if (bits(ir.registers()) > 8 || bits(ir.data_inputs()) > 4) continue;
    ++designs;
    IFGraph g = build_if_graph(ir);
    for (const auto* in : ir.data_inputs()) {
      for (const auto& p : enumerate_paths(g, in->name).paths) {
        ++paths;
        FlowResult r = analyze_path(ir, smt, p, cfg);
        bool sound = true;
        if (is_found(r.verdict)) {
          ++found;
          sound = r.trace && differential_replay(ir, *r.trace, p.source, p.sink,
                                                 r.alternate ? &*r.alternate : nullptr)
                                 .flow_confirmed;
        } else if (r.verdict == Verdict::PrunedGlobal || r.verdict == Verdict::InfeasibleBounded) {
          ++refuted;
          sound = !brute_force_segments(ir, segment_path(p), 6);
        }
        if (!sound) {
          ++bad;
          if (first_bad.empty()) first_bad = e.name + ": " + path_to_string(p) + " " + verdict_name(r.verdict);
        }
      }
    }
  }
  std::ostringstream d;
  d << designs << " designs, " << paths << " paths, " << found << " found replayed, " << refuted
    << " refuted checked, " << bad << " counterexamples";
  if (!first_bad.empty()) d << " (first: " << first_bad << ")";
  return {bad == 0 && paths > 0, d.str()};
}

Outcome executor_agreement(const std::vector<CorpusEntry>& entries) {
  constexpr int kDepth = 6;
  long states = 0, checks = 0, mismatches = 0;
  int designs = 0;
  std::string first_bad;
  SmtSession smt(solver());
  for (const auto& e : entries) {
    DesignIR ir = load_design_files(e.files, e.top);
    const auto inputs = ir.data_inputs();
    if (bits(inputs) > 8) continue;
    ++designs;
    SymbolicExecutor ex(ir, smt);

    std::vector<Valuation> all_inputs(1);
    for (const auto* in : inputs) {
      std::vector<Valuation> next;
      for (const auto& v : all_inputs) {
        for (Value x = 0; x < (Value{1} << in->width); ++x) {
          Valuation w = v;
          w[in->name] = x;
          next.push_back(w);
        }
      }
      all_inputs = std::move(next);
    }

    std::set<Valuation> seen;
    std::vector<ConcreteState> frontier{reset_state(ir)};
    seen.insert(frontier[0].regs);
    for (int depth = 0; depth <= kDepth && !frontier.empty(); ++depth) {
      std::vector<ConcreteState> next_frontier;
      for (const auto& cs : frontier) {
        ++states;
        SymbolicState sym = init_state(ir, StartMode::Reset);
        for (const auto& [reg, v] : cs.regs) sym.regs[reg] = constant(ir.signal(reg).width, v);
        StepResult step = ex.step_cycle(sym);
        for (const auto& in : all_inputs) {
          ++checks;
          SymbolLookup lookup = [&](const Symbol& s) -> std::optional<Value> {
            auto it = in.find(s.name);
            if (s.cycle == sym.cycle && it != in.end()) return it->second;
            return std::nullopt;
          };
          SimStep concrete = sim_step(ir, cs, in);
          int matching = 0;
          bool equal = false;
          for (const auto& succ : step.successors) {
            bool holds = true;
            for (std::size_t i = sym.pc.size(); i < succ.pc.size() && holds; ++i) {
              holds = evaluate(succ.pc[i].expr, lookup) == 1;
            }
            if (!holds) continue;
            ++matching;
            equal = succ.history.back().lines == concrete.lines;
            for (const auto& [reg, expr] : succ.regs) {
              equal = equal && evaluate(expr, lookup) == concrete.next.regs.at(reg);
            }
          }
          if (matching != 1 || !equal) {
            ++mismatches;
            if (first_bad.empty()) {
              first_bad = e.name + " (" + std::to_string(matching) + " successors match)";
            }
          }
          if (seen.insert(concrete.next.regs).second) next_frontier.push_back(concrete.next);
        }
      }
      frontier = std::move(next_frontier);
    }
  }
  std::ostringstream d;
  d << designs << " designs, " << states << " reachable states, " << checks << " state/input pairs, "
    << mismatches << " mismatches";
  if (!first_bad.empty()) d << " (first: " << first_bad << ")";
  return {mismatches == 0 && checks > 0, d.str()};
}

Outcome strategy_trend(const std::vector<CorpusEntry>& entries) {
  std::map<Strategy, std::pair<long, long>> pooled;  // backtracks, step calls
  std::map<Strategy, double> mean;
  for (Strategy s : {Strategy::BacktrackOnly, Strategy::StallBacktrack, Strategy::StallUnsatCore}) {
    for (const auto& e : entries) {
      DesignIR ir = load_design_files(e.files, e.top);
      IFGraph g = build_if_graph(ir);
      long bt = 0, steps = 0;
      for (const auto& src : e.sources) {
        for (const auto& r : analyze_source(ir, g, src, e.sink, with(s), solver()).results) {
          bt += r.stats.backtracks;
          steps += r.stats.step_calls;
        }
      }
      pooled[s].first += bt;
      pooled[s].second += steps;
      mean[s] += steps ? static_cast<double>(bt) / steps / entries.size() : 0.0;
    }
  }
  auto freq = [&](Strategy s) {
    return pooled[s].second ? static_cast<double>(pooled[s].first) / pooled[s].second : 0.0;
  };
  std::ostringstream d;
  d.precision(4);
  d << std::fixed << "backtracks per symbolic cycle: unsat_core " << freq(Strategy::StallUnsatCore)
    << ", stall_backtrack " << freq(Strategy::StallBacktrack) << ", backtrack_only "
    << freq(Strategy::BacktrackOnly) << " (per-design mean " << mean[Strategy::StallUnsatCore] << ", "
    << mean[Strategy::StallBacktrack] << ", " << mean[Strategy::BacktrackOnly] << ")";
  return {freq(Strategy::StallUnsatCore) <= freq(Strategy::StallBacktrack) &&
              freq(Strategy::StallBacktrack) <= freq(Strategy::BacktrackOnly),
          d.str()};
}

Outcome sweep_monotone(const fs::path& work) {
  const fs::path dir = work / "sweep";
  run_cli("sweep-stall-bound --manifest " + corpus("manifest.json") +
          " --strategy all --max-stall-bound 6 --jobs 4 --report " + dir.string());
  auto rows = nlohmann::json::parse(slurp(dir / "sweep.json")).at("rows");
  std::map<std::string, std::vector<double>> curves;
  for (const auto& r : rows) curves[r.at("strategy")].push_back(r.at("found_pct").get<double>());
  bool ok = curves.size() == 3;
  std::ostringstream d;
  for (const auto& [name, curve] : curves) {
    d << name << " {";
    for (std::size_t i = 0; i < curve.size(); ++i) {
      d << (i ? " " : "") << curve[i];
      if (i > 0 && curve[i] < curve[i - 1]) ok = false;
    }
    d << "} ";
  }
  return {ok, d.str()};
}

Outcome determinism(const std::vector<CorpusEntry>& entries, const fs::path& work) {
  int compared = 0, differing = 0;
  for (const auto& e : entries) {
    std::string args = "analyze --strategy all --seed 7 --jobs 2";
    for (const auto& f : e.files) args += " " + f;
    if (!e.top.empty()) args += " --top " + e.top;
    for (const auto& s : e.sources) args += " --source " + s;
    std::string outputs[2];
    for (int i = 0; i < 2; ++i) {
      const fs::path dir = work / ("det-" + e.name + "-" + std::to_string(i));
      run_cli(args + " --report " + dir.string());
      outputs[i] = slurp(dir / "report.json");
    }
    ++compared;
    if (outputs[0].empty() || outputs[0] != outputs[1]) ++differing;
  }
  return {compared > 0 && differing == 0,
          std::to_string(compared) + " designs analyzed twice, " + std::to_string(differing) + " differ"};
}

}  // namespace

int main() {
  const auto entries = load_manifest(corpus("manifest.json"));
  const fs::path work = fs::temp_directory_path() / ("seif-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(work);

  report(1, "toy1 flow found from reset in 4 cycles", toy1_flow);
  report(2, "prev==2 variant infeasible within 16 cycles", prev2_variant);
  report(3, "toy2 path pruned globally on the enable conditions", toy2_pruning);
  report(4, "stalling design needs stalls", stalling);
  report(5, "semantic pruning matches the oracle", semantic);
  report(6, "oracle soundness at bound 6", [&] { return oracle_soundness(entries); });
  report(7, "executor agrees with simulator within 6 cycles", [&] { return executor_agreement(entries); });
  report(8, "backtrack frequency trend", [&] { return strategy_trend(entries); });
  report(9, "found-% non-decreasing in stall bound", [&] { return sweep_monotone(work); });
  report(10, "byte-identical report.json", [&] { return determinism(entries, work); });

  fs::remove_all(work);
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
  return failures ? 1 : 0;
}

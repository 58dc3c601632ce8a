#include "seif/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "seif/simulator.hpp"

namespace seif {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::ContinueStall: return "continue_stall";
    case Strategy::BacktrackOnly: return "backtrack_only";
    case Strategy::StallBacktrack: return "stall_backtrack";
    case Strategy::StallUnsatCore: return "stall_unsat_core";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(const std::string& text) {
  if (text == "backtrack") return Strategy::BacktrackOnly;
  if (text == "unsat_core") return Strategy::StallUnsatCore;
  for (Strategy s : kAllStrategies) {
    if (text == strategy_name(s)) return s;
  }
  return std::nullopt;
}

int default_stall_bound(Strategy s) {
  switch (s) {
    case Strategy::ContinueStall: return 5;
    case Strategy::BacktrackOnly: return 0;
    case Strategy::StallBacktrack: return 5;
    case Strategy::StallUnsatCore: return 4;
  }
  return 0;
}

int SearchConfig::effective_stall_bound() const {
  if (strategy == Strategy::BacktrackOnly) return 0;
  return stall_bound < 0 ? default_stall_bound(strategy) : stall_bound;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::FoundFromReset: return "found_from_reset";
    case Verdict::FoundIntermediate: return "found_intermediate";
    case Verdict::PrunedGlobal: return "pruned_global";
    case Verdict::InfeasibleBounded: return "infeasible_bounded";
    case Verdict::NotTrueFlow: return "not_true_flow";
    case Verdict::Unaccounted: return "unaccounted";
  }
  return "?";
}

bool is_found(Verdict v) { return v == Verdict::FoundFromReset || v == Verdict::FoundIntermediate; }

bool is_violation(const FlowResult& r) {
  return r.verdict == Verdict::FoundFromReset && r.replay_confirmed;
}

namespace {

void split_conjuncts(const Expr& e, std::vector<Expr>& out) {
  if (e.op() == Op::And && e.width() == 1) {
    for (const auto& a : e.args()) split_conjuncts(a, out);
    return;
  }
  out.push_back(e);
}

Expr inline_wires(const DesignIR& ir, const Expr& e) {
  return substitute(e, [&](const Symbol& sym, Width w) -> std::optional<Expr> {
    if (!sym.is_signal_ref()) return std::nullopt;
    const SignalDecl* d = ir.find(sym.name);
    if (!d || d->kind != SignalKind::Wire) return std::nullopt;
    if (auto drv = ir.driver_of(sym.name)) return *drv;
    return constant(w, 0);
  });
}

ConstraintSet bind_atoms(const DesignIR& ir, const ConstraintSet& atoms, const SymbolicState& s,
                         const std::string& prefix) {
  const auto wires = wire_env(ir, s);
  ConstraintSet out;
  for (const auto& a : atoms) {
    out.push_back({prefix + a.label, to_bool(bind_signals(ir, a.expr, s.regs, wires, s.cycle))});
  }
  return out;
}

}  // namespace

ConstraintSet segment_atoms(const DesignIR& ir, const Segment& seg, int k) {
  ConstraintSet out;
  for (std::size_t h = 0; h < seg.hops.size(); ++h) {
    std::vector<Expr> parts;
    for (const auto& c : seg.hops[h].conditions) split_conjuncts(to_bool(inline_wires(ir, c)), parts);
    for (std::size_t n = 0; n < parts.size(); ++n) {
      out.push_back({"seg" + std::to_string(k) + "/h" + std::to_string(h) + "/" + std::to_string(n),
                     parts[n]});
    }
  }
  return out;
}

PruneResult prune_global(const DesignIR& ir, SmtSession& smt, const std::vector<Segment>& segs) {
  PruneResult r;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    ConstraintSet atoms = segment_atoms(ir, segs[k], static_cast<int>(k));
    if (atoms.empty()) continue;
    auto cr = smt.check(atoms, {}, CheckOptions{false, true});
    if (cr.status == SatStatus::Unknown) {
      r.unknown = true;
      continue;
    }
    if (cr.status == SatStatus::Unsat) {
      r.keep = false;
      r.segment = static_cast<int>(k);
      r.core = cr.core;
      return r;
    }
  }
  return r;
}

BoundaryCheck cycle_boundary_prune(const DesignIR& ir, SmtSession& smt, const SymbolicState& s,
                                   const Segment& seg, int k) {
  BoundaryCheck b;
  ConstraintSet q = s.pc;
  bool symbolic = false;
  for (auto& a : bind_atoms(ir, segment_atoms(ir, seg, k), s, "c" + std::to_string(s.cycle) + "/")) {
    if (a.expr.is_true()) continue;
    if (!a.expr.is_const()) symbolic = true;
    q.push_back(std::move(a));
  }
  if (!symbolic && q.size() == s.pc.size()) return b;
  auto cr = smt.check(q, {}, CheckOptions{false, true});
  if (cr.status == SatStatus::Unknown) {
    b.unknown = true;
    return b;
  }
  if (cr.status == SatStatus::Unsat) {
    b.feasible = false;
    b.core = cr.core;
  }
  return b;
}

StallResult stall_step(SymbolicExecutor& ex, const SymbolicState& s, const std::string& resident,
                       const ConstraintSet& extra) {
  StepRestriction r;
  r.extra = extra;
  if (!resident.empty() && ex.ir().is_state(resident)) {
    r.blocked = stall_blocked_lines(ex.ir(), resident);
  }
  StepResult step = ex.step_cycle(s, r);
  StallResult out;
  out.truncated = step.truncated;
  out.unknown = step.unknown;
  out.cannot_stall_here = step.failure == StepFailure::RestrictionUnsatisfiable;
  out.successors = std::move(step.successors);
  for (auto& n : out.successors) n.history.back().stall = true;
  return out;
}

ResetCheck reset_check(const DesignIR& ir, SmtSession& smt, const SymbolicState& s,
                       const ConstraintSet& extra, const std::map<Symbol, Width>& symbols) {
  ResetCheck rc;
  ConstraintSet q = s.pc;
  q.insert(q.end(), extra.begin(), extra.end());
  if (s.mode == StartMode::Free) {
    for (const auto* r : ir.registers()) {
      q.push_back({"reset/" + r->name,
                   eq(symbol(initial_symbol(r->name), r->width), constant(r->width, ir.reset_value(r->name)))});
    }
  }
  std::map<Symbol, Width> syms = symbols.empty() ? trace_symbols(ir, s, s.cycle + 1) : symbols;
  auto cr = smt.check(q, syms, CheckOptions{true, false});
  rc.unknown = cr.status == SatStatus::Unknown;
  rc.from_reset = cr.status == SatStatus::Sat;
  rc.model = std::move(cr.model);
  return rc;
}

SemanticCheck semantic_check(const DesignIR& ir, SmtSession& smt, const SymbolicState& terminal,
                             const std::string& source, const std::string& sink) {
  SemanticCheck sc;
  sc.sink_expr = observe(ir, terminal, sink);
  auto prime = [&](const Expr& e) {
    return substitute(e, [&](const Symbol& sym, Width w) -> std::optional<Expr> {
      if (sym.name != source || sym.cycle < 0 || sym.variant != 0) return std::nullopt;
      return symbol(input_symbol(sym.name, sym.cycle, 1), w);
    });
  };
  sc.query = terminal.pc;
  for (const auto& k : terminal.pc) sc.query.push_back({"p/" + k.label, prime(k.expr)});
  sc.query.push_back({"differ", neq(sc.sink_expr, prime(sc.sink_expr))});
  sc.symbols = trace_symbols(ir, terminal, terminal.cycle + 1);
  const Width sw = ir.signal(source).width;
  for (int c = 0; c <= terminal.cycle; ++c) sc.symbols[input_symbol(source, c, 1)] = sw;

  auto cr = smt.check(sc.query, sc.symbols, CheckOptions{true, false});
  sc.unknown = cr.status == SatStatus::Unknown;
  sc.true_flow = cr.status != SatStatus::Unsat;
  sc.model = std::move(cr.model);
  return sc;
}

namespace {

using SteadyClock = std::chrono::steady_clock;

bool needs_step(const Segment& seg) {
  for (const auto& h : seg.hops) {
    if (h.assign_class != AssignClass::Continuous) return true;
  }
  return false;
}

struct Outcome {
  enum class Kind { Found, NotTrue, Exhausted, Incomplete } kind = Kind::Exhausted;
  std::optional<SymbolicState> terminal;
  SemanticCheck sem;
  std::optional<SymbolicState> not_true_terminal;
  std::string not_true_expr;
  bool saw_not_true = false;
  bool unknown = false;
  std::string reason;
  int core_segment = -1;
  std::vector<std::string> core;  // first cycle-boundary contradiction
};

class PathSearch {
 public:
  PathSearch(const DesignIR& ir, SmtSession& smt, const IFPath& path, const std::vector<Segment>& segs,
             const SearchConfig& cfg, SearchStats& stats, SteadyClock::time_point deadline)
      : ir_(ir), smt_(smt), ex_(ir, smt, cfg.exec), path_(path), segs_(segs), cfg_(cfg),
        stats_(stats), deadline_(deadline), bound_(cfg.effective_stall_bound()) {
    for (std::size_t i = 0; i < cfg.precondition.size(); ++i) {
      pre_.push_back({"pre/" + std::to_string(i), to_bool(cfg.precondition[i])});
    }
    for (std::size_t k = 0; k < segs.size(); ++k) {
      atoms_.push_back(segment_atoms(ir, segs[k], static_cast<int>(k)));
      std::set<LineId> lines;
      for (const auto& h : segs[k].hops) {
        if (h.assign_class != AssignClass::Continuous) lines.insert(h.line);
      }
      lines_.push_back(std::move(lines));
    }
  }

  Outcome run(StartMode mode) {
    out_ = Outcome{};
    aborted_ = false;
    const SymbolicState init = init_state(ir_, mode);
    if (cfg_.strategy == Strategy::ContinueStall) {
      patterns(init);
    } else {
      dfs(init, 0, 0);
    }
    if (out_.kind == Outcome::Kind::Found) return std::move(out_);
    if (out_.saw_not_true) {
      out_.kind = Outcome::Kind::NotTrue;
    } else if (aborted_ || incomplete_) {
      out_.kind = Outcome::Kind::Incomplete;
      if (out_.reason.empty()) out_.reason = "search incomplete";
    } else {
      out_.kind = Outcome::Kind::Exhausted;
      out_.reason = "no design path realizes the IF path within " + std::to_string(cfg_.max_cycles) +
                    " cycles";
    }
    return std::move(out_);
  }

 private:
  bool out_of_budget() {
    if (aborted_) return true;
    if (SteadyClock::now() > deadline_) {
      abort("time budget exhausted");
    } else if (stats_.backtracks >= cfg_.backtrack_limit) {
      abort("backtrack limit reached");
    }
    return aborted_;
  }

  void abort(const std::string& why) {
    aborted_ = true;
    if (out_.reason.empty()) out_.reason = why;
  }

  ConstraintSet bound_pre(const SymbolicState& s, const std::string& prefix) const {
    return bind_atoms(ir_, pre_, s, prefix);
  }

  // Rank of the boundary core for segment k in s: (segment atoms, all
  // labels), both 0 when the segment can start.
  std::pair<std::size_t, std::size_t> boundary(const SymbolicState& s, std::size_t k) {
    auto b = cycle_boundary_prune(ir_, smt_, s, segs_[k], static_cast<int>(k));
    if (b.unknown) out_.unknown = true;
    if (b.feasible) return {0, 0};
    if (out_.core.empty()) {
      out_.core = b.core;
      out_.core_segment = static_cast<int>(k);
    }
    std::size_t seg = 0;
    for (const auto& l : b.core) seg += l.find("/seg") != std::string::npos ? 1 : 0;
    return {std::max<std::size_t>(seg, 1), std::max<std::size_t>(b.core.size(), 1)};
  }

  // Successors realizing segment k from s (terminal states for the last one).
  std::vector<SymbolicState> advance(const SymbolicState& s, std::size_t k) {
    const Segment& seg = segs_[k];
    if (!needs_step(seg)) {
      SymbolicState t = s;
      const std::string prefix = "c" + std::to_string(s.cycle) + "/";
      bool symbolic = false;
      ConstraintSet add = bind_atoms(ir_, atoms_[k], s, prefix);
      for (auto& p : bound_pre(s, prefix)) add.push_back(std::move(p));
      for (auto& a : add) {
        if (a.expr.is_false()) return {};
        if (a.expr.is_true()) continue;
        symbolic = true;
        t.pc.push_back(std::move(a));
      }
      if (symbolic) {
        auto cr = smt_.check(t.pc, {}, CheckOptions{false, false});
        if (cr.status == SatStatus::Unknown) out_.unknown = true;
        if (cr.status == SatStatus::Unsat) return {};
      }
      return {std::move(t)};
    }
    if (s.cycle >= cfg_.max_cycles) return {};
    if (boundary(s, k).first > 0) return {};
    StepRestriction r;
    r.required = lines_[k];
    r.extra = atoms_[k];
    r.extra.insert(r.extra.end(), pre_.begin(), pre_.end());
    ++stats_.step_calls;
    StepResult res = ex_.step_cycle(s, r);
    note(res.truncated, res.unknown);
    if (k + 1 == segs_.size() && !pre_.empty()) {
      // the sink is sampled in the terminal cycle, where the precondition must hold too
      std::vector<SymbolicState> kept;
      for (auto& n : res.successors) {
        for (auto& p : bound_pre(n, "c" + std::to_string(n.cycle) + "/")) n.pc.push_back(std::move(p));
        auto cr = smt_.check(n.pc, {}, CheckOptions{false, false});
        if (cr.status != SatStatus::Unsat) kept.push_back(std::move(n));
      }
      return kept;
    }
    return std::move(res.successors);
  }

  std::vector<SymbolicState> stall(const SymbolicState& s, std::size_t k) {
    if (s.cycle >= cfg_.max_cycles) return {};
    const std::string resident = k > 0 ? segs_[k - 1].resident : std::string();
    ++stats_.step_calls;
    ++stats_.stalls;
    StallResult r = stall_step(ex_, s, resident, pre_);
    note(r.truncated, r.unknown);
    return std::move(r.successors);
  }

  void note(bool truncated, int unknown) {
    if (truncated) {
      incomplete_ = true;
      if (out_.reason.empty()) out_.reason = "successor cap reached";
    }
    if (unknown > 0) {
      incomplete_ = true;
      out_.unknown = true;
      if (out_.reason.empty()) out_.reason = "solver returned unknown";
    }
  }

  // The first state realizing every segment ends the search.
  bool terminal(SymbolicState t) {
    ++stats_.terminals;
    SemanticCheck sem = semantic_check(ir_, smt_, t, path_.source, path_.sink);
    if (sem.unknown) out_.unknown = true;
    if (sem.true_flow) {
      out_.kind = Outcome::Kind::Found;
      out_.terminal = std::move(t);
      out_.sem = std::move(sem);
    } else {
      out_.saw_not_true = true;
      out_.not_true_terminal = std::move(t);
      out_.not_true_expr = to_string(sem.sink_expr);
    }
    return true;
  }

  bool dfs(const SymbolicState& s, std::size_t k, int stalls) {
    if (out_of_budget()) return false;
    const auto pre_rank = cfg_.strategy == Strategy::StallUnsatCore
                              ? boundary(s, k)
                              : std::pair<std::size_t, std::size_t>{0, 0};
    for (auto& n : advance(s, k)) {
      if (k + 1 == segs_.size()) return terminal(std::move(n));
      if (dfs(n, k + 1, 0)) return true;
      if (aborted_) return false;
      ++stats_.backtracks;
      if (out_of_budget()) return false;
    }
    if (stalls >= bound_) return false;
    std::vector<SymbolicState> cands = stall(s, k);
    const bool blocked = pre_rank.first > 0;
    if (cfg_.strategy == Strategy::StallUnsatCore && blocked && cands.size() > 1) {
      std::vector<std::pair<std::tuple<bool, std::size_t, std::size_t>, std::size_t>> keys;
      for (std::size_t i = 0; i < cands.size(); ++i) {
        const auto rank = boundary(cands[i], k);
        keys.push_back({{rank > pre_rank, rank.first, rank.second}, i});
      }
      std::stable_sort(keys.begin(), keys.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      std::vector<SymbolicState> ordered;
      for (const auto& kv : keys) ordered.push_back(std::move(cands[kv.second]));
      cands = std::move(ordered);
    }
    for (const auto& n : cands) {
      if (dfs(n, k, stalls + 1)) return true;
      if (aborted_) return false;
    }
    return false;
  }

  void patterns(const SymbolicState& init) {
    const std::size_t n = segs_.size();
    std::vector<int> v(n, 0);
    auto next = [&](std::size_t digit) {
      // odometer increment at `digit`, segment 0 most significant
      for (std::size_t i = digit + 1; i < n; ++i) v[i] = 0;
      for (std::size_t i = digit + 1; i-- > 0;) {
        if (v[i] < bound_) {
          ++v[i];
          return true;
        }
        v[i] = 0;
      }
      return false;
    };
    int steps = 0;
    for (const auto& seg : segs_) steps += needs_step(seg) ? 1 : 0;
    bool more = true;
    while (more) {
      if (out_of_budget()) return;
      int total = 0;
      for (int x : v) total += x;
      if (total + steps > cfg_.max_cycles) {
        // later digits only grow the total; skip to the next prefix
        std::size_t last = n - 1;
        while (last > 0 && v[last] == 0) --last;
        more = last > 0 ? next(last - 1) : false;
        continue;
      }
      const std::size_t failed = run_pattern(init, v);
      if (out_.kind == Outcome::Kind::Found || out_.saw_not_true) return;
      more = next(std::min(failed, n - 1));
    }
  }

  // Returns the segment index where the pattern ran dry (n when it completed).
  std::size_t run_pattern(const SymbolicState& init, const std::vector<int>& v) {
    std::vector<SymbolicState> frontier{init};
    const std::size_t n = segs_.size();
    auto cap = [&](std::vector<SymbolicState>& f) {
      if (static_cast<int>(f.size()) > cfg_.frontier_cap) {
        f.resize(cfg_.frontier_cap);
        incomplete_ = true;
        if (out_.reason.empty()) out_.reason = "frontier cap reached";
      }
    };
    for (std::size_t k = 0; k < n; ++k) {
      for (int i = 0; i < v[k]; ++i) {
        std::vector<SymbolicState> next;
        for (const auto& s : frontier) {
          if (out_of_budget()) return k;
          for (auto& m : stall(s, k)) next.push_back(std::move(m));
        }
        frontier = std::move(next);
        cap(frontier);
        if (frontier.empty()) return k;
      }
      std::vector<SymbolicState> next;
      for (const auto& s : frontier) {
        if (out_of_budget()) return k;
        for (auto& m : advance(s, k)) {
          if (k + 1 == n) {
            if (terminal(std::move(m))) return n;
          } else {
            next.push_back(std::move(m));
          }
        }
      }
      if (k + 1 == n) return n;
      frontier = std::move(next);
      cap(frontier);
      if (frontier.empty()) return k;
    }
    return n;
  }

  const DesignIR& ir_;
  SmtSession& smt_;
  SymbolicExecutor ex_;
  const IFPath& path_;
  const std::vector<Segment>& segs_;
  const SearchConfig& cfg_;
  SearchStats& stats_;
  SteadyClock::time_point deadline_;
  int bound_;
  ConstraintSet pre_;
  std::vector<ConstraintSet> atoms_;
  std::vector<std::set<LineId>> lines_;
  Outcome out_;
  bool aborted_ = false;
  bool incomplete_ = false;
};

void fill_found(const DesignIR& ir, FlowResult& r, const SymbolicState& t, const Model& m,
                bool from_reset) {
  r.trace = trace_from_model(ir, m, t, true);
  r.alternate = trace_from_model(ir, m, t, true, {r.path.source});
  r.trace->from_reset = r.alternate->from_reset = from_reset;
  r.cycles = t.cycle;
  r.stall_cycles.clear();
  for (const auto& h : t.history) {
    if (h.stall) r.stall_cycles.push_back(h.cycle);
  }
  r.replay_confirmed =
      differential_replay(ir, *r.trace, r.path.source, r.path.sink, &*r.alternate).flow_confirmed;
}

}  // namespace

FlowResult analyze_path(const DesignIR& ir, SmtSession& smt, const IFPath& path,
                        const SearchConfig& cfg) {
  const auto start = SteadyClock::now();
  const long q0 = smt.query_count();
  FlowResult r;
  r.path = path;
  const auto segs = segment_path(path);
  auto finish = [&]() {
    r.stats.solver_queries = smt.query_count() - q0;
    r.stats.wall_time_s = std::chrono::duration<double>(SteadyClock::now() - start).count();
    return r;
  };

  PruneResult pr = prune_global(ir, smt, segs);
  r.solver_unknown = pr.unknown;
  if (!pr.keep) {
    r.verdict = Verdict::PrunedGlobal;
    r.core_segment = pr.segment;
    r.core = pr.core;
    r.reason = "segment " + std::to_string(pr.segment) + " conditions are contradictory";
    return finish();
  }

  const auto deadline =
      start + std::chrono::duration_cast<SteadyClock::duration>(std::chrono::duration<double>(cfg.time_budget_s));
  PathSearch search(ir, smt, path, segs, cfg, r.stats, deadline);
  const StartMode first = cfg.from_reset ? StartMode::Reset : StartMode::Free;
  Outcome o = search.run(first);
  r.mode = start_mode_name(first);
  r.solver_unknown = r.solver_unknown || o.unknown;
  r.path_dependent = o.saw_not_true;

  switch (o.kind) {
    case Outcome::Kind::Found: {
      r.sink_expr = to_string(o.sem.sink_expr);
      if (first == StartMode::Reset) {
        r.verdict = Verdict::FoundFromReset;
        fill_found(ir, r, *o.terminal, o.sem.model, true);
        break;
      }
      ResetCheck rc = reset_check(ir, smt, *o.terminal, o.sem.query, o.sem.symbols);
      r.solver_unknown = r.solver_unknown || rc.unknown;
      if (rc.from_reset) {
        r.verdict = Verdict::FoundFromReset;
        fill_found(ir, r, *o.terminal, rc.model, true);
        break;
      }
      Outcome again = search.run(StartMode::Reset);
      r.solver_unknown = r.solver_unknown || again.unknown;
      if (again.kind == Outcome::Kind::Found) {
        r.verdict = Verdict::FoundFromReset;
        r.mode = start_mode_name(StartMode::Reset);
        r.sink_expr = to_string(again.sem.sink_expr);
        r.path_dependent = r.path_dependent || again.saw_not_true;
        fill_found(ir, r, *again.terminal, again.sem.model, true);
      } else {
        r.verdict = Verdict::FoundIntermediate;
        fill_found(ir, r, *o.terminal, o.sem.model, false);
        r.reason = "path condition conflicts with the reset state";
      }
      break;
    }
    case Outcome::Kind::NotTrue: {
      r.verdict = Verdict::NotTrueFlow;
      r.sink_expr = o.not_true_expr;
      bool symbolic_branch = false;
      for (const auto& c : o.not_true_terminal->pc) {
        symbolic_branch = symbolic_branch || c.label.find("/seg") == std::string::npos;
      }
      r.path_dependent = symbolic_branch;
      r.reason = "sink cannot differ between runs that differ only in " + path.source;
      break;
    }
    case Outcome::Kind::Incomplete:
      r.verdict = Verdict::Unaccounted;
      r.reason = o.reason;
      r.core_segment = o.core_segment;
      r.core = o.core;
      break;
    case Outcome::Kind::Exhausted:
      r.verdict = Verdict::InfeasibleBounded;
      r.reason = o.reason;
      r.core_segment = o.core_segment;
      r.core = o.core;
      break;
  }
  return finish();
}

SourceAnalysis analyze_source(const DesignIR& ir, const IFGraph& g, const std::string& source,
                              const std::optional<std::string>& sink, const SearchConfig& cfg,
                              const SmtOptions& smt, const AnalysisLimits& limits) {
  if (!ir.is_input(source)) {
    throw Error(ErrorKind::UnknownSignal, "source '" + source + "' is not a data input");
  }
  auto en = enumerate_paths(g, source, sink, limits.paths);
  SourceAnalysis out;
  out.truncated = en.truncated;
  out.results.resize(en.paths.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&](int id) {
    try {
      SmtOptions opts = smt;
      if (!opts.transcript_path.empty()) opts.transcript_path += ".w" + std::to_string(id);
      SmtSession session(opts);
      for (std::size_t i = next++; i < en.paths.size(); i = next++) {
        out.results[i] = analyze_path(ir, session, en.paths[i], cfg);
        out.results[i].index = static_cast<int>(i);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next = en.paths.size();
    }
  };
  const int jobs = std::max(1, std::min<int>(limits.jobs, static_cast<int>(en.paths.size())));
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker, j);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

SourceAnalysis check_property(const DesignIR& ir, const IFGraph& g, const std::string& source,
                              const std::string& sink, const Expr& precondition, SearchConfig cfg,
                              const SmtOptions& smt, const AnalysisLimits& limits) {
  if (precondition.valid() && !precondition.is_true()) cfg.precondition.push_back(precondition);
  return analyze_source(ir, g, source, sink, cfg, smt, limits);
}

}  // namespace seif

#include "seif/symexec.hpp"

#include <functional>

namespace seif {

const char* start_mode_name(StartMode m) { return m == StartMode::Reset ? "reset" : "free"; }

const char* step_failure_name(StepFailure f) {
  switch (f) {
    case StepFailure::None: return "none";
    case StepFailure::RestrictionUnsatisfiable: return "restriction_unsatisfiable";
    case StepFailure::PathConditionUnsat: return "path_condition_unsat";
  }
  return "?";
}

Symbol input_symbol(const std::string& name, int cycle, int variant) {
  return cycle_symbol(name, cycle, variant);
}

SymbolicState init_state(const DesignIR& ir, StartMode mode) {
  SymbolicState s;
  s.mode = mode;
  for (const auto* r : ir.registers()) {
    s.regs[r->name] = mode == StartMode::Reset ? constant(r->width, ir.reset_value(r->name))
                                               : symbol(initial_symbol(r->name), r->width);
  }
  return s;
}

Expr bind_signals(const DesignIR& ir, const Expr& e, const std::map<std::string, Expr>& regs,
                  const std::map<std::string, Expr>& wires, int cycle) {
  return substitute(e, [&](const Symbol& sym, Width w) -> std::optional<Expr> {
    if (!sym.is_signal_ref()) return std::nullopt;
    if (auto it = regs.find(sym.name); it != regs.end()) return it->second;
    if (auto it = wires.find(sym.name); it != wires.end()) return it->second;
    if (sym.name == ir.clock) return constant(w, 0);
    if (ir.is_input(sym.name)) return symbol(input_symbol(sym.name, cycle), w);
    return constant(w, 0);  // undriven wire
  });
}

std::map<std::string, Expr> wire_env(const DesignIR& ir, const std::map<std::string, Expr>& regs,
                                     int cycle) {
  std::map<std::string, Expr> wires;
  for (int i : ir.combinational_order()) {
    const auto& a = ir.continuous_assigns[i];
    wires[a.lhs] = bind_signals(ir, a.rhs, regs, wires, cycle);
  }
  for (const auto& s : ir.signals) {
    if (s.kind == SignalKind::Wire && !wires.count(s.name)) wires[s.name] = constant(s.width, 0);
  }
  return wires;
}

std::map<std::string, Expr> wire_env(const DesignIR& ir, const SymbolicState& s) {
  return wire_env(ir, s.regs, s.cycle);
}

Expr observe(const DesignIR& ir, const SymbolicState& s, const std::string& signal) {
  const SignalDecl& d = ir.signal(signal);
  return bind_signals(ir, symbol(signal_ref(signal), d.width), s.regs, wire_env(ir, s), s.cycle);
}

SymbolicExecutor::SymbolicExecutor(const DesignIR& ir, SmtSession& smt, ExecOptions opts)
    : ir_(ir), smt_(smt), opts_(opts) {}

std::vector<std::vector<int>> SymbolicExecutor::candidate_paths(const StepRestriction& r) const {
  std::vector<std::vector<int>> per;
  for (const auto& p : ir_.processes) per.push_back(p.cfg.lines_on_some_path(r.required, r.blocked));
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == per.size()) {
      out.push_back(cur);
      return;
    }
    for (int id : per[i]) {
      cur.push_back(id);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::set<LineId> SymbolicExecutor::lines_of(const std::vector<int>& joint) const {
  std::set<LineId> out;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    const auto& lines = ir_.processes[i].cfg.paths()[joint[i]].lines;
    out.insert(lines.begin(), lines.end());
  }
  return out;
}

SymbolicExecutor::PathEffect SymbolicExecutor::run_path(int process, int path,
                                                        const SymbolicState& s,
                                                        const std::map<std::string, Expr>& wires) const {
  const Process& p = ir_.processes[process];
  PathEffect fx;
  std::map<std::string, Expr> locals = s.regs;  // blocking writes update this view
  for (const auto& step : p.cfg.paths()[path].steps) {
    const Stmt& st = p.stmts[step.stmt];
    if (st.kind == StmtKind::If) {
      Expr c = bind_signals(ir_, st.cond, locals, wires, s.cycle);
      if (!step.taken) c = logical_not(c);
      if (c.is_true()) continue;
      fx.branches.push_back({"c" + std::to_string(s.cycle) + "/" + st.line.str() +
                                 (step.taken ? "/T" : "/F"),
                             c});
      continue;
    }
    Expr v = bind_signals(ir_, st.rhs, locals, wires, s.cycle);
    if (st.blocking) locals[st.lhs] = v;
    fx.writes[st.lhs] = v;
  }
  return fx;
}

StepResult SymbolicExecutor::step_cycle(const SymbolicState& s, const StepRestriction& r) {
  StepResult res;
  const auto wires = wire_env(ir_, s);
  std::vector<std::vector<int>> allowed;
  bool any = true;
  for (const auto& p : ir_.processes) {
    allowed.push_back(p.cfg.lines_on_some_path(r.required, r.blocked));
    any = any && !allowed.back().empty();
  }
  if (!any) {
    res.failure = StepFailure::RestrictionUnsatisfiable;
    return res;
  }

  ConstraintSet extra;
  for (const auto& k : r.extra) {
    extra.push_back({"c" + std::to_string(s.cycle) + "/" + k.label,
                     to_bool(bind_signals(ir_, k.expr, s.regs, wires, s.cycle))});
  }

  std::map<std::pair<int, int>, PathEffect> cache;
  auto effect = [&](int pi, int id) -> const PathEffect& {
    auto key = std::make_pair(pi, id);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, run_path(pi, id, s, wires)).first;
    return it->second;
  };

  ConstraintSet acc = s.pc;
  std::vector<int> joint;
  std::map<std::string, Expr> writes;

  // Adds the constraints; returns false if they are infeasible with acc.
  auto feasible = [&](const ConstraintSet& add) -> std::optional<bool> {
    bool symbolic = false;
    for (const auto& k : add) {
      if (k.expr.is_false()) return false;
      if (!k.expr.is_const()) symbolic = true;
    }
    if (!symbolic) return true;
    ConstraintSet q = acc;
    for (const auto& k : add) {
      if (!k.expr.is_const()) q.push_back(k);
    }
    auto cr = smt_.check(q, {}, CheckOptions{false, false});
    if (cr.status == SatStatus::Unknown) return std::nullopt;
    return cr.status == SatStatus::Sat;
  };
  auto append = [&](const ConstraintSet& add) {
    for (const auto& k : add) {
      if (!k.expr.is_const()) acc.push_back(k);
    }
  };

  std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
    if (i == allowed.size()) {
      auto ok = feasible(extra);
      if (!ok) {
        ++res.unknown;
        return true;
      }
      if (!*ok) return true;
      SymbolicState next;
      next.mode = s.mode;
      next.cycle = s.cycle + 1;
      next.regs = s.regs;
      for (const auto& [k, v] : writes) next.regs[k] = v;
      next.pc = acc;
      for (const auto& k : extra) {
        if (!k.expr.is_const()) next.pc.push_back(k);
      }
      next.history = s.history;
      next.history.push_back(CycleRecord{s.cycle, joint, lines_of(joint), false});
      res.successors.push_back(std::move(next));
      if (static_cast<int>(res.successors.size()) >= opts_.successor_cap) {
        res.truncated = true;
        return false;
      }
      return true;
    }
    for (int id : allowed[i]) {
      const PathEffect& fx = effect(static_cast<int>(i), id);
      auto ok = feasible(fx.branches);
      if (!ok) {
        ++res.unknown;
        continue;
      }
      if (!*ok) continue;
      const std::size_t mark = acc.size();
      append(fx.branches);
      joint.push_back(id);
      auto saved = writes;
      for (const auto& [k, v] : fx.writes) writes[k] = v;
      const bool more = dfs(i + 1);
      writes = std::move(saved);
      joint.pop_back();
      acc.resize(mark);
      if (!more) return false;
    }
    return true;
  };
  dfs(0);
  if (res.successors.empty()) res.failure = StepFailure::PathConditionUnsat;
  return res;
}

std::map<Symbol, Width> trace_symbols(const DesignIR& ir, const SymbolicState& s, int cycles) {
  std::map<Symbol, Width> out;
  for (int c = 0; c < cycles; ++c) {
    for (const auto* in : ir.data_inputs()) out[input_symbol(in->name, c)] = in->width;
  }
  if (s.mode == StartMode::Free) {
    for (const auto* r : ir.registers()) out[initial_symbol(r->name)] = r->width;
  }
  return out;
}

InputTrace trace_from_model(const DesignIR& ir, const Model& m, const SymbolicState& s,
                            bool observe_inputs, const std::set<std::string>& primed) {
  InputTrace t;
  t.from_reset = s.mode == StartMode::Reset;
  for (const auto* r : ir.registers()) {
    t.initial[r->name] = s.mode == StartMode::Reset
                             ? ir.reset_value(r->name)
                             : m.lookup(initial_symbol(r->name)).value_or(0);
  }
  auto inputs_at = [&](int c) {
    Valuation v;
    for (const auto* in : ir.data_inputs()) {
      const int variant = primed.count(in->name) ? 1 : 0;
      v[in->name] = m.lookup(input_symbol(in->name, c, variant)).value_or(0);
    }
    return v;
  };
  for (int c = 0; c < s.cycle; ++c) t.steps.push_back(inputs_at(c));
  if (observe_inputs) t.observe = inputs_at(s.cycle);
  return t;
}

InputTrace concretize_inputs(const DesignIR& ir, SmtSession& smt, const SymbolicState& s,
                             bool observe_inputs) {
  auto syms = trace_symbols(ir, s, s.cycle + (observe_inputs ? 1 : 0));
  auto r = smt.check(s.pc, syms, CheckOptions{true, false});
  if (r.status != SatStatus::Sat) {
    throw Error(ErrorKind::SolverUnavailable,
                std::string("cannot concretize inputs: path condition is ") + sat_status_name(r.status));
  }
  return trace_from_model(ir, r.model, s, observe_inputs);
}

}  // namespace seif

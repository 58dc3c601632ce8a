#include "seif/simulator.hpp"

#include <deque>
#include <functional>
#include <set>

namespace seif {

namespace {

using Field = std::pair<std::string, Width>;

Valuation decode(const std::vector<Field>& fields, std::uint64_t index) {
  Valuation v;
  for (const auto& [name, w] : fields) {
    v[name] = index & width_mask(w);
    index >>= w;
  }
  return v;
}

std::uint64_t encode(const std::vector<Field>& fields, const Valuation& v) {
  std::uint64_t key = 0;
  unsigned shift = 0;
  for (const auto& [name, w] : fields) {
    key |= v.at(name) << shift;
    shift += w;
  }
  return key;
}

unsigned total_bits(const std::vector<Field>& fields) {
  unsigned b = 0;
  for (const auto& f : fields) b += f.second;
  return b;
}

std::vector<Field> reg_fields(const DesignIR& ir) {
  std::vector<Field> out;
  for (const auto* r : ir.registers()) out.emplace_back(r->name, r->width);
  return out;
}

std::vector<Field> input_fields(const DesignIR& ir, const std::string& except = "") {
  std::vector<Field> out;
  for (const auto* in : ir.data_inputs()) {
    if (in->name != except) out.emplace_back(in->name, in->width);
  }
  return out;
}

class Evaluator {
 public:
  Evaluator(const DesignIR& ir, const ConcreteState& s, const Valuation& inputs)
      : ir_(ir), regs_(s.regs) {
    for (const auto* in : ir.data_inputs()) {
      auto it = inputs.find(in->name);
      if (it == inputs.end()) {
        throw Error(ErrorKind::WidthMismatch, "no value for input '" + in->name + "'");
      }
      if (it->second > width_mask(in->width)) {
        throw Error(ErrorKind::WidthMismatch, "value " + std::to_string(it->second) +
                                                  " does not fit input '" + in->name + "'");
      }
      inputs_[in->name] = it->second;
    }
    for (int i : ir.combinational_order()) {
      const auto& a = ir.continuous_assigns[i];
      wires_[a.lhs] = eval(a.rhs, regs_);
    }
    for (const auto& sig : ir.signals) {
      if (sig.kind == SignalKind::Wire && !wires_.count(sig.name)) wires_[sig.name] = 0;
    }
  }

  Value eval(const Expr& e, const Valuation& regs) const {
    return evaluate(e, [&](const Symbol& sym) -> std::optional<Value> {
      if (auto it = regs.find(sym.name); it != regs.end()) return it->second;
      if (auto it = inputs_.find(sym.name); it != inputs_.end()) return it->second;
      if (auto it = wires_.find(sym.name); it != wires_.end()) return it->second;
      return Value{0};  // clock
    });
  }

  Valuation all_values() const {
    Valuation v = regs_;
    v.insert(inputs_.begin(), inputs_.end());
    v.insert(wires_.begin(), wires_.end());
    return v;
  }

  void exec(const Process& p, const std::vector<int>& body, Valuation& locals, Valuation& writes,
            std::vector<PathStep>& steps, std::set<LineId>& lines) const {
    for (int si : body) {
      const Stmt& st = p.stmts[si];
      lines.insert(st.line);
      if (st.kind == StmtKind::If) {
        const bool taken = eval(st.cond, locals) != 0;
        steps.push_back(PathStep{si, taken});
        exec(p, taken ? st.then_body : st.else_body, locals, writes, steps, lines);
        continue;
      }
      steps.push_back(PathStep{si, true});
      const Value v = eval(st.rhs, locals);
      if (st.blocking) locals[st.lhs] = v;
      writes[st.lhs] = v;
    }
  }

  const Valuation& regs() const { return regs_; }

 private:
  const DesignIR& ir_;
  Valuation regs_;
  Valuation inputs_;
  Valuation wires_;
};

}  // namespace

ConcreteState reset_state(const DesignIR& ir) {
  ConcreteState s;
  for (const auto* r : ir.registers()) s.regs[r->name] = ir.reset_value(r->name);
  return s;
}

SimStep sim_step(const DesignIR& ir, const ConcreteState& s, const Valuation& inputs) {
  Evaluator ev(ir, s, inputs);
  SimStep out;
  out.values = ev.all_values();
  out.next.regs = s.regs;
  out.next.cycle = s.cycle + 1;
  for (const auto& p : ir.processes) {
    Valuation locals = s.regs;
    Valuation writes;
    std::vector<PathStep> steps;
    ev.exec(p, p.body, locals, writes, steps, out.lines);
    int id = -1;
    for (const auto& cp : p.cfg.paths()) {
      if (cp.steps.size() != steps.size()) continue;
      bool same = true;
      for (std::size_t i = 0; i < steps.size() && same; ++i) {
        same = cp.steps[i].stmt == steps[i].stmt && cp.steps[i].taken == steps[i].taken;
      }
      if (same) {
        id = cp.id;
        break;
      }
    }
    out.cfg_paths.push_back(id);
    for (const auto& [k, v] : writes) out.next.regs[k] = v;
  }
  return out;
}

Valuation sim_observe(const DesignIR& ir, const ConcreteState& s, const Valuation& inputs) {
  return Evaluator(ir, s, inputs).all_values();
}

Valuation run_trace(const DesignIR& ir, const InputTrace& t) {
  ConcreteState s;
  s.regs = t.initial;
  for (const auto* r : ir.registers()) {
    if (!s.regs.count(r->name)) s.regs[r->name] = ir.reset_value(r->name);
  }
  for (const auto& step : t.steps) s = sim_step(ir, s, step).next;
  Valuation obs = t.observe;
  for (const auto* in : ir.data_inputs()) obs.emplace(in->name, 0);
  return sim_observe(ir, s, obs);
}

ReplayResult differential_replay(const DesignIR& ir, const InputTrace& trace,
                                 const std::string& source, const std::string& sink,
                                 const InputTrace* alternate) {
  ir.signal(sink);
  const Width sw = ir.signal(source).width;
  InputTrace alt;
  if (alternate) {
    alt = *alternate;
  } else {
    alt = trace;
    for (auto& step : alt.steps) step[source] = ~step[source] & width_mask(sw);
    alt.observe[source] = ~alt.observe[source] & width_mask(sw);
  }
  ReplayResult r;
  r.original = run_trace(ir, trace).at(sink);
  r.alternate = run_trace(ir, alt).at(sink);
  r.flow_confirmed = trace.cycles() > 0 && r.original != r.alternate;
  return r;
}

BruteForceResult brute_force_flows(const DesignIR& ir, const std::string& source,
                                   const std::string& sink, int bound) {
  if (!ir.is_input(source)) {
    throw Error(ErrorKind::UnknownSignal, "'" + source + "' is not an input");
  }
  ir.signal(sink);
  const auto regs = reg_fields(ir);
  const auto others = input_fields(ir, source);
  const Width sw = ir.signal(source).width;
  const unsigned cost = 2 * total_bits(regs) + total_bits(others) + 2 * sw;
  if (cost > 24) {
    throw Error(ErrorKind::TooLarge, "brute force needs 2^" + std::to_string(cost) + " steps");
  }
  const std::uint64_t n_other = std::uint64_t{1} << total_bits(others);
  const std::uint64_t n_src = std::uint64_t{1} << sw;
  const unsigned state_bits = total_bits(regs);

  using Pair = std::pair<ConcreteState, ConcreteState>;
  std::vector<Pair> frontier{{reset_state(ir), reset_state(ir)}};
  std::set<std::uint64_t> seen{(encode(regs, frontier[0].first.regs) << state_bits) |
                               encode(regs, frontier[0].second.regs)};
  for (int depth = 0; depth <= bound && !frontier.empty(); ++depth) {
    std::vector<Pair> next;
    for (const auto& [a, b] : frontier) {
      for (std::uint64_t o = 0; o < n_other; ++o) {
        Valuation base = decode(others, o);
        for (std::uint64_t x = 0; x < n_src; ++x) {
          Valuation ia = base;
          ia[source] = x;
          const Valuation va = sim_observe(ir, a, ia);
          SimStep sa = depth < bound ? sim_step(ir, a, ia) : SimStep{};
          for (std::uint64_t y = 0; y < n_src; ++y) {
            Valuation ib = base;
            ib[source] = y;
            if (va.at(sink) != sim_observe(ir, b, ib).at(sink)) return {true, depth};
            if (depth == bound) continue;
            SimStep sb = sim_step(ir, b, ib);
            const std::uint64_t key =
                (encode(regs, sa.next.regs) << state_bits) | encode(regs, sb.next.regs);
            if (seen.insert(key).second) next.emplace_back(sa.next, sb.next);
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return {false, -1};
}

std::set<LineId> stall_blocked_lines(const DesignIR& ir, const std::string& resident) {
  std::set<LineId> out;
  for (const auto& p : ir.processes) {
    for (const auto& st : p.stmts) {
      if (st.kind == StmtKind::Assign && st.lhs == resident && !mentions_signal(st.rhs, resident)) {
        out.insert(st.line);
      }
    }
  }
  return out;
}

bool brute_force_segments(const DesignIR& ir, const std::vector<Segment>& segments, int bound) {
  if (segments.empty()) return false;
  const auto regs = reg_fields(ir);
  const auto inputs = input_fields(ir);
  const unsigned sbits = total_bits(regs);
  const unsigned ibits = total_bits(inputs);
  if (sbits + ibits > 24) throw Error(ErrorKind::TooLarge, "too many state and input bits");

  struct Need {
    std::set<LineId> lines;
    std::vector<Expr> conds;
    bool step = false;
    std::set<LineId> stall_blocked;  // for stalls while waiting for this segment
  };
  std::vector<Need> needs;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    Need n;
    for (const auto& h : segments[k].hops) {
      if (h.assign_class != AssignClass::Continuous) {
        n.lines.insert(h.line);
        n.step = true;
      }
      n.conds.insert(n.conds.end(), h.conditions.begin(), h.conditions.end());
    }
    if (k > 0) n.stall_blocked = stall_blocked_lines(ir, segments[k - 1].resident);
    needs.push_back(std::move(n));
  }
  auto holds = [&](const Need& n, const Valuation& values) {
    for (const auto& c : n.conds) {
      const Value v = evaluate(c, [&](const Symbol& s) -> std::optional<Value> {
        auto it = values.find(s.name);
        return it == values.end() ? Value{0} : it->second;
      });
      if (v == 0) return false;
    }
    return true;
  };

  std::set<std::pair<std::uint64_t, std::size_t>> seen;
  std::deque<std::tuple<ConcreteState, std::size_t, int>> queue;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << sbits); ++s) {
    ConcreteState st;
    st.regs = decode(regs, s);
    queue.emplace_back(st, 0, 0);
    seen.insert({s, 0});
  }
  const std::uint64_t n_inputs = std::uint64_t{1} << ibits;
  while (!queue.empty()) {
    auto [st, k, depth] = queue.front();
    queue.pop_front();
    const Need& need = needs[k];
    const bool last = k + 1 == needs.size();
    for (std::uint64_t i = 0; i < n_inputs; ++i) {
      const Valuation in = decode(inputs, i);
      if (!need.step) {
        if (holds(need, sim_observe(ir, st, in))) {
          if (last) return true;
        }
        continue;
      }
      if (depth >= bound) continue;
      const SimStep step = sim_step(ir, st, in);
      const std::uint64_t key = encode(regs, step.next.regs);
      bool lines_ok = true;
      for (const auto& l : need.lines) lines_ok = lines_ok && step.lines.count(l);
      if (lines_ok && holds(need, step.values)) {
        if (last) return true;
        if (seen.insert({key, k + 1}).second) queue.emplace_back(step.next, k + 1, depth + 1);
      }
      bool stall_ok = true;
      for (const auto& l : need.stall_blocked) stall_ok = stall_ok && !step.lines.count(l);
      if (stall_ok && seen.insert({key, k}).second) queue.emplace_back(step.next, k, depth + 1);
    }
  }
  return false;
}

}  // namespace seif

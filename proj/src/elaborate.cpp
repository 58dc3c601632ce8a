#include <algorithm>
#include <functional>
#include <sstream>

#include "seif/design.hpp"

namespace seif {

using verilog::AstExpr;
using verilog::AstStmt;
using verilog::Module;
using verilog::PortDir;

std::string LineId::str() const {
  std::string s = std::to_string(file) + ":" + std::to_string(line) + "." + std::to_string(ordinal);
  if (instance != 0) s += "@" + std::to_string(instance);
  return s;
}

const char* signal_kind_name(SignalKind k) {
  switch (k) {
    case SignalKind::Input: return "input";
    case SignalKind::Wire: return "wire";
    case SignalKind::Reg: return "reg";
  }
  return "?";
}

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::UnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorKind::UnresolvedModule: return "UnresolvedModule";
    case ErrorKind::RecursiveInstantiation: return "RecursiveInstantiation";
    case ErrorKind::MultipleDrivers: return "MultipleDrivers";
    case ErrorKind::UnknownSignal: return "UnknownSignal";
    case ErrorKind::CombinationalCycle: return "CombinationalCycle";
    case ErrorKind::Elaboration: return "ElaborationError";
    case ErrorKind::WidthMismatch: return "WidthMismatch";
    case ErrorKind::SolverUnavailable: return "SolverUnavailable";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::Config: return "ConfigError";
  }
  return "Error";
}

std::string format_diagnostic(const Error& err, const std::vector<std::string>& files) {
  std::ostringstream os;
  if (err.has_pos()) {
    const auto& p = err.pos();
    const std::string file =
        p.file >= 0 && p.file < static_cast<int>(files.size()) ? files[p.file] : "<input>";
    os << file << ":" << p.line << ":" << p.col << ": ";
  }
  os << err.what();
  return os.str();
}

// --- DesignIR queries -------------------------------------------------------

const SignalDecl* DesignIR::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &signals[it->second];
}

const SignalDecl& DesignIR::signal(const std::string& name) const {
  const SignalDecl* d = find(name);
  if (!d) throw Error(ErrorKind::UnknownSignal, "unknown signal '" + name + "'");
  return *d;
}

bool DesignIR::is_state(const std::string& name) const {
  const SignalDecl* d = find(name);
  return d && d->kind == SignalKind::Reg;
}

bool DesignIR::is_input(const std::string& name) const {
  const SignalDecl* d = find(name);
  return d && d->kind == SignalKind::Input;
}

std::vector<const SignalDecl*> DesignIR::data_inputs() const {
  std::vector<const SignalDecl*> out;
  for (const auto& s : signals) {
    if (s.kind == SignalKind::Input && s.name != clock) out.push_back(&s);
  }
  return out;
}

std::vector<const SignalDecl*> DesignIR::registers() const {
  std::vector<const SignalDecl*> out;
  for (const auto& s : signals) {
    if (s.kind == SignalKind::Reg) out.push_back(&s);
  }
  return out;
}

Value DesignIR::reset_value(const std::string& reg) const {
  auto it = reset_spec.find(reg);
  return it == reset_spec.end() ? 0 : it->second;
}

std::vector<int> DesignIR::combinational_order() const {
  std::map<std::string, int> driver;
  for (std::size_t i = 0; i < continuous_assigns.size(); ++i) {
    driver[continuous_assigns[i].lhs] = static_cast<int>(i);
  }
  std::vector<int> order;
  std::vector<int> state(continuous_assigns.size(), 0);  // 0 new, 1 active, 2 done
  std::function<void(int, std::vector<std::string>&)> visit = [&](int i,
                                                                  std::vector<std::string>& stack) {
    if (state[i] == 2) return;
    const auto& a = continuous_assigns[i];
    if (state[i] == 1) {
      std::string cycle;
      for (const auto& n : stack) cycle += n + " -> ";
      throw Error(ErrorKind::CombinationalCycle, a.pos, "combinational cycle: " + cycle + a.lhs);
    }
    state[i] = 1;
    stack.push_back(a.lhs);
    for (const auto& [sym, w] : collect_symbols(a.rhs)) {
      auto it = driver.find(sym.name);
      if (it != driver.end()) visit(it->second, stack);
    }
    stack.pop_back();
    state[i] = 2;
    order.push_back(i);
  };
  for (std::size_t i = 0; i < continuous_assigns.size(); ++i) {
    std::vector<std::string> stack;
    visit(static_cast<int>(i), stack);
  }
  return order;
}

std::optional<Expr> DesignIR::driver_of(const std::string& wire) const {
  std::map<std::string, Expr> env;
  for (int i : combinational_order()) {
    const auto& a = continuous_assigns[i];
    env[a.lhs] = substitute(a.rhs, [&](const Symbol& s, Width) -> std::optional<Expr> {
      auto it = env.find(s.name);
      if (it != env.end()) return it->second;
      return std::nullopt;
    });
  }
  auto it = env.find(wire);
  if (it == env.end()) return std::nullopt;
  return it->second;
}

// --- CFG --------------------------------------------------------------------

std::vector<int> ControlFlowGraph::lines_on_some_path(const std::set<LineId>& required,
                                                      const std::set<LineId>& blocked) const {
  std::vector<LineId> mine;
  for (const auto& l : required) {
    if (lines_.count(l)) mine.push_back(l);
  }
  std::vector<int> out;
  for (const auto& p : paths_) {
    bool ok = std::all_of(mine.begin(), mine.end(), [&](const LineId& l) { return p.lines.count(l); });
    ok = ok && std::none_of(blocked.begin(), blocked.end(),
                            [&](const LineId& l) { return p.lines.count(l) > 0; });
    if (ok) out.push_back(p.id);
  }
  return out;
}

ControlFlowGraph build_cfg(const Process& p) {
  ControlFlowGraph g;
  auto add = [&](CfgNode::Kind k, int stmt) {
    g.nodes.push_back(CfgNode{k, stmt, {}});
    return static_cast<int>(g.nodes.size()) - 1;
  };
  g.entry = add(CfgNode::Kind::Entry, -1);
  g.exit = add(CfgNode::Kind::Exit, -1);

  // Built back to front so every node knows its continuation.
  std::function<int(const std::vector<int>&, int)> seq = [&](const std::vector<int>& body,
                                                             int next) {
    for (auto it = body.rbegin(); it != body.rend(); ++it) {
      const Stmt& s = p.stmts[*it];
      g.lines_.insert(s.line);
      if (s.kind == StmtKind::Assign) {
        const int n = add(CfgNode::Kind::Assign, *it);
        g.nodes[n].succ = {next};
        next = n;
      } else {
        const int join = add(CfgNode::Kind::Join, -1);
        g.nodes[join].succ = {next};
        const int t = seq(s.then_body, join);
        const int e = seq(s.else_body, join);
        const int b = add(CfgNode::Kind::Branch, *it);
        g.nodes[b].succ = {t, e};
        next = b;
      }
    }
    return next;
  };
  g.nodes[g.entry].succ = {seq(p.body, g.exit)};

  CfgPath current;
  std::function<void(int)> walk = [&](int n) {
    const CfgNode& node = g.nodes[n];
    switch (node.kind) {
      case CfgNode::Kind::Exit: {
        CfgPath done = current;
        done.id = static_cast<int>(g.paths_.size());
        for (const auto& st : done.steps) done.lines.insert(p.stmts[st.stmt].line);
        g.paths_.push_back(std::move(done));
        return;
      }
      case CfgNode::Kind::Branch:
        for (int dir = 0; dir < 2; ++dir) {
          current.steps.push_back(PathStep{node.stmt, dir == 0});
          walk(node.succ[dir]);
          current.steps.pop_back();
        }
        return;
      case CfgNode::Kind::Assign:
        current.steps.push_back(PathStep{node.stmt, true});
        walk(node.succ[0]);
        current.steps.pop_back();
        return;
      default:
        walk(node.succ[0]);
        return;
    }
  };
  walk(g.entry);
  return g;
}

// --- elaboration --------------------------------------------------------------

namespace {

struct Binding {
  std::string flat;
  Width width = 1;
};

struct Scope {
  std::map<std::string, Binding> names;
  std::map<std::string, Value> params;
  std::string prefix;
};

[[noreturn]] void unsupported(SourcePos pos, const std::string& what) {
  throw Error(ErrorKind::UnsupportedConstruct, pos, "unsupported construct: " + what);
}

class ExprBuilder {
 public:
  explicit ExprBuilder(const Scope& scope) : scope_(scope) {}

  Width self_width(const AstExpr& e) const {
    switch (e.kind) {
      case AstExpr::Kind::Ident:
        if (scope_.params.count(e.name)) return 32;
        return lookup(e).width;
      case AstExpr::Kind::Number:
        return e.sized ? e.width : 32;
      case AstExpr::Kind::Unary:
        return e.op == "!" ? 1 : self_width(*e.operands[0]);
      case AstExpr::Kind::Binary:
        if (is_arith(e.op)) {
          return std::max(self_width(*e.operands[0]), self_width(*e.operands[1]));
        }
        return 1;
      case AstExpr::Kind::Ternary:
        return std::max(self_width(*e.operands[1]), self_width(*e.operands[2]));
      case AstExpr::Kind::Concat: {
        Width w = 0;
        for (const auto& o : e.operands) w += self_width(*o);
        if (w > kMaxWidth) unsupported(e.pos, "concatenation wider than 64 bits");
        return w;
      }
      case AstExpr::Kind::BitSelect:
        return 1;
      case AstExpr::Kind::PartSelect: {
        const auto [hi, lo] = part_bounds(e);
        return hi - lo + 1;
      }
    }
    return 1;
  }

  Expr build_self(const AstExpr& e) const { return build(e, self_width(e)); }

  Expr build(const AstExpr& e, Width ctx) const {
    if (ctx > kMaxWidth) unsupported(e.pos, "expression wider than 64 bits");
    switch (e.kind) {
      case AstExpr::Kind::Ident: {
        if (auto it = scope_.params.find(e.name); it != scope_.params.end()) {
          return constant(ctx, it->second);
        }
        const Binding& b = lookup(e);
        return fit_width(symbol(signal_ref(b.flat), b.width), ctx);
      }
      case AstExpr::Kind::Number:
        return constant(ctx, e.value);
      case AstExpr::Kind::Unary: {
        const AstExpr& x = *e.operands[0];
        if (e.op == "!") return fit_width(logical_not(build_self(x)), ctx);
        if (e.op == "~") return bv_not(build(x, ctx));
        if (e.op == "-") return sub(constant(ctx, 0), build(x, ctx));
        return build(x, ctx);
      }
      case AstExpr::Kind::Binary: {
        const AstExpr& l = *e.operands[0];
        const AstExpr& r = *e.operands[1];
        if (is_arith(e.op)) {
          Expr a = build(l, ctx);
          Expr b = build(r, ctx);
          if (e.op == "+") return add(a, b);
          if (e.op == "-") return sub(a, b);
          if (e.op == "*") return mul(a, b);
          if (e.op == "&") return bv_and(a, b);
          if (e.op == "|") return bv_or(a, b);
          return bv_xor(a, b);
        }
        if (e.op == "&&") return fit_width(logical_and(build_self(l), build_self(r)), ctx);
        if (e.op == "||") return fit_width(logical_or(build_self(l), build_self(r)), ctx);
        const Width w = std::max(self_width(l), self_width(r));
        return fit_width(compare(e.op, build(l, w), build(r, w)), ctx);
      }
      case AstExpr::Kind::Ternary:
        return ite(to_bool(build_self(*e.operands[0])), build(*e.operands[1], ctx),
                   build(*e.operands[2], ctx));
      case AstExpr::Kind::Concat: {
        self_width(e);  // width check
        Expr acc = build_self(*e.operands[0]);
        for (std::size_t i = 1; i < e.operands.size(); ++i) {
          acc = concat(acc, build_self(*e.operands[i]));
        }
        return fit_width(acc, ctx);
      }
      case AstExpr::Kind::BitSelect: {
        const Binding& b = lookup(e);
        const Value idx = const_value(*e.operands[0]);
        if (idx >= b.width) {
          throw Error(ErrorKind::Elaboration, e.pos, "bit-select out of range on '" + e.name + "'");
        }
        Expr base = symbol(signal_ref(b.flat), b.width);
        const auto i = static_cast<unsigned>(idx);
        return fit_width(slice(base, i, i), ctx);
      }
      case AstExpr::Kind::PartSelect: {
        const Binding& b = lookup(e);
        const auto [hi, lo] = part_bounds(e);
        if (hi >= b.width) {
          throw Error(ErrorKind::Elaboration, e.pos, "part-select out of range on '" + e.name + "'");
        }
        return fit_width(slice(symbol(signal_ref(b.flat), b.width), hi, lo), ctx);
      }
    }
    throw Error(ErrorKind::Elaboration, e.pos, "bad expression");
  }

  Value const_value(const AstExpr& e) const {
    Expr v = build_self(e);
    if (!v.is_const()) {
      throw Error(ErrorKind::Elaboration, e.pos, "expression must be constant");
    }
    return v.value();
  }

 private:
  static bool is_arith(const std::string& op) {
    return op == "+" || op == "-" || op == "*" || op == "&" || op == "|" || op == "^";
  }

  const Binding& lookup(const AstExpr& e) const {
    auto it = scope_.names.find(e.name);
    if (it == scope_.names.end()) {
      throw Error(ErrorKind::UnknownSignal, e.pos, "undeclared identifier '" + e.name + "'");
    }
    return it->second;
  }

  std::pair<unsigned, unsigned> part_bounds(const AstExpr& e) const {
    const Value hi = const_value(*e.operands[0]);
    const Value lo = const_value(*e.operands[1]);
    if (hi < lo) unsupported(e.pos, "descending part-select");
    if (hi >= kMaxWidth) throw Error(ErrorKind::Elaboration, e.pos, "part-select out of range");
    return {static_cast<unsigned>(hi), static_cast<unsigned>(lo)};
  }

  // Unsigned comparison. A zero-extended operand compared against a constant
  // is narrowed back to its own width, which is exact for unsigned values.
  static Expr compare(const std::string& op, Expr a, Expr b) {
    auto narrow = [](Expr& x, Expr& c, bool const_on_right) -> std::optional<bool> {
      if (!c.is_const() || x.op() != Op::Zext) return std::nullopt;
      const Width w = x.arg(0).width();
      if (c.value() <= width_mask(w)) {
        x = x.arg(0);
        c = constant(w, c.value());
        return std::nullopt;
      }
      // Constant exceeds the operand's range: x < c always.
      return const_on_right;
    };
    std::optional<bool> x_less;  // set when the relation is decided
    if (auto r = narrow(a, b, true)) x_less = true;
    else if (auto r2 = narrow(b, a, false)) x_less = false;
    if (x_less) {
      // a < b when x_less is true (x on the left), otherwise b < a.
      const bool a_lt_b = *x_less;
      if (op == "==") return bool_const(false);
      if (op == "!=") return bool_const(true);
      if (op == "<") return bool_const(a_lt_b);
      if (op == "<=") return bool_const(a_lt_b);
      if (op == ">") return bool_const(!a_lt_b);
      return bool_const(!a_lt_b);
    }
    if (op == "==") return eq(a, b);
    if (op == "!=") return neq(a, b);
    if (op == "<") return ult(a, b);
    if (op == ">") return ult(b, a);
    if (op == "<=") return bv_not(ult(b, a));
    return bv_not(ult(a, b));
  }

  const Scope& scope_;
};

struct LocalDecl {
  PortDir dir = PortDir::None;
  bool is_reg = false;
  Width width = 1;
  SourcePos pos;
  const AstExpr* init = nullptr;
  LineId init_line;
};

class Elaborator {
 public:
  explicit Elaborator(const verilog::Ast& ast) : ast_(ast) {}

  DesignIR run() {
    ir_.files = ast_.file_paths;
    const Module* top = ast_.find(ast_.top_module);
    if (!top) {
      throw Error(ErrorKind::UnresolvedModule, "top module '" + ast_.top_module + "' not found");
    }
    ir_.top = top->name;
    std::vector<std::string> stack;
    Scope parent;
    elaborate_module(*top, "", {}, {}, nullptr, parent, stack, SourcePos{});
    finish();
    return std::move(ir_);
  }

 private:
  struct PortConnection {
    const AstExpr* expr = nullptr;  // null: unconnected
  };

  void declare(const std::string& flat, SignalKind kind, bool output, Width w, SourcePos pos) {
    if (ir_.index_.count(flat)) {
      throw Error(ErrorKind::Elaboration, pos, "signal '" + flat + "' declared twice");
    }
    ir_.index_[flat] = static_cast<int>(ir_.signals.size());
    ir_.signals.push_back(SignalDecl{flat, kind, output, w});
  }

  LineId line_of(SourcePos pos, int ordinal) const {
    return LineId{pos.file, pos.line, ordinal, instance_id_};
  }

  void elaborate_module(const Module& m, const std::string& prefix,
                        const std::vector<std::pair<std::string, const AstExpr*>>& param_overrides,
                        const std::map<std::string, PortConnection>& ports, const Scope* parent_scope,
                        const Scope& /*unused*/, std::vector<std::string>& stack, SourcePos inst_pos) {
    if (std::find(stack.begin(), stack.end(), m.name) != stack.end()) {
      throw Error(ErrorKind::RecursiveInstantiation, inst_pos,
                  "recursive instantiation of module '" + m.name + "'");
    }
    stack.push_back(m.name);
    const int my_instance = instance_id_;
    Scope scope;
    scope.prefix = prefix;

    // Parameters, with overrides evaluated in the parent scope.
    std::size_t positional = 0;
    for (const auto& p : m.params) {
      const AstExpr* override_expr = nullptr;
      if (!p.local) {
        for (const auto& [name, expr] : param_overrides) {
          if (name == p.name) override_expr = expr;
        }
        if (!override_expr && positional < param_overrides.size() &&
            param_overrides[positional].first.empty()) {
          override_expr = param_overrides[positional].second;
        }
        ++positional;
      }
      if (override_expr) {
        scope.params[p.name] = ExprBuilder(*parent_scope).const_value(*override_expr);
      } else {
        scope.params[p.name] = ExprBuilder(scope).const_value(*p.value);
      }
    }
    for (const auto& [name, expr] : param_overrides) {
      if (name.empty()) continue;
      bool known = false;
      for (const auto& p : m.params) known = known || (p.name == name && !p.local);
      if (!known) {
        throw Error(ErrorKind::Elaboration, expr->pos,
                    "module '" + m.name + "' has no parameter '" + name + "'");
      }
    }

    // Merge declarations (a port may be declared as `output x;` and `reg x;`).
    std::map<std::string, LocalDecl> decls;
    std::vector<std::string> decl_order;
    for (const auto& n : m.nets) {
      auto [it, fresh] = decls.try_emplace(n.name);
      LocalDecl& d = it->second;
      if (fresh) {
        decl_order.push_back(n.name);
        d.pos = n.pos;
      }
      if (n.dir != PortDir::None) {
        if (d.dir != PortDir::None) {
          throw Error(ErrorKind::Elaboration, n.pos, "direction of '" + n.name + "' given twice");
        }
        d.dir = n.dir;
      }
      d.is_reg = d.is_reg || n.is_reg;
      if (n.msb) {
        ExprBuilder eb(scope);
        const Value msb = eb.const_value(*n.msb);
        const Value lsb = eb.const_value(*n.lsb);
        if (lsb != 0 || msb < lsb) unsupported(n.pos, "ranges other than [N:0]");
        if (msb + 1 > kMaxWidth) unsupported(n.pos, "signal wider than 64 bits");
        d.width = static_cast<Width>(msb + 1);
      }
      if (n.init) {
        d.init = n.init.get();
        d.init_line = line_of(n.pos, n.ordinal);
      }
    }
    for (const auto& p : m.port_order) {
      auto it = decls.find(p);
      if (it == decls.end() || it->second.dir == PortDir::None) {
        throw Error(ErrorKind::Elaboration, m.pos, "port '" + p + "' has no direction");
      }
    }
    for (const auto& name : decl_order) {
      const LocalDecl& d = decls[name];
      if (d.dir != PortDir::None &&
          std::find(m.port_order.begin(), m.port_order.end(), name) == m.port_order.end()) {
        throw Error(ErrorKind::Elaboration, d.pos, "'" + name + "' is not in the port list");
      }
      if (d.dir == PortDir::Input && d.is_reg) {
        throw Error(ErrorKind::Elaboration, d.pos, "input port '" + name + "' declared reg");
      }
    }

    const bool is_top = parent_scope == nullptr;
    std::vector<std::pair<std::string, const AstExpr*>> port_drivers;  // child input bindings
    for (const auto& name : decl_order) {
      const LocalDecl& d = decls[name];
      const std::string flat = prefix + name;
      if (is_top) {
        const SignalKind k = d.dir == PortDir::Input ? SignalKind::Input
                             : d.is_reg              ? SignalKind::Reg
                                                     : SignalKind::Wire;
        declare(flat, k, d.dir == PortDir::Output, d.width, d.pos);
        scope.names[name] = Binding{flat, d.width};
        continue;
      }
      if (d.dir == PortDir::None) {
        declare(flat, d.is_reg ? SignalKind::Reg : SignalKind::Wire, false, d.width, d.pos);
        scope.names[name] = Binding{flat, d.width};
        continue;
      }
      auto conn = ports.find(name);
      const AstExpr* bound = conn == ports.end() ? nullptr : conn->second.expr;
      // A port connected to a whole parent signal of the same width is aliased.
      if (bound && bound->kind == AstExpr::Kind::Ident && !parent_scope->params.count(bound->name)) {
        auto pb = parent_scope->names.find(bound->name);
        if (pb == parent_scope->names.end()) {
          throw Error(ErrorKind::UnknownSignal, bound->pos,
                      "undeclared identifier '" + bound->name + "'");
        }
        if (pb->second.width == d.width && !(d.dir == PortDir::Output && d.is_reg &&
                                             ir_.signal(pb->second.flat).kind == SignalKind::Input)) {
          scope.names[name] = pb->second;
          if (d.dir == PortDir::Output && d.is_reg) {
            // The parent net becomes the register.
            auto& sig = ir_.signals[ir_.index_[pb->second.flat]];
            if (sig.kind != SignalKind::Wire) {
              throw Error(ErrorKind::MultipleDrivers, bound->pos,
                          "output reg bound to non-wire '" + sig.name + "'");
            }
            sig.kind = SignalKind::Reg;
          }
          continue;
        }
      }
      if (d.dir == PortDir::Output && bound) {
        unsupported(bound->pos, "output port bound to an expression or a differently sized signal");
      }
      declare(flat, d.is_reg ? SignalKind::Reg : SignalKind::Wire, false, d.width, d.pos);
      scope.names[name] = Binding{flat, d.width};
      if (d.dir == PortDir::Input) {
        if (!bound) ir_.warnings.push_back("input port '" + flat + "' is unconnected; tied to 0");
        port_drivers.emplace_back(name, bound);
      }
    }

    // Child input ports driven by parent expressions.
    for (std::size_t k = 0; k < port_drivers.size(); ++k) {
      const auto& [name, bound] = port_drivers[k];
      const Binding& b = scope.names[name];
      Expr rhs = bound ? ExprBuilder(*parent_scope).build(*bound, b.width) : constant(b.width, 0);
      LineId line{inst_pos.file, inst_pos.line, 1000 + static_cast<int>(k), parent_instance_};
      add_continuous(b.flat, rhs, line, bound ? bound->pos : inst_pos);
    }

    ExprBuilder eb(scope);
    for (const auto& name : decl_order) {
      const LocalDecl& d = decls[name];
      if (!d.init) continue;
      const Binding& b = scope.names[name];
      if (d.is_reg) {
        Expr v = eb.build(*d.init, b.width);
        if (!v.is_const()) unsupported(d.init->pos, "non-constant register initializer");
        ir_.reset_spec[b.flat] = v.value();
      } else {
        add_continuous(b.flat, eb.build(*d.init, b.width), d.init_line, d.pos);
      }
    }
    for (const auto& a : m.assigns) {
      const Binding& b = lhs_binding(scope, a.lhs, a.pos);
      add_continuous(b.flat, eb.build(*a.rhs, b.width), line_of(a.pos, a.ordinal), a.pos);
    }
    for (const auto& ib : m.initials) {
      for (const auto& s : ib.assigns) {
        const Binding& b = lhs_binding(scope, s.lhs, s.pos);
        Expr v = eb.build(*s.rhs, b.width);
        if (!v.is_const()) unsupported(s.pos, "non-constant value in initial block");
        ir_.reset_spec[b.flat] = v.value();
      }
    }
    for (const auto& a : m.always) {
      auto cb = scope.names.find(a.clock);
      if (cb == scope.names.end()) {
        throw Error(ErrorKind::UnknownSignal, a.pos, "undeclared clock '" + a.clock + "'");
      }
      Process p;
      p.clock = cb->second.flat;
      p.pos = a.pos;
      p.body = lower_block(p, scope, a.body);
      const int pi = static_cast<int>(ir_.processes.size());
      for (std::size_t si = 0; si < p.stmts.size(); ++si) {
        register_line(p.stmts[si].line, StmtRef{pi, static_cast<int>(si)}, p.stmts[si].pos);
      }
      ir_.processes.push_back(std::move(p));
    }

    for (const auto& inst : m.instances) {
      const Module* child = ast_.find(inst.module);
      if (!child) {
        throw Error(ErrorKind::UnresolvedModule, inst.pos,
                    "unresolved module '" + inst.module + "'");
      }
      std::map<std::string, PortConnection> conns;
      if (inst.named_ports) {
        for (const auto& [pn, pe] : inst.ports) {
          if (std::find(child->port_order.begin(), child->port_order.end(), pn) ==
              child->port_order.end()) {
            throw Error(ErrorKind::Elaboration, inst.pos,
                        "module '" + child->name + "' has no port '" + pn + "'");
          }
          conns[pn] = PortConnection{pe.get()};
        }
      } else {
        if (inst.ports.size() > child->port_order.size()) {
          throw Error(ErrorKind::Elaboration, inst.pos, "too many port connections");
        }
        for (std::size_t k = 0; k < inst.ports.size(); ++k) {
          conns[child->port_order[k]] = PortConnection{inst.ports[k].second.get()};
        }
      }
      std::vector<std::pair<std::string, const AstExpr*>> overrides;
      for (const auto& [pn, pe] : inst.params) overrides.emplace_back(pn, pe.get());
      const int saved_parent = parent_instance_;
      parent_instance_ = my_instance;
      instance_id_ = ++instance_counter_;
      elaborate_module(*child, prefix + inst.name + ".", overrides, conns, &scope, scope, stack,
                       inst.pos);
      instance_id_ = my_instance;
      parent_instance_ = saved_parent;
    }
    stack.pop_back();
  }

  const Binding& lhs_binding(const Scope& scope, const std::string& name, SourcePos pos) {
    auto it = scope.names.find(name);
    if (it == scope.names.end()) {
      throw Error(ErrorKind::UnknownSignal, pos, "undeclared identifier '" + name + "'");
    }
    return it->second;
  }

  void register_line(const LineId& line, StmtRef ref, SourcePos pos) {
    if (!ir_.stmt_index.emplace(line, ref).second) {
      throw Error(ErrorKind::Elaboration, pos, "duplicate statement id " + line.str());
    }
  }

  void add_continuous(const std::string& lhs, Expr rhs, LineId line, SourcePos pos) {
    const int idx = static_cast<int>(ir_.continuous_assigns.size());
    ir_.continuous_assigns.push_back(ContinuousAssign{lhs, std::move(rhs), line, pos});
    register_line(line, StmtRef{-1, idx}, pos);
  }

  std::vector<int> lower_block(Process& p, const Scope& scope, const AstStmt& s) {
    std::vector<int> out;
    lower(p, scope, s, out);
    return out;
  }

  void lower(Process& p, const Scope& scope, const AstStmt& s, std::vector<int>& out) {
    ExprBuilder eb(scope);
    switch (s.kind) {
      case AstStmt::Kind::Empty:
        return;
      case AstStmt::Kind::Block:
        for (const auto& c : s.body) lower(p, scope, c, out);
        return;
      case AstStmt::Kind::Assign: {
        const Binding& b = lhs_binding(scope, s.lhs, s.pos);
        Stmt st;
        st.kind = StmtKind::Assign;
        st.line = line_of(s.pos, s.ordinal);
        st.pos = s.pos;
        st.blocking = s.blocking;
        st.lhs = b.flat;
        st.rhs = eb.build(*s.rhs, b.width);
        out.push_back(push(p, std::move(st)));
        return;
      }
      case AstStmt::Kind::If: {
        Stmt st;
        st.kind = StmtKind::If;
        st.line = line_of(s.pos, s.ordinal);
        st.pos = s.pos;
        st.cond = to_bool(eb.build_self(*s.cond));
        const int idx = push(p, std::move(st));
        std::vector<int> then_body, else_body;
        lower(p, scope, s.body[0], then_body);
        if (s.has_else) lower(p, scope, s.body[1], else_body);
        p.stmts[idx].then_body = std::move(then_body);
        p.stmts[idx].else_body = std::move(else_body);
        out.push_back(idx);
        return;
      }
      case AstStmt::Kind::Case: {
        // if (subject == l0 || ...) item0 else if (...) item1 ... else default
        const AstStmt::CaseItem* dflt = nullptr;
        std::vector<const AstStmt::CaseItem*> items;
        for (const auto& it : s.items) {
          if (it.labels.empty()) dflt = &it;
          else items.push_back(&it);
        }
        int prev = -1;
        for (const auto* item : items) {
          Expr cond = bool_const(false);
          for (const auto& label : item->labels) {
            verilog::AstExpr cmp;
            cmp.kind = AstExpr::Kind::Binary;
            cmp.op = "==";
            cmp.pos = label->pos;
            cmp.operands = {s.cond, label};
            cond = logical_or(cond, eb.build(cmp, 1));
          }
          Stmt st;
          st.kind = StmtKind::If;
          st.line = line_of(item->pos, item->ordinal);
          st.pos = item->pos;
          st.cond = cond;
          st.from_case = true;
          const int idx = push(p, std::move(st));
          std::vector<int> then_body;
          lower(p, scope, item->body[0], then_body);
          p.stmts[idx].then_body = std::move(then_body);
          if (prev < 0) out.push_back(idx);
          else p.stmts[prev].else_body.push_back(idx);
          prev = idx;
        }
        if (dflt) {
          std::vector<int> body;
          lower(p, scope, dflt->body[0], body);
          if (prev < 0) {
            for (int b : body) out.push_back(b);
          } else {
            p.stmts[prev].else_body = std::move(body);
          }
        }
        return;
      }
    }
  }

  int push(Process& p, Stmt st) {
    p.stmts.push_back(std::move(st));
    return static_cast<int>(p.stmts.size()) - 1;
  }

  void finish() {
    // Clock domain.
    for (const auto& p : ir_.processes) {
      if (ir_.clock.empty()) ir_.clock = p.clock;
      if (p.clock != ir_.clock) unsupported(p.pos, "multiple clock domains");
    }
    if (!ir_.clock.empty() && !ir_.is_input(ir_.clock)) {
      unsupported(ir_.processes.front().pos, "clock '" + ir_.clock + "' is not a top-level input");
    }

    // Driver classes.
    std::map<std::string, std::string> driver;  // signal -> description
    auto claim = [&](const std::string& sig, const std::string& who, SourcePos pos) {
      auto [it, fresh] = driver.emplace(sig, who);
      if (!fresh && it->second != who) {
        throw Error(ErrorKind::MultipleDrivers, pos,
                    "signal '" + sig + "' has multiple drivers (" + it->second + ", " + who + ")");
      }
    };
    for (const auto& a : ir_.continuous_assigns) {
      const SignalDecl& s = ir_.signal(a.lhs);
      if (s.kind == SignalKind::Input) {
        throw Error(ErrorKind::MultipleDrivers, a.pos, "input '" + a.lhs + "' is driven internally");
      }
      if (s.kind == SignalKind::Reg) {
        throw Error(ErrorKind::Elaboration, a.pos, "continuous assignment to reg '" + a.lhs + "'");
      }
      if (driver.count(a.lhs)) {
        throw Error(ErrorKind::MultipleDrivers, a.pos,
                    "signal '" + a.lhs + "' has multiple continuous drivers");
      }
      claim(a.lhs, "continuous assign", a.pos);
    }
    for (std::size_t pi = 0; pi < ir_.processes.size(); ++pi) {
      for (const auto& st : ir_.processes[pi].stmts) {
        if (st.kind != StmtKind::Assign) continue;
        const SignalDecl& s = ir_.signal(st.lhs);
        if (s.kind == SignalKind::Input) {
          throw Error(ErrorKind::MultipleDrivers, st.pos, "input '" + st.lhs + "' is driven internally");
        }
        if (s.kind != SignalKind::Reg) {
          throw Error(ErrorKind::Elaboration, st.pos,
                      "procedural assignment to non-reg '" + st.lhs + "'");
        }
        claim(st.lhs, "always block #" + std::to_string(pi), st.pos);
      }
    }
    for (const auto& s : ir_.signals) {
      if (s.kind == SignalKind::Reg) {
        if (!driver.count(s.name)) {
          ir_.warnings.push_back("register '" + s.name + "' is never assigned");
        }
        if (!ir_.reset_spec.count(s.name)) {
          ir_.warnings.push_back("register '" + s.name + "' has no reset value; assuming 0");
        }
      } else if (s.kind == SignalKind::Wire && !driver.count(s.name)) {
        ir_.warnings.push_back("wire '" + s.name + "' has no driver; assuming 0");
      }
    }
    for (const auto& [reg, v] : ir_.reset_spec) {
      if (!ir_.is_state(reg)) {
        throw Error(ErrorKind::Elaboration, "reset value given for non-register '" + reg + "'");
      }
    }
    for (auto& p : ir_.processes) p.cfg = build_cfg(p);
    ir_.combinational_order();
  }

  const verilog::Ast& ast_;
  DesignIR ir_;
  int instance_id_ = 0;
  int parent_instance_ = 0;
  int instance_counter_ = 0;
};

}  // namespace

DesignIR elaborate(const verilog::Ast& ast) { return Elaborator(ast).run(); }

DesignIR load_design(const verilog::SourceUnit& src) { return elaborate(verilog::parse(src)); }

Expr elaborate_condition(const DesignIR& ir, const verilog::AstExpr& e) {
  Scope scope;
  for (const auto& s : ir.signals) scope.names[s.name] = Binding{s.name, s.width};
  return to_bool(ExprBuilder(scope).build_self(e));
}

}  // namespace seif

#include "seif/expr.hpp"

#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace seif {

std::string Symbol::key() const {
  std::string k = name;
  if (cycle == kInitial) {
    k += "@init";
  } else if (cycle >= 0) {
    k += "@" + std::to_string(cycle);
  }
  if (variant != 0) k += "#" + std::to_string(variant);
  return k;
}

Symbol signal_ref(std::string name) { return Symbol{std::move(name), Symbol::kSignalRef, 0}; }
Symbol cycle_symbol(std::string name, int cycle, int variant) {
  return Symbol{std::move(name), cycle, variant};
}
Symbol initial_symbol(std::string name, int variant) {
  return Symbol{std::move(name), Symbol::kInitial, variant};
}

const char* op_name(Op op) {
  switch (op) {
    case Op::Const: return "const";
    case Op::Sym: return "sym";
    case Op::Add: return "add";
    case Op::Sub: return "sub";
    case Op::Mul: return "mul";
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Xor: return "xor";
    case Op::Not: return "not";
    case Op::Eq: return "eq";
    case Op::Neq: return "neq";
    case Op::Lt: return "lt";
    case Op::Ite: return "ite";
    case Op::Concat: return "concat";
    case Op::Slice: return "slice";
    case Op::Zext: return "zext";
  }
  return "?";
}

Op Expr::op() const { return node_->op; }
Width Expr::width() const { return node_->width; }
Value Expr::value() const { return node_->value; }
const Symbol& Expr::symbol() const { return node_->sym; }
unsigned Expr::hi() const { return node_->hi; }
unsigned Expr::lo() const { return node_->lo; }
const std::vector<Expr>& Expr::args() const { return node_->args; }

Expr make_node(ExprNode node) {
  Expr e;
  e.node_ = std::make_shared<const ExprNode>(std::move(node));
  return e;
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_width(Width w) {
  require(w >= 1 && w <= kMaxWidth, "bitvector width must be in [1, 64]");
}

Value apply(Op op, Width w, const std::vector<Value>& v, const std::vector<Width>& aw,
            unsigned hi, unsigned lo) {
  const Value m = width_mask(w);
  switch (op) {
    case Op::Add: return (v[0] + v[1]) & m;
    case Op::Sub: return (v[0] - v[1]) & m;
    case Op::Mul: return (v[0] * v[1]) & m;
    case Op::And: return v[0] & v[1];
    case Op::Or: return v[0] | v[1];
    case Op::Xor: return v[0] ^ v[1];
    case Op::Not: return ~v[0] & m;
    case Op::Eq: return v[0] == v[1] ? 1 : 0;
    case Op::Neq: return v[0] != v[1] ? 1 : 0;
    case Op::Lt: return v[0] < v[1] ? 1 : 0;
    case Op::Ite: return v[0] != 0 ? v[1] : v[2];
    case Op::Concat: return ((v[0] << aw[1]) | v[1]) & m;
    case Op::Slice: return (v[0] >> lo) & width_mask(hi - lo + 1);
    case Op::Zext: return v[0];
    case Op::Const:
    case Op::Sym: break;
  }
  throw std::logic_error("apply: not an operator");
}

Expr binary(Op op, Expr a, Expr b) {
  require(a.valid() && b.valid(), "null operand");
  require(a.width() == b.width(), "operand width mismatch");
  const bool predicate = op == Op::Eq || op == Op::Neq || op == Op::Lt;
  const Width w = predicate ? 1 : a.width();
  if (a.is_const() && b.is_const()) {
    return constant(w, apply(op, w, {a.value(), b.value()}, {a.width(), b.width()}, 0, 0));
  }
  ExprNode n;
  n.op = op;
  n.width = w;
  n.args = {std::move(a), std::move(b)};
  return make_node(std::move(n));
}

}  // namespace

Expr constant(Width w, Value v) {
  check_width(w);
  ExprNode n;
  n.op = Op::Const;
  n.width = w;
  n.value = v & width_mask(w);
  return make_node(std::move(n));
}

Expr bool_const(bool b) { return constant(1, b ? 1 : 0); }

Expr symbol(Symbol s, Width w) {
  check_width(w);
  ExprNode n;
  n.op = Op::Sym;
  n.width = w;
  n.sym = std::move(s);
  return make_node(std::move(n));
}

Expr add(Expr a, Expr b) { return binary(Op::Add, std::move(a), std::move(b)); }
Expr sub(Expr a, Expr b) { return binary(Op::Sub, std::move(a), std::move(b)); }
Expr mul(Expr a, Expr b) { return binary(Op::Mul, std::move(a), std::move(b)); }
Expr bv_and(Expr a, Expr b) { return binary(Op::And, std::move(a), std::move(b)); }
Expr bv_or(Expr a, Expr b) { return binary(Op::Or, std::move(a), std::move(b)); }
Expr bv_xor(Expr a, Expr b) { return binary(Op::Xor, std::move(a), std::move(b)); }
Expr eq(Expr a, Expr b) { return binary(Op::Eq, std::move(a), std::move(b)); }
Expr neq(Expr a, Expr b) { return binary(Op::Neq, std::move(a), std::move(b)); }
Expr ult(Expr a, Expr b) { return binary(Op::Lt, std::move(a), std::move(b)); }

Expr bv_not(Expr a) {
  require(a.valid(), "null operand");
  if (a.is_const()) return constant(a.width(), ~a.value());
  ExprNode n;
  n.op = Op::Not;
  n.width = a.width();
  n.args = {std::move(a)};
  return make_node(std::move(n));
}

Expr ite(Expr c, Expr t, Expr e) {
  require(c.valid() && t.valid() && e.valid(), "null operand");
  require(c.width() == 1, "ite condition must be 1 bit");
  require(t.width() == e.width(), "ite branch width mismatch");
  if (c.is_const()) return c.value() ? t : e;
  if (t.id() == e.id() || structurally_equal(t, e)) return t;
  ExprNode n;
  n.op = Op::Ite;
  n.width = t.width();
  n.args = {std::move(c), std::move(t), std::move(e)};
  return make_node(std::move(n));
}

Expr concat(Expr hi, Expr lo) {
  require(hi.valid() && lo.valid(), "null operand");
  const Width w = hi.width() + lo.width();
  check_width(w);
  if (hi.is_const() && lo.is_const()) {
    return constant(w, (hi.value() << lo.width()) | lo.value());
  }
  ExprNode n;
  n.op = Op::Concat;
  n.width = w;
  n.args = {std::move(hi), std::move(lo)};
  return make_node(std::move(n));
}

Expr slice(Expr a, unsigned hi, unsigned lo) {
  require(a.valid(), "null operand");
  require(lo <= hi && hi < a.width(), "slice out of range");
  if (lo == 0 && hi + 1 == a.width()) return a;
  if (a.is_const()) return constant(hi - lo + 1, a.value() >> lo);
  // Low slice of a zero-extension that stays inside the original value.
  if (a.op() == Op::Zext && lo == 0 && hi + 1 == a.arg(0).width()) return a.arg(0);
  ExprNode n;
  n.op = Op::Slice;
  n.width = hi - lo + 1;
  n.hi = hi;
  n.lo = lo;
  n.args = {std::move(a)};
  return make_node(std::move(n));
}

Expr zext(Expr a, Width w) {
  require(a.valid(), "null operand");
  check_width(w);
  require(w >= a.width(), "zext to a narrower width");
  if (w == a.width()) return a;
  if (a.is_const()) return constant(w, a.value());
  ExprNode n;
  n.op = Op::Zext;
  n.width = w;
  n.args = {std::move(a)};
  return make_node(std::move(n));
}

Expr make_op(Op op, std::vector<Expr> args, unsigned hi, unsigned lo, Width zext_width) {
  switch (op) {
    case Op::Add: return add(args.at(0), args.at(1));
    case Op::Sub: return sub(args.at(0), args.at(1));
    case Op::Mul: return mul(args.at(0), args.at(1));
    case Op::And: return bv_and(args.at(0), args.at(1));
    case Op::Or: return bv_or(args.at(0), args.at(1));
    case Op::Xor: return bv_xor(args.at(0), args.at(1));
    case Op::Not: return bv_not(args.at(0));
    case Op::Eq: return eq(args.at(0), args.at(1));
    case Op::Neq: return neq(args.at(0), args.at(1));
    case Op::Lt: return ult(args.at(0), args.at(1));
    case Op::Ite: return ite(args.at(0), args.at(1), args.at(2));
    case Op::Concat: return concat(args.at(0), args.at(1));
    case Op::Slice: return slice(args.at(0), hi, lo);
    case Op::Zext: return zext(args.at(0), zext_width);
    case Op::Const:
    case Op::Sym: break;
  }
  throw std::invalid_argument("make_op: not an operator");
}

Expr to_bool(Expr a) {
  if (a.width() == 1) return a;
  return neq(a, constant(a.width(), 0));
}

Expr logical_not(Expr a) { return bv_not(to_bool(std::move(a))); }

Expr logical_and(Expr a, Expr b) {
  a = to_bool(std::move(a));
  b = to_bool(std::move(b));
  if (a.is_false() || b.is_false()) return bool_const(false);
  if (a.is_true()) return b;
  if (b.is_true()) return a;
  return bv_and(std::move(a), std::move(b));
}

Expr logical_or(Expr a, Expr b) {
  a = to_bool(std::move(a));
  b = to_bool(std::move(b));
  if (a.is_true() || b.is_true()) return bool_const(true);
  if (a.is_false()) return b;
  if (b.is_false()) return a;
  return bv_or(std::move(a), std::move(b));
}

Expr fit_width(Expr a, Width w) {
  if (a.width() == w) return a;
  if (a.width() < w) return zext(std::move(a), w);
  return slice(std::move(a), w - 1, 0);
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.id() == b.id()) return true;
  if (!a.valid() || !b.valid()) return false;
  if (a.op() != b.op() || a.width() != b.width()) return false;
  switch (a.op()) {
    case Op::Const: return a.value() == b.value();
    case Op::Sym: return a.symbol() == b.symbol();
    case Op::Slice:
      if (a.hi() != b.hi() || a.lo() != b.lo()) return false;
      break;
    default: break;
  }
  if (a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (!structurally_equal(a.arg(i), b.arg(i))) return false;
  }
  return true;
}

namespace {

Value eval_rec(const Expr& e, const SymbolLookup& lookup,
               std::unordered_map<const ExprNode*, Value>& memo) {
  if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
  Value r = 0;
  if (e.op() == Op::Const) {
    r = e.value();
  } else if (e.op() == Op::Sym) {
    auto v = lookup(e.symbol());
    if (!v) throw std::out_of_range("unbound symbol " + e.symbol().key());
    r = *v & width_mask(e.width());
  } else if (e.op() == Op::Ite) {
    // Only the taken branch is evaluated.
    r = eval_rec(e.arg(0), lookup, memo) ? eval_rec(e.arg(1), lookup, memo)
                                         : eval_rec(e.arg(2), lookup, memo);
  } else {
    std::vector<Value> vals;
    std::vector<Width> widths;
    for (const auto& a : e.args()) {
      vals.push_back(eval_rec(a, lookup, memo));
      widths.push_back(a.width());
    }
    r = apply(e.op(), e.width(), vals, widths, e.hi(), e.lo());
  }
  memo.emplace(e.id(), r);
  return r;
}

}  // namespace

Value evaluate(const Expr& e, const SymbolLookup& lookup) {
  std::unordered_map<const ExprNode*, Value> memo;
  return eval_rec(e, lookup, memo);
}

namespace {

Expr subst_rec(const Expr& e, const SymbolRewrite& rewrite,
               std::unordered_map<const ExprNode*, Expr>& memo) {
  if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
  Expr r;
  if (e.op() == Op::Const) {
    r = e;
  } else if (e.op() == Op::Sym) {
    auto rep = rewrite(e.symbol(), e.width());
    if (rep) {
      if (rep->width() != e.width()) {
        throw std::invalid_argument("substitution changes width of " + e.symbol().key());
      }
      r = *rep;
    } else {
      r = e;
    }
  } else {
    std::vector<Expr> args;
    bool changed = false;
    for (const auto& a : e.args()) {
      args.push_back(subst_rec(a, rewrite, memo));
      changed = changed || args.back().id() != a.id();
    }
    r = changed ? make_op(e.op(), std::move(args), e.hi(), e.lo(), e.width()) : e;
  }
  memo.emplace(e.id(), r);
  return r;
}

void collect_rec(const Expr& e, std::map<Symbol, Width>& out, std::set<const ExprNode*>& seen) {
  if (!seen.insert(e.id()).second) return;
  if (e.op() == Op::Sym) {
    out.emplace(e.symbol(), e.width());
    return;
  }
  for (const auto& a : e.args()) collect_rec(a, out, seen);
}

const char* infix(Op op) {
  switch (op) {
    case Op::Add: return " + ";
    case Op::Sub: return " - ";
    case Op::Mul: return " * ";
    case Op::And: return " & ";
    case Op::Or: return " | ";
    case Op::Xor: return " ^ ";
    case Op::Eq: return " == ";
    case Op::Neq: return " != ";
    case Op::Lt: return " < ";
    default: return nullptr;
  }
}

void print_rec(const Expr& e, std::ostream& os) {
  switch (e.op()) {
    case Op::Const:
      os << e.width() << "'d" << e.value();
      return;
    case Op::Sym:
      os << e.symbol().key();
      return;
    case Op::Not:
      os << "~";
      print_rec(e.arg(0), os);
      return;
    case Op::Ite:
      os << "(";
      print_rec(e.arg(0), os);
      os << " ? ";
      print_rec(e.arg(1), os);
      os << " : ";
      print_rec(e.arg(2), os);
      os << ")";
      return;
    case Op::Concat:
      os << "{";
      print_rec(e.arg(0), os);
      os << ", ";
      print_rec(e.arg(1), os);
      os << "}";
      return;
    case Op::Slice:
      os << "(";
      print_rec(e.arg(0), os);
      os << ")[" << e.hi() << ":" << e.lo() << "]";
      return;
    case Op::Zext:
      os << "zext" << e.width() << "(";
      print_rec(e.arg(0), os);
      os << ")";
      return;
    default:
      os << "(";
      print_rec(e.arg(0), os);
      os << infix(e.op());
      print_rec(e.arg(1), os);
      os << ")";
      return;
  }
}

}  // namespace

Expr substitute(const Expr& e, const SymbolRewrite& rewrite) {
  std::unordered_map<const ExprNode*, Expr> memo;
  return subst_rec(e, rewrite, memo);
}

std::map<Symbol, Width> collect_symbols(const Expr& e) {
  std::map<Symbol, Width> out;
  collect_symbols(e, out);
  return out;
}

void collect_symbols(const Expr& e, std::map<Symbol, Width>& out) {
  std::set<const ExprNode*> seen;
  collect_rec(e, out, seen);
}

bool mentions_signal(const Expr& e, const std::string& name) {
  for (const auto& [sym, w] : collect_symbols(e)) {
    if (sym.name == name) return true;
  }
  return false;
}

std::string to_string(const Expr& e) {
  if (!e.valid()) return "<null>";
  std::ostringstream os;
  print_rec(e, os);
  return os.str();
}

}  // namespace seif

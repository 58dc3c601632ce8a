// Bitvector expressions shared by elaboration, symbolic execution, the
// reference simulator and the SMT encoder.
//
// Nodes are immutable and reference counted; an Expr is a cheap value handle.
// Builders perform constant folding and ite-collapse only. Anything beyond
// that is left to the solver so that textual dependences survive (x ^ x is
// deliberately kept as written).

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace seif {

using Width = unsigned;
using Value = std::uint64_t;

inline constexpr Width kMaxWidth = 64;

inline Value width_mask(Width w) {
  return w >= 64 ? ~Value{0} : ((Value{1} << w) - 1);
}

/// Identity of a free variable.
///
/// IR-level expressions refer to design signals (cycle == kSignalRef). The
/// symbolic executor replaces those with per-cycle symbols (cycle >= 0) or
/// initial-state symbols (cycle == kInitial). `variant` distinguishes the
/// primed copy used by the two-run dependence check.
struct Symbol {
  static constexpr int kSignalRef = -2;
  static constexpr int kInitial = -1;

  std::string name;
  int cycle = kSignalRef;
  int variant = 0;

  auto operator<=>(const Symbol&) const = default;
  bool is_signal_ref() const { return cycle == kSignalRef; }

  /// Printable unique key, also used inside |...| for SMT-LIB.
  std::string key() const;
};

Symbol signal_ref(std::string name);
Symbol cycle_symbol(std::string name, int cycle, int variant = 0);
Symbol initial_symbol(std::string name, int variant = 0);

enum class Op {
  Const,
  Sym,
  Add,
  Sub,
  Mul,
  And,
  Or,
  Xor,
  Not,
  Eq,
  Neq,
  Lt,
  Ite,
  Concat,
  Slice,
  Zext,
};

const char* op_name(Op op);

struct ExprNode;

class Expr {
 public:
  Expr() = default;

  Op op() const;
  Width width() const;
  /// Only meaningful for Const.
  Value value() const;
  /// Only meaningful for Sym.
  const Symbol& symbol() const;
  /// Slice bounds.
  unsigned hi() const;
  unsigned lo() const;
  const std::vector<Expr>& args() const;
  const Expr& arg(std::size_t i) const { return args().at(i); }

  bool valid() const { return node_ != nullptr; }
  bool is_const() const { return valid() && op() == Op::Const; }
  bool is_true() const { return is_const() && width() == 1 && value() == 1; }
  bool is_false() const { return is_const() && width() == 1 && value() == 0; }
  const ExprNode* id() const { return node_.get(); }

 private:
  friend Expr make_node(ExprNode node);
  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  Op op = Op::Const;
  Width width = 1;
  Value value = 0;
  Symbol sym;
  unsigned hi = 0;
  unsigned lo = 0;
  std::vector<Expr> args;
};

// Builders. Operand widths are checked; a mismatch throws std::invalid_argument.
Expr constant(Width w, Value v);
Expr bool_const(bool b);
Expr symbol(Symbol s, Width w);
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);
Expr bv_and(Expr a, Expr b);
Expr bv_or(Expr a, Expr b);
Expr bv_xor(Expr a, Expr b);
Expr bv_not(Expr a);
Expr eq(Expr a, Expr b);
Expr neq(Expr a, Expr b);
Expr ult(Expr a, Expr b);
Expr ite(Expr c, Expr t, Expr e);
Expr concat(Expr hi, Expr lo);
Expr slice(Expr a, unsigned hi, unsigned lo);
Expr zext(Expr a, Width w);

/// Generic rebuild used by substitution and decoding.
Expr make_op(Op op, std::vector<Expr> args, unsigned hi = 0, unsigned lo = 0,
             Width zext_width = 0);

// 1-bit helpers.
Expr to_bool(Expr a);  // a != 0, identity for 1-bit values
Expr logical_not(Expr a);
Expr logical_and(Expr a, Expr b);
Expr logical_or(Expr a, Expr b);
/// Zero-extends or truncates to exactly w bits.
Expr fit_width(Expr a, Width w);

bool structurally_equal(const Expr& a, const Expr& b);

using SymbolLookup = std::function<std::optional<Value>(const Symbol&)>;

/// Concrete evaluation. Throws std::out_of_range on an unbound symbol.
Value evaluate(const Expr& e, const SymbolLookup& lookup);

using SymbolRewrite = std::function<std::optional<Expr>(const Symbol&, Width)>;

/// Replaces symbols bottom-up, re-running folding on the way out. Shared
/// sub-DAGs are rewritten once.
Expr substitute(const Expr& e, const SymbolRewrite& rewrite);

/// Every distinct symbol with its width.
std::map<Symbol, Width> collect_symbols(const Expr& e);
void collect_symbols(const Expr& e, std::map<Symbol, Width>& out);

bool mentions_signal(const Expr& e, const std::string& name);

/// Infix rendering close to Verilog, used in reports and diagnostics.
std::string to_string(const Expr& e);

}  // namespace seif

// Front end for the synthesizable Verilog subset accepted by the analyzer.
//
// Accepted: modules with ANSI or non-ANSI ports, wire/reg declarations
// (optionally with a constant initializer on regs), parameters, continuous
// assigns, `always @(posedge clk)` blocks built from begin/end, if/else,
// case/endcase, blocking and nonblocking assignments to whole signals,
// `initial` blocks holding constant assignments, and module instances.
// Expressions: + - * & | ^ ~ ! && || == != < <= > >= ?: {,} [i] [h:l] and
// sized or unsized integer literals. Everything else is rejected with
// UnsupportedConstruct.

#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seif/diagnostics.hpp"
#include "seif/expr.hpp"

namespace seif::verilog {

struct SourceFile {
  std::string path;
  std::string text;
};

struct SourceUnit {
  std::vector<SourceFile> files;
  std::string top_module;
};

struct AstExpr;
using AstExprPtr = std::shared_ptr<const AstExpr>;

struct AstExpr {
  enum class Kind { Ident, Number, Unary, Binary, Ternary, Concat, BitSelect, PartSelect };

  Kind kind = Kind::Ident;
  SourcePos pos;
  std::string name;  // identifier, or select base
  std::string op;    // unary/binary operator spelling
  bool sized = false;
  Width width = 32;
  Value value = 0;
  std::vector<AstExprPtr> operands;
};

struct AstStmt {
  enum class Kind { Block, If, Case, Assign, Empty };

  struct CaseItem {
    std::vector<AstExprPtr> labels;  // empty for default
    SourcePos pos;
    int ordinal = 0;
    std::vector<AstStmt> body;  // exactly one statement
  };

  Kind kind = Kind::Empty;
  SourcePos pos;
  int ordinal = 0;
  AstExprPtr cond;              // If condition or Case subject
  std::vector<AstStmt> body;    // Block children; If: then [, else]
  bool has_else = false;
  std::vector<CaseItem> items;  // Case
  bool blocking = false;        // Assign
  std::string lhs;
  AstExprPtr rhs;
};

enum class PortDir { None, Input, Output };

struct NetDecl {
  PortDir dir = PortDir::None;
  bool is_reg = false;
  bool is_wire = false;
  AstExprPtr msb;  // null for scalars
  AstExprPtr lsb;
  std::string name;
  AstExprPtr init;  // wire: continuous driver; reg: reset value
  SourcePos pos;
  int ordinal = 0;
};

struct ParamDecl {
  std::string name;
  AstExprPtr value;
  bool local = false;
  SourcePos pos;
};

struct ContAssign {
  std::string lhs;
  AstExprPtr rhs;
  SourcePos pos;
  int ordinal = 0;
};

struct AlwaysBlock {
  std::string clock;
  AstStmt body;
  SourcePos pos;
};

struct InitialBlock {
  std::vector<AstStmt> assigns;
  SourcePos pos;
};

struct Instance {
  std::string module;
  std::string name;
  std::vector<std::pair<std::string, AstExprPtr>> params;  // name empty when positional
  bool named_ports = true;
  std::vector<std::pair<std::string, AstExprPtr>> ports;   // expr null when unconnected
  SourcePos pos;
  int ordinal = 0;
};

struct Module {
  std::string name;
  SourcePos pos;
  std::vector<std::string> port_order;
  std::vector<ParamDecl> params;
  std::vector<NetDecl> nets;
  std::vector<ContAssign> assigns;
  std::vector<AlwaysBlock> always;
  std::vector<InitialBlock> initials;
  std::vector<Instance> instances;
};

struct Ast {
  std::vector<std::string> file_paths;
  std::vector<Module> modules;
  std::string top_module;

  const Module* find(const std::string& name) const;
};

/// Throws Error(Syntax | UnsupportedConstruct) with a source position.
Ast parse(const SourceUnit& src);

/// Parses a standalone expression, e.g. a property precondition.
AstExprPtr parse_expression(std::string_view text, int file_index = 0);

/// Canonical pretty-printer; parse(print(ast)) is structurally identical.
std::string print(const Module& m);
std::string print(const AstExpr& e);

/// Structural comparison ignoring source positions and ordinals.
bool same_structure(const Ast& a, const Ast& b);

}  // namespace seif::verilog

#include <cctype>
#include <map>
#include <set>

#include "seif/verilog.hpp"

namespace seif::verilog {

const Module* Ast::find(const std::string& name) const {
  for (const auto& m : modules) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
  // Number payload
  bool sized = false;
  Width width = 32;
  Value value = 0;
};

[[noreturn]] void syntax(SourcePos pos, const std::string& msg) {
  throw Error(ErrorKind::Syntax, pos, msg);
}

[[noreturn]] void unsupported(SourcePos pos, const std::string& what) {
  throw Error(ErrorKind::UnsupportedConstruct, pos, "unsupported construct: " + what);
}

class Lexer {
 public:
  Lexer(std::string_view text, int file) : text_(text), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.pos = SourcePos{file_, line_, col_};
      if (i_ >= text_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      const char c = text_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
        t.kind = Tok::Ident;
        while (i_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i_])) ||
                                     text_[i_] == '_' || text_[i_] == '$')) {
          t.text += get();
        }
        if (t.text[0] == '$') unsupported(t.pos, "system task " + t.text);
      } else if (c == '`') {
        unsupported(t.pos, "compiler directive");
      } else if (c == '\\') {
        unsupported(t.pos, "escaped identifier");
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '\'') {
        lex_number(t);
      } else {
        t.kind = Tok::Punct;
        static const char* kMulti[] = {"===", "!==", "<<<", ">>>", "==", "!=", "<=", ">=",
                                       "&&",  "||",  "<<",  ">>",  "~^", "^~", "~&", "~|",
                                       "**",  "+:",  "-:",  "->"};
        bool matched = false;
        for (const char* m : kMulti) {
          std::string_view mv(m);
          if (text_.substr(i_, mv.size()) == mv) {
            for (std::size_t k = 0; k < mv.size(); ++k) t.text += get();
            matched = true;
            break;
          }
        }
        if (!matched) t.text = std::string(1, get());
        static const std::set<std::string> kAllowed = {
            "(", ")", "[", "]", "{", "}", ";", ",", ":", "?", "=", "<", ">", "+", "-", "*",
            "&", "|", "^", "~", "!", "@", "#", ".", "==", "!=", "<=", ">=", "&&", "||"};
        if (!kAllowed.count(t.text)) {
          if (t.text == "===" || t.text == "!==") unsupported(t.pos, "4-state equality " + t.text);
          if (t.text == "<<" || t.text == ">>" || t.text == "<<<" || t.text == ">>>")
            unsupported(t.pos, "shift operator " + t.text);
          if (t.text == "/" || t.text == "%" || t.text == "**")
            unsupported(t.pos, "operator " + t.text);
          if (t.text == "+:" || t.text == "-:") unsupported(t.pos, "indexed part-select");
          if (t.text.size() > 1 || std::ispunct(static_cast<unsigned char>(t.text[0])))
            unsupported(t.pos, "operator " + t.text);
          syntax(t.pos, "unexpected character '" + t.text + "'");
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char get() {
    const char c = text_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (i_ < text_.size()) {
      const char c = text_[i_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else if (text_.substr(i_, 2) == "//") {
        while (i_ < text_.size() && text_[i_] != '\n') get();
      } else if (text_.substr(i_, 2) == "/*") {
        const SourcePos start{file_, line_, col_};
        get();
        get();
        while (i_ < text_.size() && text_.substr(i_, 2) != "*/") get();
        if (i_ >= text_.size()) syntax(start, "unterminated block comment");
        get();
        get();
      } else {
        break;
      }
    }
  }

  std::string digits(bool allow_xz) {
    std::string d;
    while (i_ < text_.size()) {
      const char c = text_[i_];
      if (std::isxdigit(static_cast<unsigned char>(c)) || c == '_' ||
          (allow_xz && (c == 'x' || c == 'X' || c == 'z' || c == 'Z' || c == '?'))) {
        if (c != '_') d += c;
        get();
      } else {
        break;
      }
    }
    return d;
  }

  void lex_number(Token& t) {
    t.kind = Tok::Number;
    std::string size_digits;
    while (i_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_')) {
      if (text_[i_] != '_') size_digits += text_[i_];
      get();
    }
    if (i_ < text_.size() && text_[i_] == '\'') {
      get();
      if (i_ < text_.size() && (text_[i_] == 's' || text_[i_] == 'S'))
        unsupported(t.pos, "signed literal");
      if (i_ >= text_.size()) syntax(t.pos, "truncated literal");
      const char base = static_cast<char>(std::tolower(static_cast<unsigned char>(get())));
      int radix = 0;
      switch (base) {
        case 'b': radix = 2; break;
        case 'o': radix = 8; break;
        case 'd': radix = 10; break;
        case 'h': radix = 16; break;
        default: syntax(t.pos, "bad literal base");
      }
      while (i_ < text_.size() && (text_[i_] == ' ' || text_[i_] == '\t')) get();
      const std::string body = digits(true);
      if (body.empty()) syntax(t.pos, "missing literal digits");
      Value v = 0;
      for (char ch : body) {
        const char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        if (lc == 'x' || lc == 'z' || lc == '?') unsupported(t.pos, "x/z literal digits");
        const int d = std::isdigit(static_cast<unsigned char>(lc)) ? lc - '0' : lc - 'a' + 10;
        if (d >= radix) syntax(t.pos, "digit out of range for base");
        v = v * static_cast<Value>(radix) + static_cast<Value>(d);
      }
      t.value = v;
      if (!size_digits.empty()) {
        const unsigned long w = std::stoul(size_digits);
        if (w == 0) syntax(t.pos, "zero-width literal");
        if (w > kMaxWidth) unsupported(t.pos, "literal wider than 64 bits");
        t.sized = true;
        t.width = static_cast<Width>(w);
        t.value &= width_mask(t.width);
      }
      t.text = size_digits + "'" + base + body;
    } else {
      if (size_digits.empty()) syntax(t.pos, "bad number");
      if (i_ < text_.size() && text_[i_] == '.') unsupported(t.pos, "real literal");
      t.value = std::stoull(size_digits);
      t.text = size_digits;
    }
  }

  std::string_view text_;
  int file_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

const std::set<std::string> kUnsupportedKeywords = {
    "for",      "while",   "repeat", "forever", "generate", "endgenerate", "function",
    "task",     "integer", "signed", "genvar",  "inout",    "casez",       "casex",
    "real",     "time",    "fork",   "join",    "wait",     "disable",     "force",
    "release",  "tri",     "supply0", "supply1", "specify",  "primitive",  "defparam",
    "deassign", "event"};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::map<std::pair<int, int>, int>& ordinals)
      : toks_(std::move(toks)), ordinals_(ordinals) {}

  std::vector<Module> modules() {
    std::vector<Module> out;
    while (peek().kind != Tok::End) {
      if (!is_kw("module")) syntax(peek().pos, "expected 'module'");
      out.push_back(module());
    }
    return out;
  }

  AstExprPtr standalone_expression() {
    auto e = expr();
    if (peek().kind != Tok::End) syntax(peek().pos, "trailing input after expression");
    return e;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool is_punct(const char* p, std::size_t k = 0) const {
    return peek(k).kind == Tok::Punct && peek(k).text == p;
  }
  bool is_kw(const char* kw, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == kw;
  }
  bool accept(const char* p) {
    if (is_punct(p)) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_kw(const char* kw) {
    if (is_kw(kw)) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const char* p) {
    if (!accept(p)) {
      syntax(peek().pos, std::string("expected '") + p + "' but found '" + describe(peek()) + "'");
    }
  }
  void expect_kw(const char* kw) {
    if (!accept_kw(kw)) {
      syntax(peek().pos, std::string("expected '") + kw + "' but found '" + describe(peek()) + "'");
    }
  }
  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? "end of file" : t.text;
  }
  std::string ident() {
    const Token& t = peek();
    if (t.kind != Tok::Ident) syntax(t.pos, "expected identifier but found '" + describe(t) + "'");
    if (kUnsupportedKeywords.count(t.text)) unsupported(t.pos, t.text);
    ++pos_;
    return t.text;
  }
  int ordinal(SourcePos p) { return ordinals_[{p.file, p.line}]++; }

  // --- modules -----------------------------------------------------------

  Module module() {
    Module m;
    m.pos = peek().pos;
    expect_kw("module");
    m.name = ident();
    if (accept("#")) {
      expect("(");
      if (!is_punct(")")) {
        do {
          accept_kw("parameter");
          parameter_assignment(m, false);
        } while (accept(","));
      }
      expect(")");
    }
    if (accept("(")) {
      if (!is_punct(")")) port_list(m);
      expect(")");
    }
    expect(";");
    while (!is_kw("endmodule")) {
      if (peek().kind == Tok::End) syntax(peek().pos, "missing 'endmodule'");
      module_item(m);
    }
    expect_kw("endmodule");
    return m;
  }

  void port_list(Module& m) {
    if (is_kw("input") || is_kw("output") || is_kw("inout")) {
      // ANSI style; direction and type carry over to following names.
      PortDir dir = PortDir::None;
      bool is_reg = false;
      bool is_wire = false;
      AstExprPtr msb, lsb;
      do {
        if (is_kw("input") || is_kw("output") || is_kw("inout")) {
          const Token t = next();
          if (t.text == "inout") unsupported(t.pos, "inout");
          dir = t.text == "input" ? PortDir::Input : PortDir::Output;
          is_reg = false;
          is_wire = false;
          msb = lsb = nullptr;
          if (accept_kw("reg")) is_reg = true;
          else if (accept_kw("wire")) is_wire = true;
          if (is_kw("signed")) unsupported(peek().pos, "signed");
          range(msb, lsb);
        }
        NetDecl d;
        d.pos = peek().pos;
        d.dir = dir;
        d.is_reg = is_reg;
        d.is_wire = is_wire;
        d.msb = msb;
        d.lsb = lsb;
        d.name = ident();
        m.port_order.push_back(d.name);
        m.nets.push_back(std::move(d));
      } while (accept(","));
    } else {
      do {
        m.port_order.push_back(ident());
      } while (accept(","));
    }
  }

  void range(AstExprPtr& msb, AstExprPtr& lsb) {
    if (accept("[")) {
      msb = expr();
      expect(":");
      lsb = expr();
      expect("]");
    }
  }

  void parameter_assignment(Module& m, bool local) {
    ParamDecl p;
    p.pos = peek().pos;
    p.local = local;
    if (is_punct("[")) unsupported(peek().pos, "ranged parameter");
    p.name = ident();
    expect("=");
    p.value = expr();
    m.params.push_back(std::move(p));
  }

  void module_item(Module& m) {
    const Token& t = peek();
    if (t.kind != Tok::Ident) syntax(t.pos, "unexpected '" + describe(t) + "' in module body");
    if (kUnsupportedKeywords.count(t.text)) unsupported(t.pos, t.text);
    if (t.text == "input" || t.text == "output") {
      net_declaration(m);
    } else if (t.text == "wire" || t.text == "reg") {
      net_declaration(m);
    } else if (t.text == "parameter" || t.text == "localparam") {
      const bool local = next().text == "localparam";
      do {
        parameter_assignment(m, local);
      } while (accept(","));
      expect(";");
    } else if (t.text == "assign") {
      next();
      do {
        ContAssign a;
        a.pos = peek().pos;
        a.ordinal = ordinal(a.pos);
        a.lhs = lvalue();
        expect("=");
        a.rhs = expr();
        m.assigns.push_back(std::move(a));
      } while (accept(","));
      expect(";");
    } else if (t.text == "always") {
      always_block(m);
    } else if (t.text == "initial") {
      initial_block(m);
    } else {
      instance(m);
    }
  }

  void net_declaration(Module& m) {
    PortDir dir = PortDir::None;
    bool is_reg = false;
    bool is_wire = false;
    if (accept_kw("input")) dir = PortDir::Input;
    else if (accept_kw("output")) dir = PortDir::Output;
    if (accept_kw("reg")) is_reg = true;
    else if (accept_kw("wire")) is_wire = true;
    if (is_kw("signed")) unsupported(peek().pos, "signed");
    AstExprPtr msb, lsb;
    range(msb, lsb);
    do {
      NetDecl d;
      d.pos = peek().pos;
      d.ordinal = ordinal(d.pos);
      d.dir = dir;
      d.is_reg = is_reg;
      d.is_wire = is_wire;
      d.msb = msb;
      d.lsb = lsb;
      d.name = ident();
      if (is_punct("[")) unsupported(peek().pos, "memory/array declaration");
      if (accept("=")) {
        if (dir == PortDir::Input) syntax(d.pos, "input port cannot have an initializer");
        d.init = expr();
      }
      m.nets.push_back(std::move(d));
    } while (accept(","));
    expect(";");
  }

  void always_block(Module& m) {
    AlwaysBlock a;
    a.pos = next().pos;
    if (!accept("@")) unsupported(a.pos, "always block without event control");
    if (accept("*")) unsupported(a.pos, "combinational always block");
    expect("(");
    if (accept("*")) unsupported(a.pos, "combinational always block");
    if (accept_kw("negedge")) unsupported(a.pos, "negedge");
    if (!accept_kw("posedge")) unsupported(a.pos, "level-sensitive always block");
    a.clock = ident();
    if (is_kw("or") || is_punct(",")) unsupported(peek().pos, "multiple event controls");
    expect(")");
    a.body = statement();
    m.always.push_back(std::move(a));
  }

  void initial_block(Module& m) {
    InitialBlock ib;
    ib.pos = next().pos;
    auto collect = [&](AstStmt s) {
      if (s.kind != AstStmt::Kind::Assign || !s.blocking) {
        unsupported(s.pos, "initial block other than constant register resets");
      }
      ib.assigns.push_back(std::move(s));
    };
    if (accept_kw("begin")) {
      while (!accept_kw("end")) {
        if (peek().kind == Tok::End) syntax(peek().pos, "missing 'end'");
        collect(statement());
      }
    } else {
      collect(statement());
    }
    m.initials.push_back(std::move(ib));
  }

  void instance(Module& m) {
    Instance inst;
    inst.pos = peek().pos;
    inst.ordinal = ordinal(inst.pos);
    inst.module = ident();
    if (accept("#")) {
      expect("(");
      if (!is_punct(")")) {
        do {
          if (accept(".")) {
            std::string n = ident();
            expect("(");
            auto v = expr();
            expect(")");
            inst.params.emplace_back(std::move(n), std::move(v));
          } else {
            inst.params.emplace_back("", expr());
          }
        } while (accept(","));
      }
      expect(")");
    }
    inst.name = ident();
    if (is_punct("[")) unsupported(peek().pos, "instance array");
    expect("(");
    if (!is_punct(")")) {
      inst.named_ports = is_punct(".");
      do {
        if (inst.named_ports) {
          expect(".");
          std::string n = ident();
          expect("(");
          AstExprPtr v = is_punct(")") ? nullptr : expr();
          expect(")");
          inst.ports.emplace_back(std::move(n), std::move(v));
        } else {
          inst.ports.emplace_back("", expr());
        }
      } while (accept(","));
    }
    expect(")");
    expect(";");
    m.instances.push_back(std::move(inst));
  }

  // --- statements --------------------------------------------------------

  std::string lvalue() {
    if (is_punct("{")) unsupported(peek().pos, "concatenation on the left-hand side");
    std::string n = ident();
    if (is_punct("[")) unsupported(peek().pos, "part-select on the left-hand side");
    return n;
  }

  AstStmt statement() {
    AstStmt s;
    s.pos = peek().pos;
    if (accept(";")) {
      s.kind = AstStmt::Kind::Empty;
      return s;
    }
    if (is_punct("#")) unsupported(s.pos, "delay control");
    if (is_punct("@")) unsupported(s.pos, "event control inside a block");
    if (accept_kw("begin")) {
      s.kind = AstStmt::Kind::Block;
      if (accept(":")) ident();
      while (!accept_kw("end")) {
        if (peek().kind == Tok::End) syntax(peek().pos, "missing 'end'");
        s.body.push_back(statement());
      }
      return s;
    }
    if (accept_kw("if")) {
      s.kind = AstStmt::Kind::If;
      s.ordinal = ordinal(s.pos);
      expect("(");
      s.cond = expr();
      expect(")");
      s.body.push_back(statement());
      if (accept_kw("else")) {
        s.has_else = true;
        s.body.push_back(statement());
      }
      return s;
    }
    if (accept_kw("case")) {
      s.kind = AstStmt::Kind::Case;
      s.ordinal = ordinal(s.pos);
      expect("(");
      s.cond = expr();
      expect(")");
      bool seen_default = false;
      while (!accept_kw("endcase")) {
        if (peek().kind == Tok::End) syntax(peek().pos, "missing 'endcase'");
        AstStmt::CaseItem item;
        item.pos = peek().pos;
        item.ordinal = ordinal(item.pos);
        if (accept_kw("default")) {
          if (seen_default) syntax(item.pos, "duplicate default item");
          seen_default = true;
          accept(":");
        } else {
          do {
            item.labels.push_back(expr());
          } while (accept(","));
          expect(":");
        }
        item.body.push_back(statement());
        s.items.push_back(std::move(item));
      }
      return s;
    }
    if (peek().kind == Tok::Ident) {
      const std::string& kw = peek().text;
      if (kUnsupportedKeywords.count(kw)) unsupported(s.pos, kw);
      if (kw == "assign") unsupported(s.pos, "procedural continuous assignment");
    }
    s.kind = AstStmt::Kind::Assign;
    s.ordinal = ordinal(s.pos);
    s.lhs = lvalue();
    if (accept("=")) {
      s.blocking = true;
    } else if (accept("<=")) {
      s.blocking = false;
    } else {
      syntax(peek().pos, "expected '=' or '<=' in assignment");
    }
    if (is_punct("#")) unsupported(peek().pos, "intra-assignment delay");
    s.rhs = expr();
    expect(";");
    return s;
  }

  // --- expressions -------------------------------------------------------

  static AstExprPtr make_binary(SourcePos pos, std::string op, AstExprPtr l, AstExprPtr r) {
    auto e = std::make_shared<AstExpr>();
    e->kind = AstExpr::Kind::Binary;
    e->pos = pos;
    e->op = std::move(op);
    e->operands = {std::move(l), std::move(r)};
    return e;
  }

  AstExprPtr expr() {
    auto c = binary_level(0);
    if (is_punct("?")) {
      const SourcePos pos = next().pos;
      auto t = expr();
      expect(":");
      auto f = expr();
      auto e = std::make_shared<AstExpr>();
      e->kind = AstExpr::Kind::Ternary;
      e->pos = pos;
      e->operands = {std::move(c), std::move(t), std::move(f)};
      return e;
    }
    return c;
  }

  AstExprPtr binary_level(int level) {
    static const std::vector<std::vector<std::string>> kLevels = {
        {"||"}, {"&&"}, {"|"}, {"^"}, {"&"}, {"==", "!="}, {"<", "<=", ">", ">="}, {"+", "-"},
        {"*"}};
    if (level == static_cast<int>(kLevels.size())) return unary();
    auto lhs = binary_level(level + 1);
    for (;;) {
      const Token& t = peek();
      bool hit = false;
      if (t.kind == Tok::Punct) {
        for (const auto& op : kLevels[level]) {
          if (t.text == op) hit = true;
        }
      }
      if (!hit) return lhs;
      const Token op = next();
      auto rhs = binary_level(level + 1);
      lhs = make_binary(op.pos, op.text, std::move(lhs), std::move(rhs));
    }
  }

  AstExprPtr unary() {
    const Token& t = peek();
    if (t.kind == Tok::Punct && (t.text == "!" || t.text == "~" || t.text == "-" || t.text == "+")) {
      const Token op = next();
      auto e = std::make_shared<AstExpr>();
      e->kind = AstExpr::Kind::Unary;
      e->pos = op.pos;
      e->op = op.text;
      e->operands = {unary()};
      return e;
    }
    if (t.kind == Tok::Punct && (t.text == "&" || t.text == "|" || t.text == "^" ||
                                 t.text == "~&" || t.text == "~|" || t.text == "~^")) {
      unsupported(t.pos, "reduction operator " + t.text);
    }
    return primary();
  }

  AstExprPtr primary() {
    const Token t = peek();
    auto e = std::make_shared<AstExpr>();
    e->pos = t.pos;
    if (t.kind == Tok::Number) {
      next();
      e->kind = AstExpr::Kind::Number;
      e->sized = t.sized;
      e->width = t.width;
      e->value = t.value;
      return e;
    }
    if (accept("(")) {
      auto inner = expr();
      expect(")");
      return inner;
    }
    if (accept("{")) {
      auto first = expr();
      if (is_punct("{")) unsupported(t.pos, "replication");
      e->kind = AstExpr::Kind::Concat;
      e->operands.push_back(std::move(first));
      while (accept(",")) e->operands.push_back(expr());
      expect("}");
      return e;
    }
    if (t.kind == Tok::Ident) {
      e->name = ident();
      if (is_punct("(")) unsupported(t.pos, "function call");
      if (accept("[")) {
        auto a = expr();
        if (accept(":")) {
          auto b = expr();
          expect("]");
          e->kind = AstExpr::Kind::PartSelect;
          e->operands = {std::move(a), std::move(b)};
        } else {
          expect("]");
          e->kind = AstExpr::Kind::BitSelect;
          e->operands = {std::move(a)};
        }
        if (is_punct("[")) unsupported(peek().pos, "multi-dimensional select");
        return e;
      }
      e->kind = AstExpr::Kind::Ident;
      return e;
    }
    syntax(t.pos, "expected expression but found '" + describe(t) + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::pair<int, int>, int>& ordinals_;
};

}  // namespace

Ast parse(const SourceUnit& src) {
  Ast ast;
  ast.top_module = src.top_module;
  std::map<std::pair<int, int>, int> ordinals;
  for (std::size_t i = 0; i < src.files.size(); ++i) {
    ast.file_paths.push_back(src.files[i].path);
    Lexer lx(src.files[i].text, static_cast<int>(i));
    Parser p(lx.run(), ordinals);
    for (auto& m : p.modules()) {
      if (ast.find(m.name)) {
        throw Error(ErrorKind::Syntax, m.pos, "module '" + m.name + "' defined twice");
      }
      ast.modules.push_back(std::move(m));
    }
  }
  if (ast.top_module.empty()) {
    std::set<std::string> used;
    for (const auto& m : ast.modules) {
      for (const auto& inst : m.instances) used.insert(inst.module);
    }
    std::vector<std::string> roots;
    for (const auto& m : ast.modules) {
      if (!used.count(m.name)) roots.push_back(m.name);
    }
    if (roots.size() != 1) {
      throw Error(ErrorKind::UnresolvedModule,
                  roots.empty() ? "no top-level module found"
                                : "several top-level candidates; choose one with --top");
    }
    ast.top_module = roots.front();
  }
  return ast;
}

AstExprPtr parse_expression(std::string_view text, int file_index) {
  std::map<std::pair<int, int>, int> ordinals;
  Lexer lx(text, file_index);
  Parser p(lx.run(), ordinals);
  return p.standalone_expression();
}

}  // namespace seif::verilog

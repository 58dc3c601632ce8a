#include <sstream>

#include "seif/verilog.hpp"

namespace seif::verilog {

namespace {

void print_expr(const AstExpr& e, std::ostream& os) {
  switch (e.kind) {
    case AstExpr::Kind::Ident:
      os << e.name;
      break;
    case AstExpr::Kind::Number:
      if (e.sized) os << e.width << "'d";
      os << e.value;
      break;
    case AstExpr::Kind::Unary:
      os << "(" << e.op;
      print_expr(*e.operands[0], os);
      os << ")";
      break;
    case AstExpr::Kind::Binary:
      os << "(";
      print_expr(*e.operands[0], os);
      os << " " << e.op << " ";
      print_expr(*e.operands[1], os);
      os << ")";
      break;
    case AstExpr::Kind::Ternary:
      os << "(";
      print_expr(*e.operands[0], os);
      os << " ? ";
      print_expr(*e.operands[1], os);
      os << " : ";
      print_expr(*e.operands[2], os);
      os << ")";
      break;
    case AstExpr::Kind::Concat:
      os << "{";
      for (std::size_t i = 0; i < e.operands.size(); ++i) {
        if (i) os << ", ";
        print_expr(*e.operands[i], os);
      }
      os << "}";
      break;
    case AstExpr::Kind::BitSelect:
      os << e.name << "[";
      print_expr(*e.operands[0], os);
      os << "]";
      break;
    case AstExpr::Kind::PartSelect:
      os << e.name << "[";
      print_expr(*e.operands[0], os);
      os << ":";
      print_expr(*e.operands[1], os);
      os << "]";
      break;
  }
}

void indent(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

void print_stmt(const AstStmt& s, std::ostream& os, int depth) {
  switch (s.kind) {
    case AstStmt::Kind::Empty:
      indent(os, depth);
      os << ";\n";
      break;
    case AstStmt::Kind::Block:
      indent(os, depth);
      os << "begin\n";
      for (const auto& c : s.body) print_stmt(c, os, depth + 1);
      indent(os, depth);
      os << "end\n";
      break;
    case AstStmt::Kind::If:
      indent(os, depth);
      os << "if (";
      print_expr(*s.cond, os);
      os << ")\n";
      print_stmt(s.body[0], os, depth + 1);
      if (s.has_else) {
        indent(os, depth);
        os << "else\n";
        print_stmt(s.body[1], os, depth + 1);
      }
      break;
    case AstStmt::Kind::Case:
      indent(os, depth);
      os << "case (";
      print_expr(*s.cond, os);
      os << ")\n";
      for (const auto& item : s.items) {
        indent(os, depth + 1);
        if (item.labels.empty()) {
          os << "default:";
        } else {
          for (std::size_t i = 0; i < item.labels.size(); ++i) {
            if (i) os << ", ";
            print_expr(*item.labels[i], os);
          }
          os << ":";
        }
        os << "\n";
        print_stmt(item.body[0], os, depth + 2);
      }
      indent(os, depth);
      os << "endcase\n";
      break;
    case AstStmt::Kind::Assign:
      indent(os, depth);
      os << s.lhs << (s.blocking ? " = " : " <= ");
      print_expr(*s.rhs, os);
      os << ";\n";
      break;
  }
}

bool same_expr(const AstExprPtr& a, const AstExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind || a->name != b->name || a->op != b->op) return false;
  if (a->kind == AstExpr::Kind::Number &&
      (a->sized != b->sized || a->value != b->value || (a->sized && a->width != b->width))) {
    return false;
  }
  if (a->operands.size() != b->operands.size()) return false;
  for (std::size_t i = 0; i < a->operands.size(); ++i) {
    if (!same_expr(a->operands[i], b->operands[i])) return false;
  }
  return true;
}

bool same_stmt(const AstStmt& a, const AstStmt& b) {
  if (a.kind != b.kind || a.has_else != b.has_else || a.blocking != b.blocking ||
      a.lhs != b.lhs || !same_expr(a.cond, b.cond) || !same_expr(a.rhs, b.rhs) ||
      a.body.size() != b.body.size() || a.items.size() != b.items.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.body.size(); ++i) {
    if (!same_stmt(a.body[i], b.body[i])) return false;
  }
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    const auto& x = a.items[i];
    const auto& y = b.items[i];
    if (x.labels.size() != y.labels.size() || !same_stmt(x.body[0], y.body[0])) return false;
    for (std::size_t k = 0; k < x.labels.size(); ++k) {
      if (!same_expr(x.labels[k], y.labels[k])) return false;
    }
  }
  return true;
}

bool same_module(const Module& a, const Module& b) {
  if (a.name != b.name || a.port_order != b.port_order || a.params.size() != b.params.size() ||
      a.nets.size() != b.nets.size() || a.assigns.size() != b.assigns.size() ||
      a.always.size() != b.always.size() || a.initials.size() != b.initials.size() ||
      a.instances.size() != b.instances.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    if (a.params[i].name != b.params[i].name || a.params[i].local != b.params[i].local ||
        !same_expr(a.params[i].value, b.params[i].value)) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.nets.size(); ++i) {
    const auto& x = a.nets[i];
    const auto& y = b.nets[i];
    if (x.name != y.name || x.dir != y.dir || x.is_reg != y.is_reg || x.is_wire != y.is_wire ||
        !same_expr(x.msb, y.msb) || !same_expr(x.lsb, y.lsb) || !same_expr(x.init, y.init)) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.assigns.size(); ++i) {
    if (a.assigns[i].lhs != b.assigns[i].lhs || !same_expr(a.assigns[i].rhs, b.assigns[i].rhs))
      return false;
  }
  for (std::size_t i = 0; i < a.always.size(); ++i) {
    if (a.always[i].clock != b.always[i].clock || !same_stmt(a.always[i].body, b.always[i].body))
      return false;
  }
  for (std::size_t i = 0; i < a.initials.size(); ++i) {
    const auto& x = a.initials[i].assigns;
    const auto& y = b.initials[i].assigns;
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (!same_stmt(x[k], y[k])) return false;
    }
  }
  for (std::size_t i = 0; i < a.instances.size(); ++i) {
    const auto& x = a.instances[i];
    const auto& y = b.instances[i];
    if (x.module != y.module || x.name != y.name || x.named_ports != y.named_ports ||
        x.params.size() != y.params.size() || x.ports.size() != y.ports.size()) {
      return false;
    }
    for (std::size_t k = 0; k < x.params.size(); ++k) {
      if (x.params[k].first != y.params[k].first || !same_expr(x.params[k].second, y.params[k].second))
        return false;
    }
    for (std::size_t k = 0; k < x.ports.size(); ++k) {
      if (x.ports[k].first != y.ports[k].first || !same_expr(x.ports[k].second, y.ports[k].second))
        return false;
    }
  }
  return true;
}

}  // namespace

std::string print(const AstExpr& e) {
  std::ostringstream os;
  print_expr(e, os);
  return os.str();
}

std::string print(const Module& m) {
  std::ostringstream os;
  os << "module " << m.name;
  if (!m.port_order.empty()) {
    os << "(";
    for (std::size_t i = 0; i < m.port_order.size(); ++i) {
      if (i) os << ", ";
      os << m.port_order[i];
    }
    os << ")";
  }
  os << ";\n";
  for (const auto& p : m.params) {
    os << "  " << (p.local ? "localparam " : "parameter ") << p.name << " = ";
    print_expr(*p.value, os);
    os << ";\n";
  }
  for (const auto& n : m.nets) {
    os << "  ";
    if (n.dir == PortDir::Input) os << "input ";
    if (n.dir == PortDir::Output) os << "output ";
    if (n.is_reg) os << "reg ";
    if (n.is_wire) os << "wire ";
    if (n.msb) {
      os << "[";
      print_expr(*n.msb, os);
      os << ":";
      print_expr(*n.lsb, os);
      os << "] ";
    }
    os << n.name;
    if (n.init) {
      os << " = ";
      print_expr(*n.init, os);
    }
    os << ";\n";
  }
  for (const auto& a : m.assigns) {
    os << "  assign " << a.lhs << " = ";
    print_expr(*a.rhs, os);
    os << ";\n";
  }
  for (const auto& a : m.always) {
    os << "  always @(posedge " << a.clock << ")\n";
    print_stmt(a.body, os, 2);
  }
  for (const auto& ib : m.initials) {
    os << "  initial begin\n";
    for (const auto& s : ib.assigns) print_stmt(s, os, 2);
    os << "  end\n";
  }
  for (const auto& inst : m.instances) {
    os << "  " << inst.module;
    if (!inst.params.empty()) {
      os << " #(";
      for (std::size_t i = 0; i < inst.params.size(); ++i) {
        if (i) os << ", ";
        if (!inst.params[i].first.empty()) os << "." << inst.params[i].first << "(";
        print_expr(*inst.params[i].second, os);
        if (!inst.params[i].first.empty()) os << ")";
      }
      os << ")";
    }
    os << " " << inst.name << "(";
    for (std::size_t i = 0; i < inst.ports.size(); ++i) {
      if (i) os << ", ";
      if (inst.named_ports) {
        os << "." << inst.ports[i].first << "(";
        if (inst.ports[i].second) print_expr(*inst.ports[i].second, os);
        os << ")";
      } else {
        print_expr(*inst.ports[i].second, os);
      }
    }
    os << ");\n";
  }
  os << "endmodule\n";
  return os.str();
}

bool same_structure(const Ast& a, const Ast& b) {
  if (a.modules.size() != b.modules.size()) return false;
  for (std::size_t i = 0; i < a.modules.size(); ++i) {
    if (!same_module(a.modules[i], b.modules[i])) return false;
  }
  return true;
}

}  // namespace seif::verilog

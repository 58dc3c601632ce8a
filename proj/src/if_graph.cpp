#include "seif/if_graph.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

namespace seif {

const char* edge_kind_name(EdgeKind k) { return k == EdgeKind::Explicit ? "explicit" : "implicit"; }

const char* assign_class_name(AssignClass c) {
  switch (c) {
    case AssignClass::Blocking: return "blocking";
    case AssignClass::Nonblocking: return "nonblocking";
    case AssignClass::Continuous: return "continuous";
  }
  return "?";
}

const SignalDecl& IFGraph::node(const std::string& n) const {
  auto it = node_index_.find(n);
  if (it == node_index_.end()) throw Error(ErrorKind::UnknownSignal, "unknown signal '" + n + "'");
  return nodes[it->second];
}

const std::vector<int>& IFGraph::out_edges(const std::string& n) const {
  static const std::vector<int> none;
  auto it = out_.find(n);
  return it == out_.end() ? none : it->second;
}

bool IFGraph::is_endpoint(const std::string& n) const {
  const SignalDecl& d = node(n);
  return d.kind == SignalKind::Reg || d.is_output;
}

void IFGraph::index() {
  node_index_.clear();
  out_.clear();
  for (std::size_t i = 0; i < nodes.size(); ++i) node_index_[nodes[i].name] = static_cast<int>(i);
  for (std::size_t i = 0; i < edges.size(); ++i) out_[edges[i].src].push_back(static_cast<int>(i));
}

namespace {

using CondList = std::vector<Expr>;
using Occurrences = std::map<std::string, std::vector<CondList>>;

void signals_of(const Expr& e, const CondList& conds, Occurrences& out) {
  for (const auto& [sym, w] : collect_symbols(e)) {
    if (sym.is_signal_ref()) out[sym.name].push_back(conds);
  }
}

// Splits an RHS into data operands (explicit) and ternary selectors (implicit).
void walk_rhs(const Expr& e, CondList& conds, Occurrences& expl, Occurrences& impl) {
  switch (e.op()) {
    case Op::Const:
      return;
    case Op::Sym:
      if (e.symbol().is_signal_ref()) expl[e.symbol().name].push_back(conds);
      return;
    case Op::Ite: {
      const Expr& c = e.arg(0);
      signals_of(c, conds, impl);
      conds.push_back(c);
      walk_rhs(e.arg(1), conds, expl, impl);
      conds.back() = logical_not(c);
      walk_rhs(e.arg(2), conds, expl, impl);
      conds.pop_back();
      return;
    }
    default:
      for (const auto& a : e.args()) walk_rhs(a, conds, expl, impl);
  }
}

CondList common_prefix(const std::vector<CondList>& lists) {
  CondList out = lists.front();
  for (const auto& l : lists) {
    std::size_t n = 0;
    while (n < out.size() && n < l.size() && structurally_equal(out[n], l[n])) ++n;
    out.resize(n);
  }
  return out;
}

void emit(IFGraph& g, const std::string& dst, const Expr& rhs, const CondList& guards,
          AssignClass cls, const LineId& line, int process) {
  Occurrences expl, impl;
  CondList conds = guards;
  walk_rhs(rhs, conds, expl, impl);
  for (const auto& gexpr : guards) signals_of(gexpr, guards, impl);
  for (const auto& [src, occ] : expl) {
    g.edges.push_back(IFEdge{src, dst, EdgeKind::Explicit, cls, line, common_prefix(occ), process});
  }
  for (const auto& [src, occ] : impl) {
    if (expl.count(src)) continue;
    g.edges.push_back(IFEdge{src, dst, EdgeKind::Implicit, cls, line, common_prefix(occ), process});
  }
}

void emit_block(IFGraph& g, const Process& p, int pi, const std::vector<int>& body,
                CondList& guards) {
  for (int si : body) {
    const Stmt& s = p.stmts[si];
    if (s.kind == StmtKind::Assign) {
      emit(g, s.lhs, s.rhs, guards, s.blocking ? AssignClass::Blocking : AssignClass::Nonblocking,
           s.line, pi);
      continue;
    }
    guards.push_back(s.cond);
    emit_block(g, p, pi, s.then_body, guards);
    guards.back() = logical_not(s.cond);
    emit_block(g, p, pi, s.else_body, guards);
    guards.pop_back();
  }
}

}  // namespace

IFGraph build_if_graph(const DesignIR& ir) {
  IFGraph g;
  for (const auto& s : ir.signals) {
    if (s.name != ir.clock) g.nodes.push_back(s);
  }
  for (const auto& a : ir.continuous_assigns) {
    emit(g, a.lhs, a.rhs, {}, AssignClass::Continuous, a.line, -1);
  }
  for (std::size_t pi = 0; pi < ir.processes.size(); ++pi) {
    CondList guards;
    emit_block(g, ir.processes[pi], static_cast<int>(pi), ir.processes[pi].body, guards);
  }
  g.index();
  return g;
}

PathEnumeration enumerate_paths(const IFGraph& g, const std::string& source,
                                const std::optional<std::string>& sink, const PathLimits& limits) {
  g.node(source);
  if (sink) g.node(*sink);
  PathEnumeration result;
  std::vector<IFEdge> hops;
  std::set<std::string> on_path{source};

  std::function<bool(const std::string&)> dfs = [&](const std::string& at) {
    if (static_cast<int>(hops.size()) >= limits.max_hops) return true;
    for (int ei : g.out_edges(at)) {
      const IFEdge& e = g.edges[ei];
      if (e.is_self_loop() || on_path.count(e.dst)) continue;
      hops.push_back(e);
      const bool hit = sink ? e.dst == *sink : g.is_endpoint(e.dst);
      if (hit) {
        if (static_cast<int>(result.paths.size()) >= limits.max_paths) {
          result.truncated = true;
          hops.pop_back();
          return false;
        }
        result.paths.push_back(IFPath{hops, source, e.dst});
      }
      if (!sink || e.dst != *sink) {
        on_path.insert(e.dst);
        const bool more = dfs(e.dst);
        on_path.erase(e.dst);
        if (!more) {
          hops.pop_back();
          return false;
        }
      }
      hops.pop_back();
    }
    return true;
  };
  dfs(source);
  return result;
}

std::vector<Segment> segment_path(const IFPath& p) {
  std::vector<Segment> out;
  Segment cur;
  for (const auto& h : p.hops) {
    cur.hops.push_back(h);
    cur.resident = h.dst;
    if (h.assign_class == AssignClass::Nonblocking) {
      out.push_back(std::move(cur));
      cur = Segment{};
    }
  }
  if (!cur.hops.empty()) out.push_back(std::move(cur));
  return out;
}

std::string path_to_string(const IFPath& p) {
  std::ostringstream os;
  os << p.source;
  for (const auto& h : p.hops) {
    os << (h.kind == EdgeKind::Explicit ? " -> " : " ~> ") << h.dst << "@" << h.line.line;
  }
  return os.str();
}

std::string to_dot(const IFGraph& g) {
  std::ostringstream os;
  os << "digraph if_graph {\n";
  for (const auto& n : g.nodes) {
    os << "  \"" << n.name << "\" [shape="
       << (n.kind == SignalKind::Reg ? "box" : n.kind == SignalKind::Input ? "invhouse" : "ellipse")
       << (n.is_output ? ", peripheries=2" : "") << "];\n";
  }
  for (const auto& e : g.edges) {
    os << "  \"" << e.src << "\" -> \"" << e.dst << "\" [label=\"" << e.line.line;
    if (e.assign_class == AssignClass::Nonblocking) os << " nb";
    os << "\"";
    if (e.kind == EdgeKind::Implicit) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_json(const IFGraph& g, const std::vector<std::string>& files) {
  using nlohmann::json;
  json nodes = json::array();
  for (const auto& n : g.nodes) {
    nodes.push_back({{"name", n.name},
                     {"kind", signal_kind_name(n.kind)},
                     {"output", n.is_output},
                     {"width", n.width}});
  }
  json edges = json::array();
  for (const auto& e : g.edges) {
    json conds = json::array();
    for (const auto& c : e.conditions) conds.push_back(to_string(c));
    const std::string file =
        e.line.file >= 0 && e.line.file < static_cast<int>(files.size()) ? files[e.line.file] : "";
    edges.push_back({{"src", e.src},
                     {"dst", e.dst},
                     {"kind", edge_kind_name(e.kind)},
                     {"assign_class", assign_class_name(e.assign_class)},
                     {"file", file},
                     {"line", e.line.line},
                     {"line_id", e.line.str()},
                     {"conditions", conds}});
  }
  json doc = {{"schema_version", 1}, {"nodes", nodes}, {"edges", edges}};
  return doc.dump(2);
}

}  // namespace seif

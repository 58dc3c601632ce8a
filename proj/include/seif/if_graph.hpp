// Information-flow graph over design signals, path enumeration and
// clock-boundary segmentation.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seif/design.hpp"

namespace seif {

enum class EdgeKind { Explicit, Implicit };
enum class AssignClass { Blocking, Nonblocking, Continuous };

const char* edge_kind_name(EdgeKind k);
const char* assign_class_name(AssignClass c);

struct IFEdge {
  std::string src;
  std::string dst;
  EdgeKind kind = EdgeKind::Explicit;
  AssignClass assign_class = AssignClass::Continuous;
  LineId line;
  /// Enclosing guards, else-branches negated; all 1 bit, over signal refs.
  std::vector<Expr> conditions;
  int process = -1;  // owning always block, -1 for continuous assigns

  bool is_self_loop() const { return src == dst; }
};

class IFGraph {
 public:
  std::vector<SignalDecl> nodes;
  std::vector<IFEdge> edges;

  bool has_node(const std::string& n) const { return node_index_.count(n) > 0; }
  const SignalDecl& node(const std::string& n) const;
  /// Indices into `edges`, in edge order.
  const std::vector<int>& out_edges(const std::string& n) const;
  /// Registers and outputs are the default path endpoints.
  bool is_endpoint(const std::string& n) const;

  void index();

 private:
  std::map<std::string, int> node_index_;
  std::map<std::string, std::vector<int>> out_;
};

IFGraph build_if_graph(const DesignIR& ir);

struct IFPath {
  std::vector<IFEdge> hops;
  std::string source;
  std::string sink;
};

struct PathLimits {
  int max_hops = 12;
  int max_paths = 100000;
};

struct PathEnumeration {
  std::vector<IFPath> paths;
  bool truncated = false;
};

/// Simple paths from `source`, self-loops excluded. With a sink, every path
/// ending there; otherwise every path ending at a register or an output.
/// Throws UnknownSignal when source (or sink) is not a node.
PathEnumeration enumerate_paths(const IFGraph& g, const std::string& source,
                                const std::optional<std::string>& sink = std::nullopt,
                                const PathLimits& limits = {});

struct Segment {
  std::vector<IFEdge> hops;
  std::string resident;

  bool ends_nonblocking() const {
    return !hops.empty() && hops.back().assign_class == AssignClass::Nonblocking;
  }
};

std::vector<Segment> segment_path(const IFPath& p);

std::string path_to_string(const IFPath& p);

std::string to_dot(const IFGraph& g);
/// JSON text; nodes plus edges with kind, class, line and printed conditions.
std::string to_json(const IFGraph& g, const std::vector<std::string>& files);

}  // namespace seif

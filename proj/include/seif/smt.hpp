// SMT-LIB2 session over an external solver process (QF_BV).

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seif/expr.hpp"

namespace seif {

struct Constraint {
  std::string label;
  Expr expr;  // width 1
};

using ConstraintSet = std::vector<Constraint>;

class Model {
 public:
  void set(const Symbol& s, Width w, Value v) { values_[s] = {w, v}; }
  bool has(const Symbol& s) const { return values_.count(s) > 0; }
  /// Throws Error(UnknownSymbol) for symbols the query did not declare.
  Value get(const Symbol& s) const;
  const std::map<Symbol, std::pair<Width, Value>>& values() const { return values_; }
  std::optional<Value> lookup(const Symbol& s) const;

 private:
  std::map<Symbol, std::pair<Width, Value>> values_;
};

enum class SatStatus { Sat, Unsat, Unknown };

const char* sat_status_name(SatStatus s);

struct CheckResult {
  SatStatus status = SatStatus::Unknown;
  Model model;                    // Sat
  std::vector<std::string> core;  // Unsat, subset of the labels
  std::string reason;             // Unknown
};

struct SmtOptions {
  std::string solver_path = "z3";
  int timeout_ms = 10000;
  unsigned seed = 0;
  bool keep_transcript = false;
  std::string transcript_path;  // written on destruction when keeping a transcript
};

struct CheckOptions {
  bool want_model = true;
  bool want_core = true;
};

class SolverProcess;

/// Single-owner connection to one solver process. Every check runs inside
/// its own push/pop scope, so queries do not leak into each other.
class SmtSession {
 public:
  /// Throws Error(SolverUnavailable) when the binary cannot be started.
  explicit SmtSession(SmtOptions opts = {});
  ~SmtSession();
  SmtSession(const SmtSession&) = delete;
  SmtSession& operator=(const SmtSession&) = delete;

  /// `extra` symbols are declared (and valued in the model) even when no
  /// constraint mentions them.
  CheckResult check(const ConstraintSet& c, const std::map<Symbol, Width>& extra = {},
                    CheckOptions copts = {});

  std::string version() const { return version_; }
  const std::string& transcript() const { return transcript_; }
  long query_count() const { return queries_; }
  const SmtOptions& options() const { return opts_; }

 private:
  void start();
  void send(const std::string& text);
  std::string receive();

  SmtOptions opts_;
  SolverProcess* proc_ = nullptr;
  std::string version_;
  std::string transcript_;
  long queries_ = 0;
};

/// Flat SMT-LIB rendering of a bitvector term (no sharing).
std::string to_smt_term(const Expr& e);
/// Inverse of to_smt_term; `symbols` maps Symbol::key() to the symbol.
Expr from_smt_term(const std::string& text, const std::map<std::string, std::pair<Symbol, Width>>& symbols);

/// Parses `#b...`, `#x...` or `(_ bvN W)`.
std::optional<Value> parse_bv_literal(const std::string& text);

}  // namespace seif

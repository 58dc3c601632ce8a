#pragma once

#include <stdexcept>
#include <string>

namespace seif {

struct SourcePos {
  int file = 0;
  int line = 0;
  int col = 0;
};

enum class ErrorKind {
  Syntax,
  UnsupportedConstruct,
  UnresolvedModule,
  RecursiveInstantiation,
  MultipleDrivers,
  UnknownSignal,
  CombinationalCycle,
  Elaboration,
  WidthMismatch,
  SolverUnavailable,
  UnknownSymbol,
  TooLarge,
  Config,
};

const char* error_kind_name(ErrorKind k);

/// Every user-facing failure of the toolchain. The message is already
/// formatted; `pos` is valid when `has_pos` is set.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  Error(ErrorKind kind, SourcePos pos, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind), pos_(pos), has_pos_(true) {}

  ErrorKind kind() const { return kind_; }
  const SourcePos& pos() const { return pos_; }
  bool has_pos() const { return has_pos_; }

 private:
  ErrorKind kind_;
  SourcePos pos_{};
  bool has_pos_ = false;
};

}  // namespace seif

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gtf {

enum class ErrorCode {
  IndexOutOfRange,
  SelfLoop,
  DisconnectedGraph,
  ProbabilityOutOfRange,
  DegenerateFeatures,
  DimensionMismatch,
  EmptyCluster,
  NonSymmetric,
  ConvergenceFailure,
  KEqualsN,
  TooFewPoints,
  LabelOutOfRange,
  SingularSystem,
  TooLarge,
  ZeroSignal,
  DegenerateTruth,
  ConfigError,
  DataNotFound,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can dispatch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace gtf

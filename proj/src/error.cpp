#include "gtf/error.hpp"

namespace gtf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::DegenerateFeatures: return "DegenerateFeatures";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyCluster: return "EmptyCluster";
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::KEqualsN: return "KEqualsN";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ZeroSignal: return "ZeroSignal";
    case ErrorCode::DegenerateTruth: return "DegenerateTruth";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::DataNotFound: return "DataNotFound";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace gtf

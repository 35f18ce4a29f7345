#include "farpoint/error.hpp"

namespace farpoint {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::RepresentationMismatch: return "RepresentationMismatch";
    case ErrorCode::DegenerateVector: return "DegenerateVector";
    case ErrorCode::InvalidVector: return "InvalidVector";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NoEpsilonMaximizer: return "NoEpsilonMaximizer";
    case ErrorCode::UnsupportedSpace: return "UnsupportedSpace";
    case ErrorCode::InvalidX: return "InvalidX";
    case ErrorCode::InvalidObjective: return "InvalidObjective";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace farpoint

#include "samst/error.hpp"

namespace samst {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DisconnectedInput: return "DisconnectedInput";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::BadVertexIndex: return "BadVertexIndex";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NegativeArgument: return "NegativeArgument";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotASpanningTree: return "NotASpanningTree";
    case ErrorCode::DisconnectedState: return "DisconnectedState";
    case ErrorCode::TelemetryMissing: return "TelemetryMissing";
    case ErrorCode::InfeasibleSpec: return "InfeasibleSpec";
    case ErrorCode::NotSeparated: return "NotSeparated";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace samst

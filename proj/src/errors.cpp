#include "graphpse/errors.hpp"

namespace graphpse {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kNotABijection: return "NotABijection";
    case ErrorCode::kVirtualNodeAlreadyPresent: return "VirtualNodeAlreadyPresent";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kNonPositiveTime: return "NonPositiveTime";
    case ErrorCode::kDisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::kKTooLarge: return "KTooLarge";
    case ErrorCode::kEmptyConfig: return "EmptyConfig";
    case ErrorCode::kNotNodeLevel: return "NotNodeLevel";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kGraphTooLarge: return "GraphTooLarge";
    case ErrorCode::kWidthMismatch: return "WidthMismatch";
    case ErrorCode::kAlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::kBadSkip: return "BadSkip";
    case ErrorCode::kInfeasibleDegree: return "InfeasibleDegree";
    case ErrorCode::kRetriesExhausted: return "RetriesExhausted";
    case ErrorCode::kVerdictFailed: return "VerdictFailed";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace graphpse

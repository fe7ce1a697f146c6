#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace graphpse {

enum class ErrorCode {
  kIndexOutOfRange,
  kSelfLoop,
  kNotABijection,
  kVirtualNodeAlreadyPresent,
  kMalformedRecord,
  kNotSymmetric,
  kNoConvergence,
  kNonPositiveTime,
  kDisconnectedGraph,
  kKTooLarge,
  kEmptyConfig,
  kNotNodeLevel,
  kLengthMismatch,
  kGraphTooLarge,
  kWidthMismatch,
  kAlphaOutOfRange,
  kBadSkip,
  kInfeasibleDegree,
  kRetriesExhausted,
  kVerdictFailed,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace graphpse

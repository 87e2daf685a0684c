#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace engage {

enum class ErrorKind {
  kIoFailure,
  kSchemaViolation,
  kRangeViolation,
  kInvalidConfig,
  kInvalidArgument,
  kInsufficientData,
  kDegenerate,
  kNonSymmetric,
  kNonConvergence,
  kMissingSignal,
  kSchemaMismatch,
  kFingerprintMismatch,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  // Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace engage

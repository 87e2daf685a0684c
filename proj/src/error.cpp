#include "engage/error.hpp"

namespace engage {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIoFailure: return "io-failure";
    case ErrorKind::kSchemaViolation: return "schema-violation";
    case ErrorKind::kRangeViolation: return "range-violation";
    case ErrorKind::kInvalidConfig: return "invalid-config";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kInsufficientData: return "insufficient-data";
    case ErrorKind::kDegenerate: return "degenerate";
    case ErrorKind::kNonSymmetric: return "non-symmetric";
    case ErrorKind::kNonConvergence: return "non-convergence";
    case ErrorKind::kMissingSignal: return "missing-signal";
    case ErrorKind::kSchemaMismatch: return "schema-mismatch";
    case ErrorKind::kFingerprintMismatch: return "fingerprint-mismatch";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

}  // namespace engage

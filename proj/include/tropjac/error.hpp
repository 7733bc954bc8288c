#pragma once

#include <stdexcept>
#include <string>

namespace tropjac {

enum class ErrorCode {
  kInvalidArgument,
  kIndexOutOfRange,
  kSizeGuard,
  kDegreeMismatch,
  kDegenerateGenus,
  kNotSemistable,
  kNotPolystable,
  kPrecondition,
  kDisconnected,
  kCellExit,
  kParse,
};

// Every failure in the library is reported through this type; the code lets the
// CLI map failures onto distinct exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kIndexOutOfRange: return "index-out-of-range";
    case ErrorCode::kSizeGuard: return "size-guard";
    case ErrorCode::kDegreeMismatch: return "degree-mismatch";
    case ErrorCode::kDegenerateGenus: return "degenerate-genus";
    case ErrorCode::kNotSemistable: return "not-semistable";
    case ErrorCode::kNotPolystable: return "not-polystable";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kDisconnected: return "disconnected";
    case ErrorCode::kCellExit: return "cell-exit";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

}  // namespace tropjac

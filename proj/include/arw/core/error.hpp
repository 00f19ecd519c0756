#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace arw {

/// Categories of structured failures. Mathematical "false" outcomes are
/// never errors; these are raised for invalid input or broken preconditions.
enum class ErrorKind {
  kInvalidArgument,
  kParse,
  kRingMismatch,
  kPrecondition,
  kNotHomogeneous,
  kSearchExhausted,
  kLimit,
  kConfig,
  kIo,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kRingMismatch: return "ring-mismatch";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kNotHomogeneous: return "not-homogeneous";
    case ErrorKind::kSearchExhausted: return "search-exhausted";
    case ErrorKind::kLimit: return "limit";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg, std::string location = {})
      : std::runtime_error(location.empty() ? msg : location + ": " + msg),
        kind_(kind),
        location_(std::move(location)),
        message_(msg) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& location() const noexcept { return location_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string location_;
  std::string message_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
  if (!cond) fail(kind, msg);
}

}  // namespace arw

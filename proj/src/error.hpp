#pragma once

#include <stdexcept>
#include <string>

namespace rocsbb {

// Error categories, aligned with the CLI exit codes and the C API status
// values declared in rocsbb.h.
enum class ErrorCode : int {
  usage = 2,       // bad arguments / flag conflicts
  data = 3,        // unreadable or malformed input data
  degenerate = 4,  // numerically degenerate input (zero spread, all ties, ...)
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_usage(const std::string& msg) {
  throw Error(ErrorCode::usage, msg);
}

[[noreturn]] inline void throw_data(const std::string& msg) {
  throw Error(ErrorCode::data, msg);
}

[[noreturn]] inline void throw_degenerate(const std::string& msg) {
  throw Error(ErrorCode::degenerate, msg);
}

}  // namespace rocsbb

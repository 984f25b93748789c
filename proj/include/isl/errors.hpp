#pragma once

#include <stdexcept>
#include <string>

namespace isl {

// Input files that fail to parse. `line` is the 1-based file line when known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg, long line = -1)
      : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

// Requests that would exceed a documented resource guard (memory/size caps).
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Statistical estimation that cannot proceed (e.g. too few usable points).
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exit codes used by the CLI. Library code throws; the CLI maps.
enum ExitCode : int {
  kExitOk = 0,
  kExitParseError = 2,
  kExitDomainError = 3,
  kExitNonConvergence = 4,
  kExitResourceLimit = 5,
};

}  // namespace isl

#pragma once

#include <stdexcept>
#include <string>

namespace ccqed {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input outside the physical or mathematical domain of an operation.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Numerical breakdown, e.g. a singular system or a root that cannot be bracketed.
class NumericError : public Error {
  public:
    using Error::Error;
};

/// Malformed configuration text; carries the offending line (0 if none).
class ConfigError : public Error {
  public:
    ConfigError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    int line() const noexcept { return line_; }

  private:
    int line_;
};

}  // namespace ccqed

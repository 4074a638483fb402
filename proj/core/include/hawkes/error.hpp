#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hawkes {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: a violated precondition or a malformed configuration.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed (non-convergence, non-finite state, ...).
class ComputationError : public Error {
 public:
  using Error::Error;
};

/// Configuration rejected. Carries every violation found, not just the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace hawkes

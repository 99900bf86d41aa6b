#pragma once

#include <stdexcept>
#include <string>

namespace hadamard {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs that violate an operation's preconditions: mismatched spaces,
/// out-of-range weights, malformed descriptors.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configuration document that failed to parse or validate. `path` is a
/// JSON pointer to the offending field ("" for the document root).
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace hadamard

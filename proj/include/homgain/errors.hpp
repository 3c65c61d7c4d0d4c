#pragma once

#include <stdexcept>
#include <string>

namespace homgain {

// Base of every error raised by the library. `reason()` is a short
// machine-readable tag used by the CLI ("domain", "config", "assumption1", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string reason, const std::string& what)
      : std::runtime_error(what), reason_(std::move(reason)) {}
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

// Invalid or inconsistent configuration values.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("config", what) {}
};

// The gain-ratio condition (stabilizing gains) or the storage condition a_tilde > M fails.
class AssumptionError : public Error {
 public:
  AssumptionError(std::string reason, const std::string& what)
      : Error(std::move(reason), what) {}
};

// Unreadable or unwritable files.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error("io", what) {}
};

// Numerical breakdown: overflow during integration, no feasible gain, ...
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error("numeric", what) {}
};

}  // namespace homgain

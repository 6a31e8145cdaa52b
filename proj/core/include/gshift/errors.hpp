#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace gshift {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An index, window or configuration was used against the wrong domain.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

// Coordinate arithmetic left the 128-bit budget, or a step budget ran out.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A construction's hypothesis did not hold (e.g. no proven non-quasi-periodic
// anchor). The message names the offending verdict.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Raised while reading experiment configs and JSON specs. `path` is the
// dotted field path of the offending value.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace gshift

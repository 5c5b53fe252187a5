#pragma once

#include <stdexcept>
#include <string>

namespace qpe {

/// Failure category; the CLI maps each one onto its exit status.
enum class ErrorKind {
  usage = 1,
  data = 2,
  numeric = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed or invalid input: bad JSON, invalid graph, shape mismatch.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

/// Numerical failure: singular factors, overflow, ill-conditioning.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what)
      : Error(ErrorKind::numeric, what) {}
};

/// A problem size exceeded a configured exhaustive/simulation cap.
class CapacityError : public NumericError {
 public:
  explicit CapacityError(const std::string& what) : NumericError(what) {}
};

[[noreturn]] void throw_data(const std::string& what);
[[noreturn]] void throw_numeric(const std::string& what);

}  // namespace qpe

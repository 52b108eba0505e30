#pragma once

#include <stdexcept>
#include <string>

namespace heun {

/// Base class; `exit_code()` is the CLI process status for this failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 1; }
  virtual const char* kind() const { return "error"; }
};

class ParseError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
  const char* kind() const override { return "parse_error"; }
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 3; }
  const char* kind() const override { return "non_convergence"; }
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 4; }
  const char* kind() const override { return "invalid_parameters"; }
};

}  // namespace heun

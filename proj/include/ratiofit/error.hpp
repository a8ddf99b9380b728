#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ratiofit {

/// Argument outside the mathematical domain of an operation (x <= 0 for
/// log_gamma, non-positive shape, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Data-quality problem: zero realized variance, empty intersection of
/// calendars, too few observations.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative numerical routine hit its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the 1-based line number (0 when unknown).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Bad command-line usage or manifest; the CLI maps this to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ratiofit

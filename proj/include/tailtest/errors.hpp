#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tailtest {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of a numerical routine.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A CDF model produced a value outside [0, 1] or is otherwise malformed.
class InvalidModelError : public Error {
 public:
  using Error::Error;
};

// Bad user input: unreadable files, malformed specs, inconsistent arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : InputError(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A numerical integral could not reach its tolerance. Carries the best
// error bound that was achieved.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved_bound)
      : Error(what), achieved_bound_(achieved_bound) {}
  double achieved_bound() const noexcept { return achieved_bound_; }

 private:
  double achieved_bound_;
};

}  // namespace tailtest

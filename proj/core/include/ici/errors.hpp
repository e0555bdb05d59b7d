#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ici {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A step formula was asked to divide by a vanishing quantity.
class DegenerateStepError : public Error {
 public:
  enum class Kind {
    degenerate_interval,  // a == b in the forward Hermite blend
    equal_residuals,      // f(a) == f(b): inverse blend / secant undefined
    zero_derivative,      // f'(x) == 0 in a Newton-type update
  };

  DegenerateStepError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UndefinedPhaseError : public Error {
 public:
  UndefinedPhaseError() : Error("phase of zero is undefined") {}
};

class FitUndefinedError : public Error {
 public:
  using Error::Error;
};

class MultipleRootError : public Error {
 public:
  MultipleRootError() : Error("f'(r) = 0: error constant undefined at a multiple root") {}
};

}  // namespace ici

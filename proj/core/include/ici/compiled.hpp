#pragma once

#include <cstddef>
#include <vector>

#include "ici/expr.hpp"

namespace ici {

/// An expression flattened to a postfix program with its literals converted
/// once at a fixed precision. Evaluation is reentrant.
class CompiledExpr {
 public:
  CompiledExpr(const Expr& e, Precision p);

  MPReal operator()(const MPReal& x) const;
  MPComplex operator()(const MPComplex& z) const;

  Precision precision() const noexcept { return precision_; }

 private:
  enum class OpCode { constant, variable, negate, add, sub, mul, div, pow_int, pow, exp, sin, cos, sqrt, log };
  struct Instruction {
    OpCode op;
    long operand = 0;  // constant index or integer exponent
  };

  void emit(const Expr& e);
  template <class T>
  T run(const T& arg, const std::vector<T>& constants) const;

  Precision precision_;
  std::vector<Instruction> program_;
  std::vector<MPReal> real_constants_;
  std::vector<MPComplex> complex_constants_;
};

}  // namespace ici

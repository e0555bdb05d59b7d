#include "ici/compiled.hpp"

#include <utility>

namespace ici {

CompiledExpr::CompiledExpr(const Expr& e, Precision p) : precision_(p) {
  emit(e);
  complex_constants_.reserve(real_constants_.size());
  for (const auto& c : real_constants_) complex_constants_.emplace_back(c);
}

void CompiledExpr::emit(const Expr& e) {
  const auto& node = e.node();
  if (const auto* n = std::get_if<expr_node::Number>(&node)) {
    real_constants_.emplace_back(n->text, precision_);
    program_.push_back({OpCode::constant, static_cast<long>(real_constants_.size() - 1)});
  } else if (std::holds_alternative<expr_node::Pi>(node)) {
    real_constants_.push_back(MPReal::pi(precision_));
    program_.push_back({OpCode::constant, static_cast<long>(real_constants_.size() - 1)});
  } else if (std::holds_alternative<expr_node::Variable>(node)) {
    program_.push_back({OpCode::variable});
  } else if (const auto* neg = std::get_if<expr_node::Negate>(&node)) {
    emit(*neg->operand);
    program_.push_back({OpCode::negate});
  } else if (const auto* b = std::get_if<expr_node::Binary>(&node)) {
    emit(*b->lhs);
    if (b->op == BinaryOp::pow) {
      if (auto n = b->rhs->integer_value()) {
        program_.push_back({OpCode::pow_int, *n});
        return;
      }
    }
    emit(*b->rhs);
    switch (b->op) {
      case BinaryOp::add: program_.push_back({OpCode::add}); break;
      case BinaryOp::sub: program_.push_back({OpCode::sub}); break;
      case BinaryOp::mul: program_.push_back({OpCode::mul}); break;
      case BinaryOp::div: program_.push_back({OpCode::div}); break;
      case BinaryOp::pow: program_.push_back({OpCode::pow}); break;
    }
  } else if (const auto* c = std::get_if<expr_node::Call>(&node)) {
    emit(*c->arg);
    switch (c->fn) {
      case UnaryFunction::exp: program_.push_back({OpCode::exp}); break;
      case UnaryFunction::sin: program_.push_back({OpCode::sin}); break;
      case UnaryFunction::cos: program_.push_back({OpCode::cos}); break;
      case UnaryFunction::sqrt: program_.push_back({OpCode::sqrt}); break;
      case UnaryFunction::log: program_.push_back({OpCode::log}); break;
    }
  }
}

template <class T>
T CompiledExpr::run(const T& arg, const std::vector<T>& constants) const {
  std::vector<T> stack;
  stack.reserve(program_.size());
  auto pop = [&stack] {
    T v = std::move(stack.back());
    stack.pop_back();
    return v;
  };
  for (const Instruction& ins : program_) {
    switch (ins.op) {
      case OpCode::constant: stack.push_back(constants[static_cast<std::size_t>(ins.operand)]); break;
      case OpCode::variable: stack.push_back(arg); break;
      case OpCode::negate: stack.back() = -stack.back(); break;
      case OpCode::pow_int: stack.back() = pow(stack.back(), ins.operand); break;
      case OpCode::exp: stack.back() = exp(stack.back()); break;
      case OpCode::sin: stack.back() = sin(stack.back()); break;
      case OpCode::cos: stack.back() = cos(stack.back()); break;
      case OpCode::sqrt: stack.back() = sqrt(stack.back()); break;
      case OpCode::log: stack.back() = log(stack.back()); break;
      case OpCode::add:
      case OpCode::sub:
      case OpCode::mul:
      case OpCode::div:
      case OpCode::pow: {
        T rhs = pop();
        T& lhs = stack.back();
        switch (ins.op) {
          case OpCode::add: lhs = lhs + rhs; break;
          case OpCode::sub: lhs = lhs - rhs; break;
          case OpCode::mul: lhs = lhs * rhs; break;
          case OpCode::div: lhs = lhs / rhs; break;
          default: lhs = pow(lhs, rhs); break;
        }
        break;
      }
    }
  }
  return pop();
}

MPReal CompiledExpr::operator()(const MPReal& x) const { return run(x, real_constants_); }

MPComplex CompiledExpr::operator()(const MPComplex& z) const { return run(z, complex_constants_); }

}  // namespace ici

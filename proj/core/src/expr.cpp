#include "ici/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>

#include "ici/compiled.hpp"
#include "ici/errors.hpp"

namespace ici {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::shared_ptr<const Expr> share(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

char op_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::add: return '+';
    case BinaryOp::sub: return '-';
    case BinaryOp::mul: return '*';
    case BinaryOp::div: return '/';
    case BinaryOp::pow: return '^';
  }
  return '?';
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

std::string_view function_name(UnaryFunction fn) {
  switch (fn) {
    case UnaryFunction::exp: return "exp";
    case UnaryFunction::sin: return "sin";
    case UnaryFunction::cos: return "cos";
    case UnaryFunction::sqrt: return "sqrt";
    case UnaryFunction::log: return "log";
  }
  return "?";
}

Expr Expr::number(std::string text) { return Expr(expr_node::Number{std::move(text)}); }

Expr Expr::integer(long value) {
  if (value < 0) return negate(number(std::to_string(-value)));
  return number(std::to_string(value));
}

Expr Expr::pi() { return Expr(expr_node::Pi{}); }
Expr Expr::variable(std::string name) { return Expr(expr_node::Variable{std::move(name)}); }
Expr Expr::negate(Expr operand) { return Expr(expr_node::Negate{share(std::move(operand))}); }

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr(expr_node::Binary{op, share(std::move(lhs)), share(std::move(rhs))});
}

Expr Expr::call(UnaryFunction fn, Expr arg) { return Expr(expr_node::Call{fn, share(std::move(arg))}); }

std::string Expr::render() const {
  return std::visit(
      overloaded{
          [](const expr_node::Number& n) { return n.text; },
          [](const expr_node::Pi&) { return std::string("pi"); },
          [](const expr_node::Variable& v) { return v.name; },
          [](const expr_node::Negate& n) { return "(-" + n.operand->render() + ")"; },
          [](const expr_node::Binary& b) {
            return "(" + b.lhs->render() + op_symbol(b.op) + b.rhs->render() + ")";
          },
          [](const expr_node::Call& c) {
            return std::string(function_name(c.fn)) + "(" + c.arg->render() + ")";
          },
      },
      node_);
}

bool Expr::depends_on(std::string_view var) const {
  return std::visit(overloaded{
                        [](const expr_node::Number&) { return false; },
                        [](const expr_node::Pi&) { return false; },
                        [&](const expr_node::Variable& v) { return v.name == var; },
                        [&](const expr_node::Negate& n) { return n.operand->depends_on(var); },
                        [&](const expr_node::Binary& b) { return b.lhs->depends_on(var) || b.rhs->depends_on(var); },
                        [&](const expr_node::Call& c) { return c.arg->depends_on(var); },
                    },
                    node_);
}

std::optional<std::string> Expr::variable_name() const {
  return std::visit(overloaded{
                        [](const expr_node::Number&) -> std::optional<std::string> { return std::nullopt; },
                        [](const expr_node::Pi&) -> std::optional<std::string> { return std::nullopt; },
                        [](const expr_node::Variable& v) -> std::optional<std::string> { return v.name; },
                        [](const expr_node::Negate& n) { return n.operand->variable_name(); },
                        [](const expr_node::Binary& b) {
                          auto l = b.lhs->variable_name();
                          return l ? l : b.rhs->variable_name();
                        },
                        [](const expr_node::Call& c) { return c.arg->variable_name(); },
                    },
                    node_);
}

std::optional<long> Expr::integer_value() const {
  if (const auto* n = std::get_if<expr_node::Number>(&node_)) {
    if (!all_digits(n->text)) return std::nullopt;
    long v = 0;
    const auto* first = n->text.data();
    const auto* last = first + n->text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return v;
  }
  if (const auto* neg = std::get_if<expr_node::Negate>(&node_)) {
    if (auto v = neg->operand->integer_value()) return -*v;
  }
  return std::nullopt;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_.index() != b.node_.index()) return false;
  return std::visit(
      overloaded{
          [&](const expr_node::Number& n) { return n.text == std::get<expr_node::Number>(b.node_).text; },
          [](const expr_node::Pi&) { return true; },
          [&](const expr_node::Variable& v) { return v.name == std::get<expr_node::Variable>(b.node_).name; },
          [&](const expr_node::Negate& n) { return *n.operand == *std::get<expr_node::Negate>(b.node_).operand; },
          [&](const expr_node::Binary& x) {
            const auto& y = std::get<expr_node::Binary>(b.node_);
            return x.op == y.op && *x.lhs == *y.lhs && *x.rhs == *y.rhs;
          },
          [&](const expr_node::Call& c) {
            const auto& d = std::get<expr_node::Call>(b.node_);
            return c.fn == d.fn && *c.arg == *d.arg;
          },
      },
      a.node_);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

  Expr parse_all() {
    skip_space();
    if (at_end()) throw ParseError("empty expression", pos_);
    Expr e = parse_expr();
    skip_space();
    if (!at_end()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(BinaryOp::add, std::move(lhs), parse_term());
      } else if (accept('-')) {
        lhs = Expr::binary(BinaryOp::sub, std::move(lhs), parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(BinaryOp::mul, std::move(lhs), parse_unary());
      } else if (accept('/')) {
        lhs = Expr::binary(BinaryOp::div, std::move(lhs), parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return Expr::negate(parse_unary());
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept('^')) return Expr::binary(BinaryOp::pow, std::move(base), parse_unary());
    return base;
  }

  Expr parse_primary() {
    skip_space();
    if (at_end()) throw ParseError("unexpected end of input", pos_);
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (peek() == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError("malformed number", start);
    if (peek() == 'e' || peek() == 'E') {
      const std::size_t mark = pos_;
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (digits() == 0) throw ParseError("malformed exponent", mark);
    }
    return Expr::number(std::string(text_.substr(start, pos_ - start)));
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));

    static constexpr std::pair<std::string_view, UnaryFunction> kFunctions[] = {
        {"exp", UnaryFunction::exp}, {"sin", UnaryFunction::sin},   {"cos", UnaryFunction::cos},
        {"sqrt", UnaryFunction::sqrt}, {"log", UnaryFunction::log},
    };
    for (const auto& [fname, fn] : kFunctions) {
      if (name == fname) {
        if (!accept('(')) throw ParseError("expected '(' after " + name, pos_);
        Expr arg = parse_expr();
        if (!accept(')')) throw ParseError("expected ')'", pos_);
        return Expr::call(fn, std::move(arg));
      }
    }
    if (name == "pi") return Expr::pi();
    const auto& vars = options_.variables;
    if (std::find(vars.begin(), vars.end(), name) == vars.end()) {
      throw ParseError("unknown identifier '" + name + "'", start);
    }
    if (variable_ && *variable_ != name) {
      throw ParseError("second variable '" + name + "' (expression already uses '" + *variable_ + "')", start);
    }
    variable_ = name;
    return Expr::variable(name);
  }

  std::string_view text_;
  const ParseOptions& options_;
  std::size_t pos_ = 0;
  std::optional<std::string> variable_;
};

}  // namespace

Expr parse(std::string_view text, const ParseOptions& options) { return Parser(text, options).parse_all(); }

// ---------------------------------------------------------------------------
// Differentiation

namespace {

bool is_int(const Expr& e, long v) {
  const auto iv = e.integer_value();
  return iv && *iv == v;
}

bool fits(long double v) {
  return v >= static_cast<long double>(std::numeric_limits<long>::min() / 2) &&
         v <= static_cast<long double>(std::numeric_limits<long>::max() / 2);
}

Expr mk_neg(Expr a) {
  if (is_int(a, 0)) return a;
  if (const auto* n = std::get_if<expr_node::Negate>(&a.node())) return *n->operand;
  return Expr::negate(std::move(a));
}

Expr mk_add(Expr a, Expr b) {
  if (is_int(a, 0)) return b;
  if (is_int(b, 0)) return a;
  const auto ia = a.integer_value();
  const auto ib = b.integer_value();
  if (ia && ib && fits(static_cast<long double>(*ia) + *ib)) return Expr::integer(*ia + *ib);
  return Expr::binary(BinaryOp::add, std::move(a), std::move(b));
}

Expr mk_sub(Expr a, Expr b) {
  if (is_int(b, 0)) return a;
  if (is_int(a, 0)) return mk_neg(std::move(b));
  const auto ia = a.integer_value();
  const auto ib = b.integer_value();
  if (ia && ib && fits(static_cast<long double>(*ia) - *ib)) return Expr::integer(*ia - *ib);
  return Expr::binary(BinaryOp::sub, std::move(a), std::move(b));
}

Expr mk_mul(Expr a, Expr b) {
  if (is_int(a, 0) || is_int(b, 0)) return Expr::integer(0);
  if (is_int(a, 1)) return b;
  if (is_int(b, 1)) return a;
  const auto ia = a.integer_value();
  const auto ib = b.integer_value();
  if (ia && ib && fits(static_cast<long double>(*ia) * *ib)) return Expr::integer(*ia * *ib);
  return Expr::binary(BinaryOp::mul, std::move(a), std::move(b));
}

Expr mk_div(Expr a, Expr b) {
  if (is_int(a, 0)) return a;
  if (is_int(b, 1)) return a;
  return Expr::binary(BinaryOp::div, std::move(a), std::move(b));
}

Expr mk_pow(Expr a, Expr b) {
  if (is_int(b, 0)) return Expr::integer(1);
  if (is_int(b, 1)) return a;
  return Expr::binary(BinaryOp::pow, std::move(a), std::move(b));
}

}  // namespace

Expr differentiate(const Expr& e, std::string_view var) {
  return std::visit(
      overloaded{
          [](const expr_node::Number&) { return Expr::integer(0); },
          [](const expr_node::Pi&) { return Expr::integer(0); },
          [&](const expr_node::Variable& v) { return Expr::integer(v.name == var ? 1 : 0); },
          [&](const expr_node::Negate& n) { return mk_neg(differentiate(*n.operand, var)); },
          [&](const expr_node::Binary& b) -> Expr {
            const Expr& u = *b.lhs;
            const Expr& v = *b.rhs;
            switch (b.op) {
              case BinaryOp::add: return mk_add(differentiate(u, var), differentiate(v, var));
              case BinaryOp::sub: return mk_sub(differentiate(u, var), differentiate(v, var));
              case BinaryOp::mul:
                return mk_add(mk_mul(differentiate(u, var), v), mk_mul(u, differentiate(v, var)));
              case BinaryOp::div:
                return mk_div(mk_sub(mk_mul(differentiate(u, var), v), mk_mul(u, differentiate(v, var))),
                              mk_pow(v, Expr::integer(2)));
              case BinaryOp::pow:
                if (!v.depends_on(var)) {
                  return mk_mul(mk_mul(v, mk_pow(u, mk_sub(v, Expr::integer(1)))), differentiate(u, var));
                }
                // d(u^v) = u^v (v' log u + v u' / u)
                return mk_mul(e, mk_add(mk_mul(differentiate(v, var), Expr::call(UnaryFunction::log, u)),
                                        mk_div(mk_mul(v, differentiate(u, var)), u)));
            }
            return Expr::integer(0);
          },
          [&](const expr_node::Call& c) -> Expr {
            const Expr& u = *c.arg;
            Expr du = differentiate(u, var);
            switch (c.fn) {
              case UnaryFunction::exp: return mk_mul(e, std::move(du));
              case UnaryFunction::sin: return mk_mul(Expr::call(UnaryFunction::cos, u), std::move(du));
              case UnaryFunction::cos:
                return mk_neg(mk_mul(Expr::call(UnaryFunction::sin, u), std::move(du)));
              case UnaryFunction::sqrt: return mk_div(std::move(du), mk_mul(Expr::integer(2), e));
              case UnaryFunction::log: return mk_div(std::move(du), u);
            }
            return Expr::integer(0);
          },
      },
      e.node());
}

MPReal eval(const Expr& e, const MPReal& x, Precision p) { return CompiledExpr(e, p)(x); }

MPComplex eval(const Expr& e, const MPComplex& z, Precision p) { return CompiledExpr(e, p)(z); }

}  // namespace ici

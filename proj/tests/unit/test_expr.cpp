#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "ici/compiled.hpp"
#include "ici/errors.hpp"
#include "ici/expr.hpp"
#include "testing.hpp"

namespace ici {
namespace {

MPReal at(const std::string& text, const std::string& x, int digits = 30) {
  const Precision p(digits);
  return eval(parse(text), MPReal(x, p), p);
}

TEST(Parse, Precedence) {
  EXPECT_EQ(at("2^3^2", "0"), MPReal(512L, Precision(30)));
  EXPECT_EQ(at("-x^2", "3"), MPReal(-9L, Precision(30)));
  EXPECT_EQ(at("2^-1", "0"), MPReal(0.5, Precision(30)));
  EXPECT_EQ(at("1-2-3", "0"), MPReal(-4L, Precision(30)));
  EXPECT_EQ(at("12/3/2", "0"), MPReal(2L, Precision(30)));
  EXPECT_EQ(at("x^3-2*x-5", "2"), MPReal(-1L, Precision(30)));
  EXPECT_EQ(at("(1+x)*(1-x)", "3"), MPReal(-8L, Precision(30)));
}

TEST(Parse, FunctionsAndPi) {
  const Precision p(40);
  EXPECT_LT(abs(at("sin(pi)", "0", 40)).to_double(), 1e-38);
  EXPECT_LT(abs(at("exp(log(x))", "2.5", 40) - MPReal("2.5", p)).to_double(), 1e-38);
  EXPECT_LT(abs(at("sqrt(x)^2 - x", "7", 40)).to_double(), 1e-38);
  EXPECT_LT(abs(at("cos(0)", "0", 40) - 1L).to_double(), 1e-38);
}

TEST(Parse, RenderRoundTrips) {
  for (const char* text : {"x^3-2*x-5", "(x^2+x)*exp(-x)-1/3", "z-0.083*sin(z)-1", "-x^-2^x", "sqrt(log(x))/pi",
                           "((x))", "1e-3*x+2.5E+2"}) {
    const Expr e = parse(text);
    EXPECT_EQ(parse(e.render()), e) << text << " -> " << e.render();
  }
}

TEST(Parse, LiteralsKeepTheirText) {
  const Expr e = parse("0.1");
  EXPECT_EQ(e.render(), "0.1");
  // 0.1 converted at 200 digits, not through a double.
  const Precision p(200);
  EXPECT_EQ(eval(e, MPReal(p), p) * 10L, MPReal(1L, p));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("x^"), ParseError);
  EXPECT_THROW(parse("(x"), ParseError);
  EXPECT_THROW(parse("x)"), ParseError);
  EXPECT_THROW(parse("2x"), ParseError);
  EXPECT_THROW(parse("tan(x)"), ParseError);
  EXPECT_THROW(parse("x+y"), ParseError);
  EXPECT_THROW(parse("x+z"), ParseError);
  EXPECT_THROW(parse("x $ 2"), ParseError);
}

TEST(Parse, ErrorOffsetPointsAtTheProblem) {
  try {
    parse("x + foo");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
}

TEST(Parse, CustomVariables) {
  ParseOptions opts;
  opts.variables = {"t"};
  EXPECT_NO_THROW(parse("t^2", opts));
  EXPECT_THROW(parse("x^2", opts), ParseError);
}

TEST(Expr, VariableQueries) {
  EXPECT_EQ(parse("z^3-1").variable_name(), "z");
  EXPECT_FALSE(parse("2+3").variable_name().has_value());
  EXPECT_TRUE(parse("sin(x)").depends_on("x"));
  EXPECT_FALSE(parse("sin(x)").depends_on("z"));
  EXPECT_EQ(parse("-4").integer_value(), -4);
  EXPECT_FALSE(parse("4.5").integer_value().has_value());
}

TEST(Differentiate, KnownDerivatives) {
  struct Case {
    const char* f;
    const char* df;
  };
  const std::vector<Case> cases = {
      {"x^3-2*x-5", "3*x^2-2"},
      {"(x^2+x)*exp(-x)-1/3", "(-x^2+x+1)*exp(-x)"},
      {"x-0.083*sin(x)-1", "1-0.083*cos(x)"},
      {"(x-2)^2", "2*(x-2)"},
      {"sqrt(x)", "1/(2*sqrt(x))"},
      {"log(x)", "1/x"},
      {"x^x", "x^x*(log(x)+1)"},
      {"2^x", "log(2)*2^x"},
      {"5", "0"},
  };
  const Precision p(50);
  for (const auto& c : cases) {
    const Expr d = differentiate(parse(c.f), "x");
    const Expr expected = parse(c.df);
    for (const char* x : {"0.7", "1.3", "2.9"}) {
      const MPReal got = eval(d, MPReal(x, p), p);
      const MPReal want = eval(expected, MPReal(x, p), p);
      EXPECT_LT(abs(got - want).to_double(), 1e-45) << c.f << " at " << x << ": " << d.render();
    }
  }
}

// Independent oracle: central differences at high precision.
TEST(Differentiate, AgreesWithFiniteDifferences) {
  const std::vector<const char*> functions = {
      "x^3-2*x-5", "(x^2+x)*exp(-x)-1/3", "sin(x)*cos(2*x)", "exp(sin(x))/(1+x^2)", "sqrt(1+x^4)-log(2+x)",
      "x^2.5", "(x-2)^2", "-x^-2", "pi*x^3/7"};
  const Precision p(120);
  const MPReal h("1e-35", p);
  testing::Rng rng(5);
  for (const char* text : functions) {
    const Expr f = parse(text);
    const Expr df = differentiate(f, "x");
    const CompiledExpr fc(f, p), dfc(df, p);
    for (int i = 0; i < 20; ++i) {
      const MPReal x = rng.uniform(0.2, 3.0, p);
      const MPReal fd = (fc(x + h) - fc(x - h)) / (h * 2L);
      const MPReal exact = dfc(x);
      EXPECT_LT(abs(fd - exact).to_double(), 1e-60 * (1.0 + abs(exact).to_double())) << text;
    }
  }
}

TEST(Differentiate, FoldsTrivialTerms) {
  EXPECT_EQ(differentiate(parse("x"), "x").render(), "1");
  EXPECT_EQ(differentiate(parse("7"), "x").render(), "0");
  EXPECT_EQ(differentiate(parse("3*x"), "x").integer_value(), 3);
}

TEST(Eval, ComplexMatchesReal) {
  const Precision p(40);
  const Expr f = parse("(x^2+x)*exp(-x)-1/3");
  const MPComplex z(MPReal("1.25", p), MPReal(p));
  const MPComplex w = eval(f, z, p);
  EXPECT_EQ(w.re(), eval(f, MPReal("1.25", p), p));
  EXPECT_TRUE(w.im().is_zero());
}

TEST(Eval, RealDomainErrorsGiveNan) {
  const Precision p(20);
  EXPECT_TRUE(at("sqrt(x)", "-1", 20).is_nan());
  EXPECT_TRUE(at("log(x)", "-1", 20).is_nan());
  EXPECT_TRUE(at("1/x", "0", 20).is_inf());
  // Complex mode takes the principal branch instead.
  const MPComplex s = eval(parse("sqrt(z)"), MPComplex(-4.0, 0.0, p), p);
  EXPECT_EQ(s, MPComplex(0.0, 2.0, p));
}

TEST(Compiled, IntegerPowersAreExact) {
  const Precision p(30);
  const CompiledExpr c(parse("x^10"), p);
  EXPECT_EQ(c(MPReal(-2L, p)), MPReal(1024L, p));
  EXPECT_EQ(c(MPComplex(0.0, 1.0, p)), MPComplex(-1.0, 0.0, p));
}

}  // namespace
}  // namespace ici

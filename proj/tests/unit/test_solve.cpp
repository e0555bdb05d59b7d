#include <gtest/gtest.h>

#include <stdexcept>

#include "ici/errors.hpp"
#include "ici/solve.hpp"
#include "testing.hpp"

namespace ici {
namespace {

SolveConfig config(int digits, Method m = Method::ici) {
  SolveConfig cfg{Precision(digits)};
  cfg.method = m;
  return cfg;
}

TEST(SolveConfig, Defaults) {
  const SolveConfig cfg(Precision(40));
  EXPECT_EQ(cfg.tol, pow(MPReal(10L, Precision(40)), -30L));
  EXPECT_EQ(cfg.dy_guard, pow(MPReal(10L, Precision(40)), -35L));
  EXPECT_EQ(cfg.max_iter, 50);
  EXPECT_EQ(cfg.method, Method::ici);
  EXPECT_TRUE(cfg.safeguards);
  EXPECT_FALSE(cfg.overflow_limit.has_value());
}

TEST(SolveConfig, Validation) {
  SolveConfig cfg(Precision(20));
  cfg.max_iter = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = SolveConfig(Precision(20));
  cfg.tol = MPReal(Precision(20));
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = SolveConfig(Precision(20));
  cfg.dfmin = MPReal(-1L, Precision(20));
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Names, RoundTrip) {
  for (Method m : {Method::newton, Method::secant, Method::ici, Method::ici_averaged})
    EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_EQ(parse_method("ici-averaged"), Method::ici_averaged);
  EXPECT_FALSE(parse_method("halley").has_value());
  EXPECT_EQ(parse_step_kind("safeguard_newton"), StepKind::safeguard_newton);
}

TEST(Solve, NewtonClassicWithBisectionOracle) {
  const Precision ref_p(100);
  const MPReal root = testing::bisect(
      [](const MPReal& x) { return x * x * x - x * 2L - 5L; }, MPReal(2L, ref_p), MPReal(3L, ref_p));
  const auto trace = solve_expr("x^3-2*x-5", MPReal(1L, Precision(40)), config(40));
  ASSERT_TRUE(trace.converged());
  EXPECT_GE(testing::agreement_digits(trace.last().x, root), 38.0);
  EXPECT_EQ(trace.records[0].kind, StepKind::seed);
  EXPECT_EQ(trace.records[1].kind, StepKind::newton);
  for (std::size_t n = 2; n < trace.records.size(); ++n) EXPECT_EQ(trace.records[n].kind, StepKind::ici);
}

TEST(Solve, OneEvaluationPairPerIterate) {
  const auto trace = solve_expr("x^3-2*x-5", MPReal(1L, Precision(40)), config(40));
  EXPECT_EQ(trace.f_evaluations, trace.records.size());
  EXPECT_EQ(trace.fp_evaluations, trace.records.size());
  for (std::size_t n = 0; n < trace.records.size(); ++n) EXPECT_EQ(trace.records[n].n, static_cast<int>(n));
}

TEST(Solve, LinearConvergesAtFirstStep) {
  const auto trace = solve_expr("x", MPReal(5L, Precision(20)), config(20));
  ASSERT_TRUE(trace.converged());
  EXPECT_EQ(trace.last().n, 1);
  EXPECT_TRUE(trace.last().x.is_zero());
}

TEST(Solve, StartingAtRootStopsImmediately) {
  const auto trace = solve_expr("x^2-4", MPReal(2L, Precision(20)), config(20));
  ASSERT_TRUE(trace.converged());
  EXPECT_EQ(trace.records.size(), 1u);
}

TEST(Solve, ZeroDerivativeIsDegenerate) {
  const auto trace = solve_expr("x^2+1", MPReal(0L, Precision(20)), config(20));
  EXPECT_EQ(trace.status, SolveStatus::degenerate);
}

TEST(Solve, NanResidualStops) {
  const auto trace = solve_expr("log(x)", MPReal(-1L, Precision(20)), config(20));
  EXPECT_EQ(trace.status, SolveStatus::nan);
  EXPECT_EQ(trace.records.size(), 1u);
}

TEST(Solve, MaxIterStatus) {
  SolveConfig cfg = config(30);
  cfg.max_iter = 3;
  const auto trace = solve_expr("(x^2+x)*exp(-x)-1/3", MPReal(2L, Precision(30)), cfg);
  EXPECT_EQ(trace.status, SolveStatus::max_iter);
  EXPECT_EQ(trace.last().n, 3);
}

TEST(Solve, OverflowLimitMarksNan) {
  SolveConfig cfg = config(20);
  cfg.overflow_limit = MPReal(1e3, Precision(20));
  // Newton from near the critical point shoots far away.
  const auto trace = solve_expr("x^2-1", MPReal("1e-6", Precision(20)), cfg);
  EXPECT_EQ(trace.status, SolveStatus::nan);
}

TEST(Solve, EqualResidualsUseSafeguardOrStop) {
  const Precision p(30);
  // Constant residual: y_1 == y_0 after the Newton step.
  auto c = [](const MPReal& x) { return x * 0L + 1L; };
  auto cp = [](const MPReal& x) { return x * 0L + 1L; };
  SolveConfig cfg = config(30);
  cfg.max_iter = 4;
  const auto guarded = solve<MPReal>(c, cp, MPReal(0L, p), cfg);
  ASSERT_GE(guarded.records.size(), 3u);
  EXPECT_EQ(guarded.records[2].kind, StepKind::safeguard_newton);
  EXPECT_EQ(guarded.status, SolveStatus::max_iter);

  cfg.safeguards = false;
  const auto raw = solve<MPReal>(c, cp, MPReal(0L, p), cfg);
  EXPECT_EQ(raw.status, SolveStatus::degenerate);
  EXPECT_EQ(raw.records.size(), 2u);
}

TEST(Solve, MethodsAllConvergeOnSimpleRoot) {
  const Precision ref_p(60);
  const MPReal root = sqrt(MPReal(2L, ref_p));
  for (Method m : {Method::newton, Method::secant, Method::ici, Method::ici_averaged}) {
    const auto trace = solve_expr("x^2-2", MPReal("1.5", Precision(50)), config(50, m));
    ASSERT_TRUE(trace.converged()) << to_string(m);
    EXPECT_GE(testing::agreement_digits(trace.last().x, root), 39.0) << to_string(m);
  }
}

TEST(Solve, IciNeedsNoMoreIterationsThanNewton) {
  SolveConfig ici = config(60, Method::ici);
  SolveConfig newton = config(60, Method::newton);
  ici.tol = newton.tol = MPReal("1e-30", Precision(60));
  const auto a = solve_expr("x^3-2*x-5", MPReal(2L, Precision(60)), ici);
  const auto b = solve_expr("x^3-2*x-5", MPReal(2L, Precision(60)), newton);
  ASSERT_TRUE(a.converged());
  ASSERT_TRUE(b.converged());
  EXPECT_LE(a.last().n, b.last().n);
}

TEST(Solve, ComplexRoot) {
  const Precision p(40);
  const auto trace = solve_expr("z^2+1", MPComplex(0.3, 0.8, p), config(40));
  ASSERT_TRUE(trace.converged());
  EXPECT_LT(abs(trace.last().x - MPComplex(0.0, 1.0, p)).to_double(), 1e-29);
}

TEST(Solve, ParseErrorPropagates) {
  EXPECT_THROW(solve_expr("x^", MPReal(1L, Precision(20)), config(20)), ParseError);
}

TEST(Solve, ResidualMagnitudes) {
  const auto trace = solve_expr("x-3", MPReal(-1L, Precision(20)), config(20));
  const auto r = trace.residual_magnitudes();
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0], MPReal(4L, Precision(20)));
}

}  // namespace
}  // namespace ici

#include "ici/solve.hpp"

#include <stdexcept>

#include "ici/compiled.hpp"
#include "ici/errors.hpp"
#include "ici/expr.hpp"
#include "ici/kernel.hpp"

namespace ici {

namespace {

MPReal power_of_ten(long e, Precision p) { return pow(MPReal(10L, p), e); }

bool finite(const MPReal& v) { return v.is_finite(); }
bool finite(const MPComplex& v) { return v.is_finite(); }

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::newton: return "newton";
    case Method::secant: return "secant";
    case Method::ici: return "ici";
    case Method::ici_averaged: return "ici_averaged";
  }
  return "?";
}

std::string_view to_string(StepKind k) {
  switch (k) {
    case StepKind::seed: return "seed";
    case StepKind::newton: return "newton";
    case StepKind::secant: return "secant";
    case StepKind::ici: return "ici";
    case StepKind::ici_averaged: return "ici_averaged";
    case StepKind::safeguard_newton: return "safeguard_newton";
  }
  return "?";
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::degenerate: return "degenerate";
    case SolveStatus::nan: return "nan";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::newton, Method::secant, Method::ici, Method::ici_averaged}) {
    if (name == to_string(m)) return m;
  }
  if (name == "ici-averaged") return Method::ici_averaged;
  return std::nullopt;
}

std::optional<StepKind> parse_step_kind(std::string_view name) {
  for (StepKind k : {StepKind::seed, StepKind::newton, StepKind::secant, StepKind::ici, StepKind::ici_averaged,
                     StepKind::safeguard_newton}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

SolveConfig::SolveConfig(Precision p)
    : precision(p),
      tol(power_of_ten(10L - p.digits(), p)),
      max_iter(50),
      method(Method::ici),
      dy_guard(power_of_ten(5L - p.digits(), p)),
      dfmin(power_of_ten(5L - p.digits(), p)) {}

void SolveConfig::validate() const {
  if (!(tol > MPReal(precision))) throw std::invalid_argument("tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  if (dy_guard.is_nan() || dy_guard.sign() < 0) throw std::invalid_argument("dy_guard must be non-negative");
  if (dfmin.is_nan() || dfmin.sign() < 0) throw std::invalid_argument("dfmin must be non-negative");
}

template <class T>
std::vector<MPReal> IterationTrace<T>::residual_magnitudes() const {
  std::vector<MPReal> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(magnitude(r.y));
  return out;
}

template <class T>
IterationTrace<T> solve(const ScalarFunction<T>& f, const ScalarFunction<T>& fp, const T& x0,
                        const SolveConfig& cfg) {
  cfg.validate();
  IterationTrace<T> trace;

  auto evaluate = [&](int n, T x, StepKind kind) {
    T y = f(x);
    ++trace.f_evaluations;
    T yp = fp(x);
    ++trace.fp_evaluations;
    trace.records.push_back({n, std::move(x), std::move(y), std::move(yp), kind});
  };

  auto unusable = [&](const IterationRecord<T>& r) {
    if (!finite(r.x) || !finite(r.y) || !finite(r.yp)) return true;
    if (cfg.overflow_limit) {
      const MPReal& lim = *cfg.overflow_limit;
      return magnitude(r.x) > lim || magnitude(r.y) > lim || magnitude(r.yp) > lim;
    }
    return false;
  };

  auto derivative_vanishes = [&](const IterationRecord<T>& r) {
    return is_zero(r.yp) || magnitude(r.yp) < cfg.dfmin;
  };

  evaluate(0, x0, StepKind::seed);

  for (;;) {
    const IterationRecord<T>& cur = trace.records.back();
    if (unusable(cur)) {
      trace.status = SolveStatus::nan;
      return trace;
    }
    if (magnitude(cur.y) <= cfg.tol) {
      trace.status = SolveStatus::converged;
      return trace;
    }
    if (cur.n >= cfg.max_iter) {
      trace.status = SolveStatus::max_iter;
      return trace;
    }

    const PointSample<T> here{cur.x, cur.y, cur.yp};
    const bool one_point = cfg.method == Method::newton || trace.records.size() == 1;

    StepKind kind = StepKind::newton;
    if (!one_point) {
      const IterationRecord<T>& prev = trace.records[trace.records.size() - 2];
      const MPReal dy = magnitude(cur.y - prev.y);
      const bool stagnant = dy.is_zero() || dy < cfg.dy_guard * max(magnitude(cur.y), magnitude(prev.y));
      if (stagnant) {
        kind = StepKind::safeguard_newton;
      } else if (cfg.method == Method::secant) {
        kind = StepKind::secant;
      } else if (derivative_vanishes(prev)) {
        kind = StepKind::safeguard_newton;
      } else {
        kind = cfg.method == Method::ici_averaged ? StepKind::ici_averaged : StepKind::ici;
      }
    }
    if (kind == StepKind::safeguard_newton && !cfg.safeguards) {
      trace.status = SolveStatus::degenerate;
      return trace;
    }
    if (kind != StepKind::secant && derivative_vanishes(cur)) {
      trace.status = SolveStatus::degenerate;
      return trace;
    }

    T next = cur.x;
    try {
      const IterationRecord<T>& prev = trace.records.size() > 1 ? trace.records[trace.records.size() - 2] : cur;
      const PointSample<T> before{prev.x, prev.y, prev.yp};
      switch (kind) {
        case StepKind::newton:
        case StepKind::safeguard_newton: next = newton_step(here); break;
        case StepKind::secant: next = secant_step(before, here); break;
        case StepKind::ici: next = ici_step(before, here); break;
        case StepKind::ici_averaged: next = ici_step_averaged(before, here); break;
        case StepKind::seed: break;
      }
    } catch (const DegenerateStepError&) {
      trace.status = SolveStatus::degenerate;
      return trace;
    }
    evaluate(cur.n + 1, std::move(next), kind);
  }
}

template struct IterationTrace<MPReal>;
template struct IterationTrace<MPComplex>;
template IterationTrace<MPReal> solve(const ScalarFunction<MPReal>&, const ScalarFunction<MPReal>&, const MPReal&,
                                      const SolveConfig&);
template IterationTrace<MPComplex> solve(const ScalarFunction<MPComplex>&, const ScalarFunction<MPComplex>&,
                                         const MPComplex&, const SolveConfig&);

namespace {

template <class T>
IterationTrace<T> solve_text(std::string_view ftext, const T& x0, const SolveConfig& cfg) {
  const Expr f = parse(ftext);
  const std::string var = f.variable_name().value_or("x");
  const Expr fp = differentiate(f, var);
  const CompiledExpr fc(f, cfg.precision);
  const CompiledExpr fpc(fp, cfg.precision);
  return solve<T>([&fc](const T& x) { return fc(x); }, [&fpc](const T& x) { return fpc(x); }, x0, cfg);
}

}  // namespace

IterationTrace<MPReal> solve_expr(std::string_view ftext, const MPReal& x0, const SolveConfig& cfg) {
  return solve_text(ftext, x0, cfg);
}

IterationTrace<MPComplex> solve_expr(std::string_view ftext, const MPComplex& x0, const SolveConfig& cfg) {
  return solve_text(ftext, x0, cfg);
}

}  // namespace ici

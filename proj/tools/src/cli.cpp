#include "ici/cli.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <span>
#include <type_traits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <variant>

#include "CLI11.hpp"
#include "ici/basins.hpp"
#include "ici/diagnostics.hpp"
#include "ici/errors.hpp"
#include "ici/expr.hpp"
#include "ici/mpcomplex.hpp"
#include "ici/solve.hpp"
#include "ici/trace_io.hpp"

namespace ici::cli {

namespace {

// Orders below this on a trace's tail trigger the slow-convergence warning.
constexpr double kSlowOrder = 1.3;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SolveArgs {
  std::string f;
  std::string x0;
  int digits = 50;
  std::string tol;
  int max_iter = 50;
  std::string method = "ici";
  std::string out;
  std::string format = "csv";
  bool complex = false;
  bool no_safeguards = false;
};

struct OrderArgs {
  SolveArgs solve;
  std::string trace;
  std::string plot_data;
  std::string root;
};

struct BasinArgs {
  std::string f;
  std::vector<double> re{-2.0, 2.0};
  std::vector<double> im{-2.0, 2.0};
  int size = 0;
  int width = 200;
  int height = 200;
  int max_iter = 13;
  double tol = 1e-8;
  int digits = 34;
  std::string method = "ici";
  unsigned workers = 0;
  std::string out = "basin.ppm";
  std::string csv;
  bool safeguards = false;
  double overflow_limit = std::numeric_limits<double>::max();
};

struct ScanArgs {
  BasinArgs basin;
  std::string from;
  std::string to;
  int samples = 400;
};

template <class T>
using Trace = IterationTrace<T>;

Precision precision_arg(int digits) {
  try {
    return Precision(digits);
  } catch (const std::invalid_argument&) {
    throw UsageError(fmt::format("--digits: must be at least {}", Precision::kMinDigits));
  }
}

Method method_arg(const std::string& name) {
  const auto m = parse_method(name);
  if (!m) throw UsageError("--method: expected newton, secant, ici or ici_averaged, got '" + name + "'");
  return *m;
}

SolveConfig config_from(const SolveArgs& a) {
  const Precision p = precision_arg(a.digits);
  SolveConfig cfg(p);
  if (!a.tol.empty()) {
    try {
      cfg.tol = MPReal(a.tol, p);
    } catch (const ParseError&) {
      throw UsageError("--tol: not a number: '" + a.tol + "'");
    }
    if (!(cfg.tol > MPReal(p))) throw UsageError("--tol: must be positive");
  }
  if (a.max_iter < 1) throw UsageError("--max-iter: must be at least 1");
  cfg.max_iter = a.max_iter;
  cfg.method = method_arg(a.method);
  cfg.safeguards = !a.no_safeguards;
  return cfg;
}

using AnyStart = std::variant<MPReal, MPComplex>;

AnyStart start_arg(const SolveArgs& a, Precision p) {
  if (a.x0.empty()) throw UsageError("--x0: required");
  try {
    if (a.complex || has_imaginary_part(a.x0)) return parse_complex(a.x0, p);
    return MPReal(a.x0, p);
  } catch (const ParseError&) {
    throw UsageError("--x0: not a real or complex literal: '" + a.x0 + "'");
  }
}

void require_function(const std::string& f) {
  if (f.empty()) throw UsageError("--f: required");
}

template <class T>
Trace<T> run_solver(const std::string& f, const T& x0, const SolveConfig& cfg) {
  try {
    return solve_expr(f, x0, cfg);
  } catch (const ParseError& e) {
    throw UsageError(std::string("--f: ") + e.what());
  }
}

RunMetadata metadata(const SolveArgs& a, const SolveConfig& cfg) {
  return {a.f, a.x0, a.digits, cfg.tol.to_string(6), std::string(to_string(cfg.method))};
}

std::string log10_text(const MPReal& magnitude) {
  if (magnitude.is_zero()) return "-inf";
  return log10_abs(magnitude).to_string(6);
}

std::string show(const MPReal& v, int digits) { return v.to_string(digits); }
std::string show(const MPComplex& v, int digits) { return v.to_string(digits); }

std::ofstream open_output(const std::string& path, const char* flag) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError(fmt::format("{}: cannot open '{}' for writing", flag, path));
  return file;
}

void check_format(const std::string& format) {
  if (format != "csv" && format != "text") throw UsageError("--format: expected csv or text, got '" + format + "'");
}

template <class T>
void print_trace_table(std::ostream& out, const Trace<T>& trace) {
  fmt::print(out, "{:>4}  {:<16}  {:>14}  {}\n", "n", "step", "log10|y|", "x");
  for (const auto& r : trace.records) {
    fmt::print(out, "{:>4}  {:<16}  {:>14}  {}\n", r.n, to_string(r.kind), log10_text(magnitude(r.y)), show(r.x, 24));
  }
}

template <class T>
void warn_if_slow(std::ostream& err, const Trace<T>& trace) {
  const auto residuals = trace.residual_magnitudes();
  const auto orders = order_estimate(residuals);
  if (orders.size() < 2) return;
  const double tail = orders.back().value.to_double();
  if (tail < kSlowOrder) {
    fmt::print(err,
               "warning: slow convergence (order estimate {:.3f} at n={}); the root may be multiple or the start "
               "far away\n",
               tail, orders.back().k);
  }
}

template <class T>
int finish_solve(const SolveArgs& a, const SolveConfig& cfg, const Trace<T>& trace, std::ostream& out,
                 std::ostream& err) {
  print_trace_table(out, trace);
  const auto& last = trace.last();
  fmt::print(out, "status: {}\n", to_string(trace.status));
  fmt::print(out, "iterations: {}\n", last.n);
  fmt::print(out, "evaluations: f={} f'={}\n", trace.f_evaluations, trace.fp_evaluations);
  fmt::print(out, "root: {}\n", show(last.x, a.digits));
  fmt::print(out, "residual: {}\n", show(last.y, 10));
  warn_if_slow(err, trace);
  if (!a.out.empty()) {
    auto file = open_output(a.out, "--out");
    if (a.format == "text") {
      write_trace_text(file, trace, metadata(a, cfg));
    } else {
      write_trace_csv(file, trace);
    }
  }
  return trace.converged() ? kExitOk : kExitNotConverged;
}

int run_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  require_function(a.f);
  check_format(a.format);
  const SolveConfig cfg = config_from(a);
  const AnyStart x0 = start_arg(a, cfg.precision);
  return std::visit(
      [&](const auto& start) { return finish_solve(a, cfg, run_solver(a.f, start, cfg), out, err); }, x0);
}

void print_report(std::ostream& out, const ConvergenceReport& report) {
  std::map<int, std::string> ratio, order, forward;
  for (const auto& r : report.ratios) ratio[r.k] = r.value.to_string(8);
  for (const auto& r : report.order_estimates) order[r.k] = r.value.to_string(6);
  for (const auto& r : report.forward_digits) forward[r.k] = r.value.to_string(6);
  const bool with_forward = !report.forward_digits.empty();
  fmt::print(out, "{:>4}  {:>14}  {:>14}  {:>10}{}\n", "k", "log10|y|", "ratio", "order",
             with_forward ? fmt::format("  {:>12}", "fwd digits") : "");
  for (const auto& d : report.digits_per_step) {
    const std::string log10y = d.value.is_inf() ? "-inf" : (-d.value).to_string(6);
    fmt::print(out, "{:>4}  {:>14}  {:>14}  {:>10}{}\n", d.k, log10y, ratio[d.k], order[d.k],
               with_forward ? fmt::format("  {:>12}", forward[d.k]) : "");
  }
  if (report.fitted_constant) fmt::print(out, "fitted constant: {}\n", report.fitted_constant->to_string(8));
  if (report.predicted_next) fmt::print(out, "predicted next |y|: {}\n", report.predicted_next->to_string(8));
  if (report.fit_misfit_log10)
    fmt::print(out, "fit misfit (log10): {}\n", report.fit_misfit_log10->to_string(4));
}

void emit_report(const OrderArgs& a, const RunMetadata& meta, const ConvergenceReport& report,
                 std::span<const MPReal> residuals, std::ostream& out) {
  print_report(out, report);
  if (!a.solve.out.empty()) {
    auto file = open_output(a.solve.out, "--out");
    if (a.solve.format == "text") {
      write_report_text(file, report, meta);
    } else {
      write_report_csv(file, report);
    }
  }
  if (!a.plot_data.empty()) {
    auto file = open_output(a.plot_data, "--plot-data");
    write_plot_data(file, residuals);
  }
}

int run_order(const OrderArgs& a, std::ostream& out, std::ostream& err) {
  check_format(a.solve.format);
  if (!a.trace.empty()) {
    const Precision p = precision_arg(a.solve.digits);
    std::ifstream in(a.trace);
    if (!in) throw UsageError("--trace: cannot open '" + a.trace + "'");
    std::vector<MPReal> residuals;
    try {
      residuals = read_residuals_csv(in, p);
    } catch (const Error& e) {
      throw UsageError(std::string("--trace: ") + e.what());
    }
    RunMetadata meta{a.trace, "", a.solve.digits, "", "trace"};
    emit_report(a, meta, analyze(residuals), residuals, out);
    return kExitOk;
  }

  require_function(a.solve.f);
  const SolveConfig cfg = config_from(a.solve);
  const AnyStart x0 = start_arg(a.solve, cfg.precision);
  return std::visit(
      [&](const auto& start) {
        using T = std::decay_t<decltype(start)>;
        const auto trace = run_solver(a.solve.f, start, cfg);
        ConvergenceReport report;
        if constexpr (std::is_same_v<T, MPReal>) {
          std::optional<MPReal> root;
          if (!a.root.empty()) {
            try {
              root = MPReal(a.root, cfg.precision);
            } catch (const ParseError&) {
              throw UsageError("--root: not a number: '" + a.root + "'");
            }
          }
          report = analyze(trace, root);
        } else {
          if (!a.root.empty()) throw UsageError("--root: only supported for real starts");
          report = analyze(trace);
        }
        fmt::print(out, "status: {} after {} iterations\n", to_string(trace.status), trace.last().n);
        const auto residuals = trace.residual_magnitudes();
        emit_report(a, metadata(a.solve, cfg), report, residuals, out);
        warn_if_slow(err, trace);
        return trace.converged() ? kExitOk : kExitNotConverged;
      },
      x0);
}

int run_compare(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  require_function(a.f);
  const SolveConfig base = config_from(a);
  const AnyStart x0 = start_arg(a, base.precision);
  fmt::print(out, "{:<8}  {:<10}  {:>10}  {:>7}  {:>7}  {:>14}\n", "method", "status", "iterations", "f", "f'",
             "log10|y|");
  bool any_converged = false;
  for (Method m : {Method::newton, Method::ici, Method::secant}) {
    SolveConfig cfg = base;
    cfg.method = m;
    std::visit(
        [&](const auto& start) {
          const auto trace = run_solver(a.f, start, cfg);
          any_converged = any_converged || trace.converged();
          fmt::print(out, "{:<8}  {:<10}  {:>10}  {:>7}  {:>7}  {:>14}\n", to_string(m), to_string(trace.status),
                     trace.last().n, trace.f_evaluations, trace.fp_evaluations,
                     log10_text(magnitude(trace.last().y)));
        },
        x0);
  }
  (void)err;
  return any_converged ? kExitOk : kExitNotConverged;
}

BasinSpec basin_spec(const BasinArgs& a) {
  require_function(a.f);
  BasinSpec spec;
  spec.function = a.f;
  spec.re_min = a.re[0];
  spec.re_max = a.re[1];
  spec.im_min = a.im[0];
  spec.im_max = a.im[1];
  spec.width = a.size > 0 ? a.size : a.width;
  spec.height = a.size > 0 ? a.size : a.height;
  spec.max_iter = a.max_iter;
  spec.tol = a.tol;
  spec.digits = a.digits;
  spec.method = method_arg(a.method);
  spec.workers = a.workers;
  spec.safeguards = a.safeguards;
  spec.overflow_limit = a.overflow_limit;
  precision_arg(a.digits);
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  try {
    parse(spec.function);
  } catch (const ParseError& e) {
    throw UsageError(std::string("--f: ") + e.what());
  }
  return spec;
}

int run_basin(const BasinArgs& a, std::ostream& out) {
  const BasinSpec spec = basin_spec(a);
  const BasinRaster raster = render(spec);
  try {
    write_image(raster, a.out);
  } catch (const Error& e) {
    throw UsageError(std::string("--out: ") + e.what());
  }
  if (!a.csv.empty()) {
    auto file = open_output(a.csv, "--csv");
    write_csv(file, raster);
  }
  std::size_t converged = 0, nan = 0;
  for (const auto& px : raster.pixels) {
    converged += px.converged ? 1 : 0;
    nan += px.nan ? 1 : 0;
  }
  fmt::print(out, "image: {} ({}x{})\n", a.out, spec.width, spec.height);
  fmt::print(out, "pixels: {} converged: {} nan: {}\n", raster.pixels.size(), converged, nan);
  return kExitOk;
}

int run_scan(const ScanArgs& a, std::ostream& out) {
  BasinArgs relaxed = a.basin;
  relaxed.size = 1;
  const BasinSpec spec = basin_spec(relaxed);
  const Precision p = precision_arg(spec.digits);
  auto endpoint = [&](const std::string& text, const char* flag) {
    if (text.empty()) throw UsageError(std::string(flag) + ": required");
    try {
      return parse_complex(text, p);
    } catch (const ParseError&) {
      throw UsageError(std::string(flag) + ": not a complex literal: '" + text + "'");
    }
  };
  if (a.samples < 1) throw UsageError("--samples: must be at least 1");
  const LineScan scan = line_scan(spec, endpoint(a.from, "--from"), endpoint(a.to, "--to"), a.samples);

  for (std::size_t r = 0; r < scan.roots.size(); ++r) fmt::print(out, "root {}: {}\n", r, scan.roots[r].to_string(12));
  fmt::print(out, "{:>6}  {:>10}\n", "sample", "root");
  for (std::size_t k = 0; k < scan.assignment.size(); ++k) {
    const int id = scan.assignment[k];
    const std::string label = id == LineScan::kNan ? "nan" : id == LineScan::kUnassigned ? "none" : std::to_string(id);
    fmt::print(out, "{:>6}  {:>10}\n", k, label);
  }
  fmt::print(out, "changes: {}\n", scan.changes());
  return kExitOk;
}

void add_solve_flags(CLI::App* app, SolveArgs& a) {
  app->add_option("--f", a.f, "function of x (or z), e.g. \"x^3-2*x-5\"");
  app->add_option("--x0", a.x0, "initial guess; a literal with an imaginary part selects complex mode");
  app->add_option("--digits", a.digits, "working precision in decimal digits")->capture_default_str();
  app->add_option("--tol", a.tol, "stop when |f(x)| <= tol (default 10^(10-digits))");
  app->add_option("--max-iter", a.max_iter, "maximum steps after the initial guess")->capture_default_str();
  app->add_option("--method", a.method, "newton, secant, ici or ici_averaged")->capture_default_str();
  app->add_option("--out", a.out, "write the trace (or report) to this file");
  app->add_option("--format", a.format, "output file format: csv or text")->capture_default_str();
  app->add_flag("--complex", a.complex, "force complex arithmetic");
  app->add_flag("--no-safeguards", a.no_safeguards, "stop on degenerate steps instead of falling back to Newton");
}

void add_basin_flags(CLI::App* app, BasinArgs& a) {
  app->add_option("--f", a.f, "function of z, e.g. \"z^3-1\"");
  app->add_option("--re", a.re, "real range: min max")->expected(2);
  app->add_option("--im", a.im, "imaginary range: min max")->expected(2);
  app->add_option("--max-iter", a.max_iter, "iterations per pixel")->capture_default_str();
  app->add_option("--tol", a.tol, "convergence tolerance on |f(z)|")->capture_default_str();
  app->add_option("--digits", a.digits, "working precision in decimal digits")->capture_default_str();
  app->add_option("--method", a.method, "newton, secant, ici or ici_averaged")->capture_default_str();
  app->add_flag("--safeguards", a.safeguards, "take Newton steps on degenerate pixels instead of marking NaN");
  app->add_option("--overflow-limit", a.overflow_limit, "magnitudes above this mark a pixel NaN");
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  try {
    args = expand_arguments(raw_args);
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  }

  CLI::App app{"Root finding by inverse cubic iteration", "ici"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.add_option("--preset", "named flag set: newton-classic, exp-1000, kepler-basin, cube-roots");
  app.add_option("--config", "JSON file whose keys are flag names");

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "solve f(x) = 0 and print the iteration trace");
  add_solve_flags(solve_cmd, solve_args);

  OrderArgs order_args;
  auto* order_cmd = app.add_subcommand("order", "convergence diagnostics for a fresh solve or a residual file");
  add_solve_flags(order_cmd, order_args.solve);
  order_cmd->add_option("--trace", order_args.trace, "analyze residuals from this CSV instead of solving");
  order_cmd->add_option("--plot-data", order_args.plot_data, "write k,log10|y_k| to this CSV");
  order_cmd->add_option("--root", order_args.root, "reference root for forward-error digits");

  SolveArgs compare_args;
  auto* compare_cmd = app.add_subcommand("compare", "run newton, ici and secant on the same problem");
  add_solve_flags(compare_cmd, compare_args);

  BasinArgs basin_args;
  auto* basin_cmd = app.add_subcommand("basin", "render basins of attraction to a PPM image");
  add_basin_flags(basin_cmd, basin_args);
  basin_cmd->add_option("--size", basin_args.size, "square image side in pixels (overrides width/height)");
  basin_cmd->add_option("--width", basin_args.width, "image width")->capture_default_str();
  basin_cmd->add_option("--height", basin_args.height, "image height")->capture_default_str();
  basin_cmd->add_option("--workers", basin_args.workers, "render threads (0 = hardware concurrency)");
  basin_cmd->add_option("--out", basin_args.out, "PPM output path")->capture_default_str();
  basin_cmd->add_option("--csv", basin_args.csv, "also dump per-pixel data as CSV");

  ScanArgs scan_args;
  auto* scan_cmd = app.add_subcommand("scan", "assign roots along a segment of starting points");
  add_basin_flags(scan_cmd, scan_args.basin);
  scan_cmd->add_option("--from", scan_args.from, "segment start (complex literal)");
  scan_cmd->add_option("--to", scan_args.to, "segment end (complex literal)");
  scan_cmd->add_option("--samples", scan_args.samples, "number of samples")->capture_default_str();

  for (auto* sub : app.get_subcommands({})) {
    for (auto* opt : sub->get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve_args, out, err);
    if (*order_cmd) return run_order(order_args, out, err);
    if (*compare_cmd) return run_compare(compare_args, out, err);
    if (*basin_cmd) return run_basin(basin_args, out);
    if (*scan_cmd) return run_scan(scan_args, out);
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ici::cli

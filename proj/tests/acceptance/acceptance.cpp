// Acceptance suite. Prints one PASS/FAIL line per criterion, followed by
// indented detail lines. Arguments select criteria by id (A1 ... A9); no
// arguments runs all of them. Exit status is nonzero when any selected
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ici/basins.hpp"
#include "ici/compiled.hpp"
#include "ici/diagnostics.hpp"
#include "ici/expr.hpp"
#include "ici/kernel.hpp"
#include "ici/solve.hpp"
#include "testing.hpp"

namespace {

using namespace ici;
using ici::testing::Rng;

struct Outcome {
  bool pass = true;
  std::vector<std::string> lines;

  void check(bool ok, std::string what) {
    pass = pass && ok;
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + std::move(what));
  }
  void note(std::string what) { lines.push_back("info " + std::move(what)); }
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

constexpr const char* kExp = "(x^2+x)*exp(-x)-1/3";

IterationTrace<MPReal> exp_trace(int digits, int steps, Method m) {
  const Precision p(digits);
  SolveConfig cfg(p);
  cfg.max_iter = steps;
  cfg.method = m;
  return solve_expr(kExp, MPReal(2L, p), cfg);
}

double log10_residual(const IterationTrace<MPReal>& t, std::size_t k) {
  return log10_abs(t.records.at(k).y).to_double();
}

bool sig_figs_match(double got, double want, int figures) {
  return std::abs(got - want) <= 0.5 * std::pow(10.0, 1 - figures) * std::abs(want);
}

// ---------------------------------------------------------------------------

Outcome a1() {
  Outcome o;
  Stopwatch clock;
  const Precision p(40);
  const auto trace = solve_expr("x^3-2*x-5", MPReal(1L, p), SolveConfig(p));
  const double elapsed = clock.seconds();

  const Precision ref_p(100);
  const MPReal root = ici::testing::bisect([](const MPReal& x) { return x * x * x - x * 2L - 5L; },
                                           MPReal(2L, ref_p), MPReal(3L, ref_p));
  auto forward = [&](std::size_t k) {
    return k < trace.records.size() ? ici::testing::agreement_digits(trace.records[k].x, root) : 0.0;
  };
  // x_1 is the Newton start-up step; ICI iterations are counted from there,
  // so "after n iterations" is trace index n + 1.
  o.note(fmt("forward digits by trace index: x6 %.2f, x7 %.2f, x8 %.2f", forward(6), forward(7), forward(8)));
  o.check(forward(7) >= 10 - 1, fmt("after 6 ICI iterations (x7): %.2f digits, need >= 10 (+-1)", forward(7)));
  o.check(forward(8) >= 29 - 1, fmt("after 7 ICI iterations (x8): %.2f digits, need >= 29 (+-1)", forward(8)));
  o.check(elapsed < 1.0, fmt("runtime %.3f s < 1 s", elapsed));
  return o;
}

Outcome a2() {
  Outcome o;
  Stopwatch clock;
  const auto ici = exp_trace(1000, 8, Method::ici);
  const auto newton = exp_trace(1000, 8, Method::newton);
  const double elapsed = clock.seconds();
  const double yi = log10_residual(ici, 8);
  const double yn = log10_residual(newton, 8);
  o.check(std::abs(yi - -594) <= 2, fmt("ICI log10|y8| = %.2f, want -594 +- 2", yi));
  o.check(newton.f_evaluations == ici.f_evaluations && newton.fp_evaluations == ici.fp_evaluations,
          fmt("equal budgets: %zu f and %zu f' evaluations each", ici.f_evaluations, ici.fp_evaluations));
  o.check(std::abs(yn - -63) <= 2, fmt("Newton log10|y8| = %.2f, want -63 +- 2", yn));
  o.check(elapsed < 30.0, fmt("runtime %.3f s < 30 s", elapsed));
  return o;
}

Outcome a3() {
  Outcome o;
  const auto trace = exp_trace(1000, 8, Method::ici);
  const auto residuals = trace.residual_magnitudes();
  const auto ratios = ratio_sequence(residuals);
  const std::map<int, double> expected = {{2, 1.5952}, {3, 17.048}, {4, 4.5955}, {5, 4.9061},
                                          {6, 4.9080}, {7, 4.9081}, {8, 4.9080}};
  std::map<int, double> got;
  for (const auto& r : ratios) got[r.k] = r.value.to_double();
  for (const auto& [k, want] : expected) {
    const bool present = got.count(k) != 0;
    const double v = present ? got[k] : std::nan("");
    o.check(present && sig_figs_match(v, want, 4), fmt("ratio k=%d: %.6f vs %.5g (4 significant figures)", k, v, want));
  }
  const double c = fit_constant(residuals).to_double();
  o.check(std::abs(c - 0.6437) <= 0.0001, fmt("fitted constant %.6f, want 0.6437 +- 0.0001", c));
  return o;
}

Outcome a4() {
  Outcome o;
  const auto predicted = predict_next(exp_trace(1000, 8, Method::ici).residual_magnitudes());
  o.note("prediction from the 1000-digit run: " + predicted.to_string(6));

  Stopwatch clock;
  const auto trace = exp_trace(1624, 9, Method::ici);
  const double elapsed = clock.seconds();
  if (trace.records.size() < 10) {
    o.check(false, fmt("run stopped after %zu records", trace.records.size()));
    return o;
  }
  const MPReal y9 = abs(trace.records[9].y);
  const long exponent = static_cast<long>(std::floor(log10(y9).to_double()));
  const double mantissa = (y9 / pow(MPReal(10L, Precision(1624)), exponent)).to_double();
  o.note("|y9| = " + y9.to_string(8));
  o.check(exponent == -1622, fmt("exponent %ld, want -1622", exponent));
  o.check(sig_figs_match(mantissa, 1.7383, 4), fmt("mantissa %.6f, want 1.7383 to 4 significant figures", mantissa));
  o.check(elapsed < 60.0, fmt("runtime %.3f s < 60 s", elapsed));
  return o;
}

Outcome a5() {
  Outcome o;
  const Precision p(30);
  SolveConfig cfg(p);
  cfg.max_iter = 10;
  const auto trace = solve_expr("(x-2)^2", MPReal("0.5", p), cfg);
  const double err = abs(trace.last().x - 2L).to_double();
  o.note(fmt("status %s after %d iterations", std::string(to_string(trace.status)).c_str(), trace.last().n));
  o.check(trace.converged(), "converges within 10 iterations");
  o.check(err <= 1e-10, fmt("forward error %.3g, need <= 1e-10", err));

  const auto ratios = ratio_sequence(trace.residual_magnitudes());
  bool increasing = ratios.size() >= 4;
  std::string tail;
  for (std::size_t i = ratios.size() >= 4 ? ratios.size() - 4 : 0; i < ratios.size(); ++i) {
    tail += " " + ratios[i].value.to_string(4);
    if (i > ratios.size() - 4 && !(ratios[i].value > ratios[i - 1].value)) increasing = false;
  }
  o.check(increasing, "ratio tail strictly increasing:" + tail);
  return o;
}

Outcome a6() {
  Outcome o;
  auto tail = [](const IterationTrace<MPReal>& t) {
    const auto rho = order_estimate(t.residual_magnitudes());
    return rho.empty() ? std::nan("") : rho.back().value.to_double();
  };
  const double ici = tail(exp_trace(1000, 8, Method::ici));
  const double newton = tail(exp_trace(1000, 8, Method::newton));
  o.check(ici >= 2.68 && ici <= 2.78, fmt("ICI order tail %.4f in [2.68, 2.78]", ici));
  o.check(newton >= 1.95 && newton <= 2.05, fmt("Newton order tail %.4f in [1.95, 2.05]", newton));
  return o;
}

// Kernel property suite -------------------------------------------------------

constexpr int kInstances = 1000;
constexpr long kUlps = 10;

MPReal signed_uniform(Rng& rng, double lo, double hi, Precision p) {
  MPReal v = rng.uniform(lo, hi, p);
  return rng.coin() ? v : -v;
}

// Two consecutive iterates near a simple root of a random cubic, the regime
// the step is used in.
struct StepInstance {
  PointSample<MPReal> prev;
  PointSample<MPReal> cur;
};

StepInstance random_step_instance(Rng& rng, Precision p) {
  const MPReal r = rng.uniform(-2.0, 2.0, p);
  const MPReal s = signed_uniform(rng, 0.5, 3.0, p);
  const MPReal c2 = rng.uniform(-1.0, 1.0, p);
  const MPReal c3 = rng.uniform(-1.0, 1.0, p);
  auto sample = [&](const MPReal& x) {
    const MPReal e = x - r;
    return PointSample<MPReal>{x, e * (s + e * (c2 + e * c3)), s + e * (c2 * 2L + e * c3 * 3L)};
  };
  const MPReal e1 = signed_uniform(rng, 1e-4, 0.02, p);
  const MPReal e0 = e1 * signed_uniform(rng, 2.0, 20.0, p);
  return {sample(r + e0), sample(r + e1)};
}

MPReal biggest(std::initializer_list<MPReal> values) {
  MPReal m = abs(*values.begin());
  for (const auto& v : values) m = max(m, abs(v));
  return m;
}

// Rounding scale of an ICI step: the largest weighted term before any
// cancellation, i.e. each x and each correction y/f' or secant update times
// its weight. Close residuals make the weights large and these terms cancel.
MPReal step_scale(const PointSample<MPReal>& prev, const PointSample<MPReal>& cur) {
  const auto w = ici_weights(prev.y, cur.y);
  const MPReal secant_update = cur.y * (cur.x - prev.x) / (cur.y - prev.y);
  return biggest({prev.x, cur.x, w.prev * prev.x, w.prev * prev.y / prev.yp, w.cur * cur.x,
                  w.cur * cur.y / cur.yp, w.secant * cur.x, w.secant * secant_update});
}

struct PropertyTally {
  int failures = 0;
  double worst_ulps = 0;

  void record(const MPReal& got, const MPReal& want, const MPReal& scale, long ulps) {
    const MPReal d = abs(got - want);
    const MPReal ulp = pow(constant_like(got, 2), scale.exponent2() - static_cast<long>(got.bits()));
    const double used = d.is_zero() ? 0.0 : (d / ulp).to_double();
    worst_ulps = std::max(worst_ulps, used);
    if (!(used <= static_cast<double>(ulps))) ++failures;
  }
};

Outcome a7() {
  Outcome o;
  const Precision p(50);
  const MPReal one(1L, p);
  Rng rng(0x1c1);

  auto report = [&](const char* name, const PropertyTally& t, long ulps) {
    o.check(t.failures == 0, fmt("%-22s %d/%d instances, worst %.2f ulps (limit %ld)", name, kInstances - t.failures,
                                 kInstances, t.worst_ulps, ulps));
  };

  {
    PropertyTally t;
    for (int i = 0; i < kInstances; ++i) {
      const auto in = random_step_instance(rng, p);
      const auto w = ici_weights(in.prev.y, in.cur.y);
      t.record(w.prev + w.cur + w.secant, one, one, kUlps);
    }
    report("weight sum", t, kUlps);
  }
  {
    PropertyTally blind, averaged;
    for (int i = 0; i < kInstances; ++i) {
      const auto in = random_step_instance(rng, p);
      const MPReal x = ici_step(in.prev, in.cur);
      const MPReal scale = step_scale(in.prev, in.cur);
      blind.record(ici_step_blind(in.prev, in.cur), x, scale, kUlps);
      averaged.record(ici_step_averaged(in.prev, in.cur), x, scale, kUlps);
    }
    report("ici == blind", blind, kUlps);
    report("ici == averaged", averaged, kUlps);
  }
  {
    // x = g(y) cubic in y: the inverse interpolant is g itself, so the step
    // lands on g(0) = c0.
    PropertyTally t;
    for (int i = 0; i < kInstances; ++i) {
      const MPReal c0 = rng.uniform(-2.0, 2.0, p);
      const MPReal c1 = signed_uniform(rng, 1.0, 2.0, p);
      const MPReal c2 = rng.uniform(-0.25, 0.25, p);
      const MPReal c3 = rng.uniform(-0.25, 0.25, p);
      auto sample = [&](const MPReal& y) {
        const MPReal x = c0 + y * (c1 + y * (c2 + y * c3));
        const MPReal dxdy = c1 + y * (c2 * 2L + y * c3 * 3L);
        return PointSample<MPReal>{x, y, one / dxdy};
      };
      const MPReal ya = signed_uniform(rng, 0.05, 0.5, p);
      MPReal yb = signed_uniform(rng, 0.05, 0.5, p);
      if (abs(yb - ya) < MPReal("0.05", p)) yb = -ya;
      const auto a = sample(ya), b = sample(yb);
      t.record(ici_step(a, b), c0, step_scale(a, b), kUlps);
    }
    report("cubic-inverse exact", t, kUlps);
  }
  {
    PropertyTally t;
    for (int i = 0; i < kInstances; ++i) {
      const MPReal k0 = rng.uniform(-2.0, 2.0, p), k1 = rng.uniform(-2.0, 2.0, p);
      const MPReal k2 = rng.uniform(-2.0, 2.0, p), k3 = rng.uniform(-2.0, 2.0, p);
      auto poly = [&](const MPReal& x) { return k0 + x * (k1 + x * (k2 + x * k3)); };
      auto dpoly = [&](const MPReal& x) { return k1 + x * (k2 * 2L + x * k3 * 3L); };
      const MPReal a = rng.uniform(-2.0, 0.0, p);
      const MPReal b = a + rng.uniform(0.1, 2.0, p);
      const MPReal theta = rng.uniform(0.0, 1.0, p);
      const MPReal x = a + theta * (b - a);
      const MPReal got = hermite_forward_eval(PointSample<MPReal>{a, poly(a), dpoly(a)},
                                              PointSample<MPReal>{b, poly(b), dpoly(b)}, theta);
      const MPReal want = poly(x);
      // Terms of size |k3| |x|^3 cancel; measure against the largest.
      t.record(got, want, biggest({want, k0, k1 * x, k2 * x * x, k3 * x * x * x, poly(a), poly(b)}), kUlps);
    }
    report("forward-cubic exact", t, kUlps);
  }
  {
    PropertyTally t;
    for (int i = 0; i < kInstances; ++i) {
      const auto in = random_step_instance(rng, p);
      const MPReal x = ici_step(in.prev, in.cur);
      t.record(ici_step(in.cur, in.prev), x, step_scale(in.prev, in.cur), kUlps);
    }
    report("step symmetry", t, kUlps);
  }
  {
    PropertyTally t;
    for (int i = 0; i < kInstances; ++i) {
      const auto in = random_step_instance(rng, p);
      const MPReal lambda = signed_uniform(rng, 1e-3, 1e3, p);
      auto scaled = [&](const PointSample<MPReal>& s) { return PointSample<MPReal>{s.x, s.y * lambda, s.yp * lambda}; };
      const MPReal x = ici_step(in.prev, in.cur);
      t.record(ici_step(scaled(in.prev), scaled(in.cur)), x, step_scale(in.prev, in.cur), kUlps);
    }
    report("scale invariance", t, kUlps);
  }
  {
    PropertyTally t;
    for (int i = 0; i < kInstances; ++i) {
      const auto in = random_step_instance(rng, p);
      const MPReal alpha = signed_uniform(rng, 0.1, 10.0, p);
      const MPReal beta = rng.uniform(-5.0, 5.0, p);
      auto moved = [&](const PointSample<MPReal>& s) {
        return PointSample<MPReal>{s.x * alpha + beta, s.y, s.yp / alpha};
      };
      const MPReal want = ici_step(in.prev, in.cur) * alpha + beta;
      const auto mp = moved(in.prev), mc = moved(in.cur);
      t.record(ici_step(mp, mc), want, max(step_scale(mp, mc), abs(beta)), kUlps);
    }
    report("affine covariance", t, kUlps);
  }
  return o;
}

// Basins ----------------------------------------------------------------------

Outcome a8() {
  Outcome o;
  Stopwatch clock;
  const double pi = std::acos(-1.0);

  BasinSpec cubes;
  cubes.function = "z^3-1";
  cubes.width = cubes.height = 200;
  cubes.max_iter = 13;
  cubes.tol = 1e-8;
  const BasinRaster raster = render(cubes);
  const Precision p(cubes.digits);
  std::vector<MPComplex> roots;
  for (int k = 0; k < 3; ++k) roots.emplace_back(std::cos(2 * pi * k / 3), std::sin(2 * pi * k / 3), p);
  int converged = 0, far = 0;
  std::set<int> hit;
  for (const auto& px : raster.pixels) {
    if (!px.converged) continue;
    ++converged;
    int nearest = -1;
    double best = 1e300;
    for (int k = 0; k < 3; ++k) {
      const double d = abs(px.z - roots[k]).to_double();
      if (d < best) best = d, nearest = k;
    }
    if (best > 1e-6) ++far;
    hit.insert(nearest);
  }
  o.check(far == 0, fmt("z^3-1 200x200: %d converged pixels, %d farther than 1e-6 from a cube root", converged, far));
  o.check(hit.size() == 3, fmt("z^3-1 basins non-empty: %zu of 3", hit.size()));

  const LineScan scan = line_scan(cubes, MPComplex(-1.45, 0.0, p), MPComplex(-1.05, 0.0, p), 400, roots);
  o.check(scan.changes() > 2, fmt("line scan y=0, x in [-1.45,-1.05], 400 samples: %d assignment changes, need > 2",
                                  scan.changes()));
  const LineScan off_axis = line_scan(cubes, MPComplex(-1.45, 0.1, p), MPComplex(-1.05, 0.1, p), 400, roots);
  o.note(fmt("same segment at y=0.1 (not scored): %d assignment changes", off_axis.changes()));

  BasinSpec kepler;
  kepler.function = "z-0.083*sin(z)-1";
  kepler.re_min = -30.5;
  kepler.re_max = -29.5;
  kepler.im_min = -17.5;
  kepler.im_max = -16.5;
  kepler.width = kepler.height = 100;
  kepler.max_iter = 30;
  const BasinRaster kr = render(kepler);
  const auto nan = std::count_if(kr.pixels.begin(), kr.pixels.end(), [](const BasinPixel& px) { return px.nan; });
  std::size_t white = 0;
  for (const auto& px : kr.pixels) white += pixel_color(px) == Rgb{255, 255, 255} ? 1 : 0;
  o.check(nan >= 1 && white == static_cast<std::size_t>(nan),
          fmt("Kepler 100x100: %ld NaN pixels, %zu rendered white", static_cast<long>(nan), white));

  const double elapsed = clock.seconds();
  o.check(elapsed < 60.0, fmt("runtime %.2f s < 60 s", elapsed));
  return o;
}

Outcome a9() {
  Outcome o;
  const auto trace = exp_trace(1000, 8, Method::ici);
  const auto ratios = ratio_sequence(trace.residual_magnitudes());
  const double observed = ratios.back().value.to_double();

  // Derivatives at the computed root, at 60 digits.
  const Precision p(60);
  const MPReal root = trace.last().x.with_bits(p.bits());
  Expr d = parse(kExp);
  std::vector<MPReal> f;
  for (int k = 1; k <= 4; ++k) {
    d = differentiate(d, "x");
    f.push_back(CompiledExpr(d, p)(root));
  }
  const MPReal k_series = error_constant_oracle(f[0], f[1], f[2], f[3], ErrorConstantForm::inverse_series);
  const MPReal k_printed = error_constant_oracle(f[0], f[1], f[2], f[3], ErrorConstantForm::as_printed);

  struct Candidate {
    const char* name;
    double value;
  };
  const std::vector<Candidate> candidates = {
      {"K/f1^3, inverse-series numerator", residual_ratio_limit(k_series, f[0]).to_double()},
      {"K*f1 (one f' removed), inverse-series numerator", abs(k_series * f[0]).to_double()},
      {"K/f1^3, printed numerator", residual_ratio_limit(k_printed, f[0]).to_double()},
      {"K*f1 (one f' removed), printed numerator", abs(k_printed * f[0]).to_double()},
  };
  o.note(fmt("observed ratio limit %.7f (stated 4.9080)", observed));
  std::string matched;
  for (const auto& c : candidates) {
    const bool hit = sig_figs_match(c.value, 4.9080, 3) && sig_figs_match(c.value, observed, 3);
    o.note(fmt("candidate %-48s %.7g%s", c.name, c.value, hit ? "  <- matches" : ""));
    if (hit && matched.empty()) matched = c.name;
  }
  o.check(!matched.empty(), "ratio limit matches a candidate to 3 significant figures: " +
                                (matched.empty() ? std::string("none") : matched));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4}, {"A5", a5},
      {"A6", a6}, {"A7", a7}, {"A8", a8}, {"A9", a9},
  };
  std::set<std::string> selected(argv + 1, argv + argc);
  for (const auto& id : selected) {
    if (std::none_of(criteria.begin(), criteria.end(), [&](const auto& c) { return c.first == id; })) {
      std::fprintf(stderr, "unknown criterion '%s'\n", id.c_str());
      return 2;
    }
  }
  bool all_pass = true;
  for (const auto& [id, run] : criteria) {
    if (!selected.empty() && selected.count(id) == 0) continue;
    Stopwatch clock;
    const Outcome o = run();
    std::printf("%s %s (%.2f s)\n", id.c_str(), o.pass ? "PASS" : "FAIL", clock.seconds());
    for (const auto& line : o.lines) std::printf("    %s\n", line.c_str());
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}

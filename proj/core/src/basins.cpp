#include "ici/basins.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <exception>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "ici/compiled.hpp"
#include "ici/errors.hpp"
#include "ici/expr.hpp"

namespace ici {

namespace {

struct PreparedFunction {
  CompiledExpr f;
  CompiledExpr fp;
};

PreparedFunction prepare(const BasinSpec& spec) {
  const Expr f = parse(spec.function);
  const Expr fp = differentiate(f, f.variable_name().value_or("z"));
  const Precision p(spec.digits);
  return {CompiledExpr(f, p), CompiledExpr(fp, p)};
}

SolveConfig make_config(const BasinSpec& spec) {
  const Precision p(spec.digits);
  SolveConfig cfg(p);
  cfg.tol = MPReal(spec.tol, p);
  cfg.max_iter = spec.max_iter;
  cfg.method = spec.method;
  cfg.safeguards = spec.safeguards;
  // Only exact degeneracy (equal residuals, zero derivative) stops a pixel.
  cfg.dy_guard = MPReal(p);
  cfg.dfmin = MPReal(p);
  if (std::isfinite(spec.overflow_limit)) cfg.overflow_limit = MPReal(spec.overflow_limit, p);
  return cfg;
}

BasinPixel run_pixel(const PreparedFunction& fn, const SolveConfig& cfg, const MPComplex& z0) {
  const auto trace = solve<MPComplex>([&fn](const MPComplex& z) { return fn.f(z); },
                                      [&fn](const MPComplex& z) { return fn.fp(z); }, z0, cfg);
  BasinPixel px{trace.last().x};
  px.iterations = static_cast<int>(trace.records.size());
  px.converged = trace.status == SolveStatus::converged;
  px.nan = trace.status == SolveStatus::nan || trace.status == SolveStatus::degenerate;
  if (!px.nan && !px.z.is_zero()) px.phase = phase(px.z).to_double();
  return px;
}

std::uint8_t channel(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

}  // namespace

void BasinSpec::validate() const {
  if (width < 1 || height < 1) throw std::invalid_argument("basin width and height must be at least 1");
  if (!(re_min < re_max)) throw std::invalid_argument("basin real range is empty or reversed");
  if (!(im_min < im_max)) throw std::invalid_argument("basin imaginary range is empty or reversed");
  if (max_iter < 1) throw std::invalid_argument("basin max_iter must be at least 1");
  if (!(tol > 0.0)) throw std::invalid_argument("basin tol must be positive");
  Precision{digits};
}

MPComplex pixel_center(const BasinSpec& spec, int i, int j) {
  const Precision p(spec.digits);
  const MPReal re_min(spec.re_min, p);
  const MPReal im_max(spec.im_max, p);
  const MPReal dre = (MPReal(spec.re_max, p) - re_min) / static_cast<long>(spec.width);
  const MPReal dim = (im_max - MPReal(spec.im_min, p)) / static_cast<long>(spec.height);
  // (i + 1/2) d = (2i + 1) d / 2
  return {re_min + dre * (2L * i + 1L) / 2L, im_max - dim * (2L * j + 1L) / 2L};
}

BasinPixel iterate_point(const BasinSpec& spec, const MPComplex& z0) {
  spec.validate();
  const PreparedFunction fn = prepare(spec);
  return run_pixel(fn, make_config(spec), z0);
}

BasinRaster render(const BasinSpec& spec) {
  spec.validate();
  const PreparedFunction fn = prepare(spec);
  const SolveConfig cfg = make_config(spec);

  const int rows = spec.height;
  unsigned workers = spec.workers != 0 ? spec.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(rows));

  std::vector<std::vector<BasinPixel>> row_pixels(static_cast<std::size_t>(rows));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (int j = static_cast<int>(w); j < rows; j += static_cast<int>(workers)) {
        auto& row = row_pixels[static_cast<std::size_t>(j)];
        row.reserve(static_cast<std::size_t>(spec.width));
        for (int i = 0; i < spec.width; ++i) row.push_back(run_pixel(fn, cfg, pixel_center(spec, i, j)));
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  BasinRaster raster{spec, {}};
  raster.pixels.reserve(static_cast<std::size_t>(spec.width) * static_cast<std::size_t>(rows));
  for (auto& row : row_pixels) {
    for (auto& px : row) raster.pixels.push_back(std::move(px));
  }
  return raster;
}

Rgb pixel_color(const BasinPixel& p) {
  if (p.nan) return {255, 255, 255};
  if (std::isnan(p.phase)) return {0, 0, 0};
  const double hue = (p.phase + M_PI) / (2.0 * M_PI);
  const double h6 = hue * 6.0;
  const int sector = static_cast<int>(std::floor(h6)) % 6;
  const double f = h6 - std::floor(h6);
  const double q = 1.0 - f;
  switch (sector) {
    case 0: return {channel(1.0), channel(f), channel(0.0)};
    case 1: return {channel(q), channel(1.0), channel(0.0)};
    case 2: return {channel(0.0), channel(1.0), channel(f)};
    case 3: return {channel(0.0), channel(q), channel(1.0)};
    case 4: return {channel(f), channel(0.0), channel(1.0)};
    default: return {channel(1.0), channel(0.0), channel(q)};
  }
}

std::string encode_ppm(const BasinRaster& raster) {
  std::string out = "P6\n" + std::to_string(raster.spec.width) + " " + std::to_string(raster.spec.height) + "\n255\n";
  out.reserve(out.size() + raster.pixels.size() * 3);
  for (const auto& px : raster.pixels) {
    const Rgb c = pixel_color(px);
    out.append(reinterpret_cast<const char*>(c.data()), c.size());
  }
  return out;
}

void write_image(const BasinRaster& raster, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open '" + path + "' for writing");
  const std::string bytes = encode_ppm(raster);
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!file) throw Error("failed writing '" + path + "'");
}

void write_csv(std::ostream& out, const BasinRaster& raster) {
  out << "i,j,re_z0,im_z0,converged,iterations,phase\n";
  for (int j = 0; j < raster.spec.height; ++j) {
    for (int i = 0; i < raster.spec.width; ++i) {
      const BasinPixel& px = raster.at(i, j);
      const MPComplex z0 = pixel_center(raster.spec, i, j);
      out << i << ',' << j << ',' << z0.re().to_string(17) << ',' << z0.im().to_string(17) << ','
          << (px.converged ? 1 : 0) << ',' << px.iterations << ',';
      if (px.nan) {
        out << "nan";
      } else if (!std::isnan(px.phase)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", px.phase);
        out << buf;
      }
      out << '\n';
    }
  }
}

int LineScan::changes() const {
  int n = 0;
  for (std::size_t k = 1; k < assignment.size(); ++k) {
    if (assignment[k] != assignment[k - 1]) ++n;
  }
  return n;
}

LineScan line_scan(const BasinSpec& spec, const MPComplex& from, const MPComplex& to, int count,
                   const std::vector<MPComplex>& known_roots) {
  spec.validate();
  if (count < 1) throw std::invalid_argument("line scan needs at least one sample");
  const PreparedFunction fn = prepare(spec);
  const SolveConfig cfg = make_config(spec);

  LineScan scan;
  scan.samples.reserve(static_cast<std::size_t>(count));
  const MPComplex span = to - from;
  for (int k = 0; k < count; ++k) {
    const MPComplex z0 = count == 1 ? from : from + span * k / static_cast<long>(count - 1);
    scan.samples.push_back(run_pixel(fn, cfg, z0));
  }

  const Precision p(spec.digits);
  const MPReal cluster_radius(std::max(1e-6, 1000.0 * spec.tol), p);
  scan.roots = known_roots;
  if (scan.roots.empty()) {
    for (const auto& s : scan.samples) {
      if (!s.converged) continue;
      bool seen = false;
      for (const auto& r : scan.roots) seen = seen || abs(s.z - r) <= cluster_radius;
      if (!seen) scan.roots.push_back(s.z);
    }
  }

  scan.assignment.reserve(scan.samples.size());
  for (const auto& s : scan.samples) {
    if (s.nan) {
      scan.assignment.push_back(LineScan::kNan);
      continue;
    }
    int best = LineScan::kUnassigned;
    std::optional<MPReal> best_dist;
    for (std::size_t r = 0; r < scan.roots.size(); ++r) {
      MPReal d = abs(s.z - scan.roots[r]);
      if (!best_dist || d < *best_dist) {
        best_dist = std::move(d);
        best = static_cast<int>(r);
      }
    }
    scan.assignment.push_back(best);
  }
  return scan;
}

}  // namespace ici

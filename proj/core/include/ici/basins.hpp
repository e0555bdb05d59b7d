#pragma once

// Basins of attraction on a rectangular grid in the complex plane.
//
// Pixel (i, j) starts from its center
//   z0 = (re_min + (i + 1/2) dre) + i (im_max - (j + 1/2) dim),
// so row 0 is the top of the imaginary range. Each pixel runs the configured
// two-point method (Newton first step) and records the final iterate.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "ici/mpcomplex.hpp"
#include "ici/solve.hpp"

namespace ici {

struct BasinSpec {
  std::string function;
  double re_min = -2.0;
  double re_max = 2.0;
  double im_min = -2.0;
  double im_max = 2.0;
  int width = 200;
  int height = 200;
  int max_iter = 13;
  double tol = 1e-8;
  int digits = 34;
  Method method = Method::ici;
  /// Magnitudes beyond this are treated as overflow and mark the pixel NaN.
  /// Infinity disables the check.
  double overflow_limit = std::numeric_limits<double>::max();
  /// Plain-Newton fallbacks on degenerate steps; off reproduces the raw
  /// iteration, where such steps yield NaN pixels.
  bool safeguards = false;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;

  /// Throws std::invalid_argument.
  void validate() const;
};

struct BasinPixel {
  MPComplex z;          // final iterate (meaningless when nan)
  bool nan = false;     // some iterate hit a NaN / overflow / degenerate step
  bool converged = false;
  int iterations = 0;   // iterates evaluated, z0 included
  double phase = std::numeric_limits<double>::quiet_NaN();  // arg z in (-pi, pi]; NaN if undefined
};

struct BasinRaster {
  BasinSpec spec;
  std::vector<BasinPixel> pixels;  // row-major, row 0 at the top

  const BasinPixel& at(int i, int j) const {
    return pixels[static_cast<std::size_t>(j) * static_cast<std::size_t>(spec.width) + static_cast<std::size_t>(i)];
  }
};

MPComplex pixel_center(const BasinSpec& spec, int i, int j);

/// Iterates from one starting point with the spec's settings.
BasinPixel iterate_point(const BasinSpec& spec, const MPComplex& z0);

/// Throws ParseError for a bad function. All-NaN output is legal.
BasinRaster render(const BasinSpec& spec);

using Rgb = std::array<std::uint8_t, 3>;

/// HSV(h, 1, 1) with h = (phase + pi) / (2 pi); NaN pixels white; pixels
/// with an undefined phase black.
Rgb pixel_color(const BasinPixel& p);

/// Binary PPM (P6, maxval 255).
std::string encode_ppm(const BasinRaster& raster);
/// Throws Error on I/O failure.
void write_image(const BasinRaster& raster, const std::string& path);

/// Columns: i,j,re_z0,im_z0,converged,iterations,phase
void write_csv(std::ostream& out, const BasinRaster& raster);

struct LineScan {
  static constexpr int kNan = -1;
  static constexpr int kUnassigned = -2;

  std::vector<int> assignment;       // root index per sample
  std::vector<MPComplex> roots;      // discovered or supplied root set
  std::vector<BasinPixel> samples;

  int changes() const;
};

/// Samples `count` points from `from` to `to` (endpoints included; a single
/// sample sits at `from`) and assigns each limit to its nearest root. Roots
/// are clustered from the converged limits unless `known_roots` is given.
LineScan line_scan(const BasinSpec& spec, const MPComplex& from, const MPComplex& to, int count,
                   const std::vector<MPComplex>& known_roots = {});

}  // namespace ici

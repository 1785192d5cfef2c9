#include "elastica/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace elastica {

ColorField add_gaussian_noise(const ColorField& f, double sd, Rng& rng, bool clamp) {
  if (!(sd >= 0.0)) throw std::invalid_argument("add_gaussian_noise: sd must be >= 0");
  ColorField out = f;
  if (sd == 0.0) return out;
  for (std::size_t pix = 0; pix < f.grid().size(); ++pix) {
    for (int k = 0; k < 3; ++k) {
      double v = f[k][pix] + sd * rng.normal();
      if (clamp) v = std::clamp(v, 0.0, 1.0);
      out[k][pix] = v;
    }
  }
  return out;
}

double psnr(const ColorField& u, const ColorField& ref) {
  require_same_grid(u.grid(), ref.grid(), "psnr");
  std::vector<double> sq;
  sq.reserve(3 * u.grid().size());
  for (int k = 0; k < 3; ++k) {
    for (std::size_t pix = 0; pix < u.grid().size(); ++pix) {
      const double d = u[k][pix] - ref[k][pix];
      sq.push_back(d * d);
    }
  }
  const double mse = pairwise_sum(sq) / static_cast<double>(sq.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return -10.0 * std::log10(mse);
}

std::vector<double> gaussian_taps(int window, double sigma) {
  if (window < 1 || window % 2 == 0) throw std::invalid_argument("gaussian_taps: odd window needed");
  std::vector<double> taps(window);
  const int r = window / 2;
  double total = 0.0;
  for (int t = -r; t <= r; ++t) {
    taps[t + r] = std::exp(-0.5 * t * t / (sigma * sigma));
    total += taps[t + r];
  }
  for (double& v : taps) v /= total;
  return taps;
}

namespace {

// Separable periodic convolution with symmetric taps.
ScalarField blur(const ScalarField& v, const std::vector<double>& taps) {
  const Grid& grid = v.grid();
  const int r = static_cast<int>(taps.size()) / 2;
  ScalarField tmp(grid), out(grid);
  for (int i = 0; i < grid.rows(); ++i) {
    for (int j = 0; j < grid.cols(); ++j) {
      double acc = 0.0;
      for (int t = -r; t <= r; ++t) acc += taps[t + r] * v.wrapped(i + t, j);
      tmp(i, j) = acc;
    }
  }
  for (int i = 0; i < grid.rows(); ++i) {
    for (int j = 0; j < grid.cols(); ++j) {
      double acc = 0.0;
      for (int t = -r; t <= r; ++t) acc += taps[t + r] * tmp.wrapped(i, j + t);
      out(i, j) = acc;
    }
  }
  return out;
}

ScalarField product(const ScalarField& a, const ScalarField& b) {
  ScalarField out(a.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] * b[k];
  return out;
}

}  // namespace

double ssim_channel(const ScalarField& u, const ScalarField& ref, const SsimParams& params) {
  require_same_grid(u.grid(), ref.grid(), "ssim");
  const Grid& grid = u.grid();
  if (std::min(grid.rows(), grid.cols()) < params.window) {
    throw std::invalid_argument("ssim: image smaller than the window");
  }
  const std::vector<double> taps = gaussian_taps(params.window, params.sigma);
  const double c1 = std::pow(params.k1 * params.dynamic_range, 2);
  const double c2 = std::pow(params.k2 * params.dynamic_range, 2);

  const ScalarField mx = blur(u, taps);
  const ScalarField my = blur(ref, taps);
  const ScalarField sxx = blur(product(u, u), taps);
  const ScalarField syy = blur(product(ref, ref), taps);
  const ScalarField sxy = blur(product(u, ref), taps);

  std::vector<double> local(grid.size());
  for (std::size_t k = 0; k < local.size(); ++k) {
    const double vx = sxx[k] - mx[k] * mx[k];
    const double vy = syy[k] - my[k] * my[k];
    const double cxy = sxy[k] - mx[k] * my[k];
    local[k] = ((2.0 * mx[k] * my[k] + c1) * (2.0 * cxy + c2)) /
               ((mx[k] * mx[k] + my[k] * my[k] + c1) * (vx + vy + c2));
  }
  return pairwise_sum(local) / static_cast<double>(local.size());
}

double ssim(const ColorField& u, const ColorField& ref, const SsimParams& params) {
  double total = 0.0;
  for (int k = 0; k < 3; ++k) total += ssim_channel(u[k], ref[k], params);
  return total / 3.0;
}

std::uint8_t to_byte(double v) {
  if (std::isnan(v)) throw std::invalid_argument("to_byte: NaN pixel");
  const double s = std::floor(v * 255.0 + 0.5);
  return static_cast<std::uint8_t>(std::clamp(s, 0.0, 255.0));
}

double from_byte(std::uint8_t b) { return b / 255.0; }

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace elastica

#pragma once

// Image I/O, noise synthesis and quality metrics.

#include <cstdint>
#include <string>
#include <vector>

#include "elastica/grid.hpp"
#include "elastica/rng.hpp"

namespace elastica {

/// Adds i.i.d. N(0, sd^2) per pixel and channel, row-major, channel fastest.
/// Clamps to [0, 1] when clamp is set.
ColorField add_gaussian_noise(const ColorField& f, double sd, Rng& rng, bool clamp = true);

/// 10 log10(1 / MSE), peak 1, MSE pooled over all channels. +inf when equal.
double psnr(const ColorField& u, const ColorField& ref);

struct SsimParams {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 1.0;
};

/// Mean local SSIM of one channel. The Gaussian window wraps around the
/// borders, so the value is invariant under periodic shifts.
double ssim_channel(const ScalarField& u, const ScalarField& ref, const SsimParams& params = {});
/// Channel average of ssim_channel.
double ssim(const ColorField& u, const ColorField& ref, const SsimParams& params = {});

/// Normalised 1D Gaussian taps; the 2D window is their outer product.
std::vector<double> gaussian_taps(int window, double sigma);

// 8-bit quantisation used by the PNG writer: round half up, clamp to [0, 255].
std::uint8_t to_byte(double v);
double from_byte(std::uint8_t b);

/// Reads any PNG as 8-bit RGB (grey and alpha are converted).
ColorField read_png(const std::string& path);
void write_png(const std::string& path, const ColorField& image);

/// 12 significant digits, dot decimal separator.
std::string csv_number(double v);
/// Quotes a field if it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

}  // namespace elastica

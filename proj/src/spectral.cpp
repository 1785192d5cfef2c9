#include "elastica/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace elastica {

namespace {

using cplx = std::complex<double>;

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<cplx> to_complex(const ScalarField& f) {
  std::vector<cplx> out(f.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = cplx(f[k], 0.0);
  return out;
}

ScalarField real_part(const Grid& grid, const std::vector<cplx>& data, SpectralReport* report) {
  ScalarField out(grid);
  double max_imag = 0.0;
  for (std::size_t k = 0; k < data.size(); ++k) {
    out[k] = data[k].real();
    max_imag = std::max(max_imag, std::abs(data[k].imag()));
  }
  if (report) report->max_imag = std::max(report->max_imag, max_imag);
  return out;
}

// Symbols of the one-sided differences along one axis.
struct AxisSymbols {
  std::vector<cplx> fwd;  // (e^{iz} - 1) / h
  std::vector<cplx> bwd;  // (1 - e^{-iz}) / h
};

AxisSymbols axis_symbols(const std::vector<double>& z, double h) {
  AxisSymbols s;
  s.fwd.resize(z.size());
  s.bwd.resize(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    const cplx e = std::polar(1.0, z[k]);
    s.fwd[k] = (e - 1.0) / h;
    s.bwd[k] = (1.0 - std::conj(e)) / h;
  }
  return s;
}

}  // namespace

FourierSymbols::FourierSymbols(const Grid& g) : grid(g), zi(g.rows()), zj(g.cols()) {
  const double two_pi = 2.0 * std::numbers::pi;
  for (int i = 0; i < g.rows(); ++i) zi[i] = two_pi * i / g.rows();
  for (int j = 0; j < g.cols(); ++j) zj[j] = two_pi * j / g.cols();
}

Fft2d::Fft2d(int rows, int cols) : rows_(rows), cols_(cols) {
  std::lock_guard lock(planner_mutex());
  const std::size_t n = static_cast<std::size_t>(rows) * cols;
  auto* buf = fftw_alloc_complex(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_plan_ = fftw_plan_dft_2d(rows, cols, buf, buf, FFTW_FORWARD, flags);
  inverse_plan_ = fftw_plan_dft_2d(rows, cols, buf, buf, FFTW_BACKWARD, flags);
  fftw_free(buf);
  if (!forward_plan_ || !inverse_plan_) throw std::runtime_error("Fft2d: FFTW planning failed");
}

Fft2d::~Fft2d() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void Fft2d::forward(std::span<cplx> data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), p, p);
}

void Fft2d::inverse(std::span<cplx> data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(inverse_plan_), p, p);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& c : data) c *= scale;
}

std::shared_ptr<const Fft2d> Fft2d::for_grid(const Grid& grid) {
  // The cache destroys plans at exit, so the planner lock must outlive it.
  planner_mutex();
  static std::mutex cache_mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const Fft2d>> cache;
  std::lock_guard lock(cache_mutex);
  auto key = std::make_pair(grid.rows(), grid.cols());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto fft = std::make_shared<const Fft2d>(grid.rows(), grid.cols());
  cache.emplace(key, fft);
  return fft;
}

ScalarField solve_helmholtz(const ScalarField& rhs, double tau, double eta,
                            SpectralReport* report) {
  if (!(tau > 0.0) || !(eta > 0.0)) {
    throw std::invalid_argument("solve_helmholtz: tau and eta must be positive");
  }
  const Grid& g = rhs.grid();
  const FourierSymbols z(g);
  const double h2 = g.cell_area();
  auto fft = Fft2d::for_grid(g);

  std::vector<cplx> data = to_complex(rhs);
  fft->forward(data);
  for (int i = 0; i < g.rows(); ++i) {
    const double ci = std::cos(z.zi[i]);
    for (int j = 0; j < g.cols(); ++j) {
      const double b = tau * h2 + 4.0 * eta - 2.0 * eta * ci - 2.0 * eta * std::cos(z.zj[j]);
      data[g.index(i, j)] /= b;
    }
  }
  fft->inverse(data);
  return real_part(g, data, report);
}

VectorField2 solve_block2x2(const ScalarField& w1, const ScalarField& w2, double gamma1, double c1,
                            SpectralReport* report) {
  require_same_grid(w1.grid(), w2.grid(), "solve_block2x2");
  if (!(gamma1 > 0.0) || !(c1 >= 0.0)) {
    throw std::invalid_argument("solve_block2x2: need gamma1 > 0 and c1 >= 0");
  }
  const Grid& g = w1.grid();
  if (c1 == 0.0) {
    // no coupling: skip the transforms so the result is exact
    VectorField2 out(g);
    for (std::size_t k = 0; k < g.size(); ++k) {
      out[0][k] = w1[k] / gamma1;
      out[1][k] = w2[k] / gamma1;
    }
    if (report) report->max_imag = 0.0;
    return out;
  }
  const FourierSymbols z(g);
  const AxisSymbols s1 = axis_symbols(z.zi, g.spacing());
  const AxisSymbols s2 = axis_symbols(z.zj, g.spacing());
  auto fft = Fft2d::for_grid(g);

  std::vector<cplx> f1 = to_complex(w1);
  std::vector<cplx> f2 = to_complex(w2);
  fft->forward(f1);
  fft->forward(f2);
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) {
      // Row r of grad^+ div^- maps (l1, l2) to D_r^+ (D_1^- l1 + D_2^- l2).
      const cplx a11 = gamma1 - c1 * s1.fwd[i] * s1.bwd[i];
      const cplx a12 = -c1 * s1.fwd[i] * s2.bwd[j];
      const cplx a21 = -c1 * s2.fwd[j] * s1.bwd[i];
      const cplx a22 = gamma1 - c1 * s2.fwd[j] * s2.bwd[j];
      const cplx det = a11 * a22 - a12 * a21;
      if (std::abs(det) == 0.0) throw std::logic_error("solve_block2x2: singular symbol");
      const std::size_t k = g.index(i, j);
      const cplx x1 = (a22 * f1[k] - a12 * f2[k]) / det;
      const cplx x2 = (-a21 * f1[k] + a11 * f2[k]) / det;
      f1[k] = x1;
      f2[k] = x2;
    }
  }
  fft->inverse(f1);
  fft->inverse(f2);
  return VectorField2(real_part(g, f1, report), real_part(g, f2, report));
}

ScalarField solve_poisson_mean(const ScalarField& rhs, double mean_value, SpectralReport* report) {
  const Grid& g = rhs.grid();
  double scale = 1.0;
  for (double v : rhs.values()) scale = std::max(scale, std::abs(v));
  if (std::abs(rhs.mean()) > 1e-8 * scale) {
    throw std::invalid_argument("solve_poisson_mean: right-hand side has nonzero mean");
  }
  const FourierSymbols z(g);
  const double h2 = g.cell_area();
  auto fft = Fft2d::for_grid(g);

  std::vector<cplx> data = to_complex(rhs);
  fft->forward(data);
  for (int i = 0; i < g.rows(); ++i) {
    const double ci = std::cos(z.zi[i]);
    for (int j = 0; j < g.cols(); ++j) {
      const std::size_t k = g.index(i, j);
      if (i == 0 && j == 0) {
        // Zero mode carries the mean: F(v)(0,0) = MN * mean.
        data[k] = cplx(mean_value * static_cast<double>(g.size()), 0.0);
        continue;
      }
      const double symbol = (2.0 * ci + 2.0 * std::cos(z.zj[j]) - 4.0) / h2;
      data[k] /= symbol;
    }
  }
  fft->inverse(data);
  return real_part(g, data, report);
}

}  // namespace elastica

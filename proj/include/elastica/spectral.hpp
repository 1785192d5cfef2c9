#pragma once

// Periodic elliptic solvers diagonalised by the 2D DFT.
//
// Transform convention: unnormalised forward (exp(-i...)), 1/(MN) inverse.
// Under it the shift v(i+1, j) has symbol exp(+i z_i).

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "elastica/grid.hpp"

namespace elastica {

/// Angular frequencies z_i = 2 pi i / M, z_j = 2 pi j / N (0-based).
struct FourierSymbols {
  explicit FourierSymbols(const Grid& grid);

  Grid grid;
  std::vector<double> zi;
  std::vector<double> zj;
};

/// In-place complex 2D transform for one grid size. execute() is safe to call
/// concurrently; plans are created under a lock.
class Fft2d {
 public:
  Fft2d(int rows, int cols);
  ~Fft2d();
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;

  void forward(std::span<std::complex<double>> data) const;
  /// Includes the 1/(MN) factor.
  void inverse(std::span<std::complex<double>> data) const;

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  /// Shared per-size instance.
  static std::shared_ptr<const Fft2d> for_grid(const Grid& grid);

 private:
  int rows_;
  int cols_;
  void* forward_plan_;
  void* inverse_plan_;
};

/// Largest discarded imaginary part of the last inverse transform(s).
struct SpectralReport {
  double max_imag = 0.0;
};

/// Solves (tau h^2 I - eta h^2 div^-(grad^+ .)) u = rhs.
/// Symbol: tau h^2 + 4 eta - 2 eta cos z_i - 2 eta cos z_j.
ScalarField solve_helmholtz(const ScalarField& rhs, double tau, double eta,
                            SpectralReport* report = nullptr);

/// Solves (gamma1 I - c1 grad^+ div^-) lambda = (w1, w2) by a per-frequency
/// 2x2 Cramer inverse.
VectorField2 solve_block2x2(const ScalarField& w1, const ScalarField& w2, double gamma1, double c1,
                            SpectralReport* report = nullptr);

/// Solves div^-(grad^+ v) = rhs with mean(v) = mean_value. rhs must have zero
/// mean (it does when rhs = div^- of a periodic field).
ScalarField solve_poisson_mean(const ScalarField& rhs, double mean_value,
                               SpectralReport* report = nullptr);

}  // namespace elastica

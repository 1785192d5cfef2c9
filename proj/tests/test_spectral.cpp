#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "elastica/spectral.hpp"
#include "oracles.hpp"

using namespace elastica;
using namespace testing_support;

namespace {

double rel_err(const ScalarField& a, const ScalarField& ref) {
  return max_abs_diff(a, ref) / std::max(max_abs(ref), 1e-300);
}

}  // namespace

TEST(Fft, RoundTrip) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> n;
  auto fft = Fft2d::for_grid(Grid(6, 10));
  std::vector<std::complex<double>> data(60), orig;
  for (auto& z : data) z = {n(gen), n(gen)};
  orig = data;
  fft->forward(data);
  fft->inverse(data);
  for (std::size_t k = 0; k < data.size(); ++k) EXPECT_LT(std::abs(data[k] - orig[k]), 1e-14);
  EXPECT_EQ(Fft2d::for_grid(Grid(6, 10)).get(), fft.get());
}

TEST(Fft, ShiftSymbolConvention) {
  // v(i+1, j) <-> exp(+i z_i) V
  const Grid grid(8, 4);
  std::mt19937_64 gen(2);
  const ScalarField v = random_scalar(grid, gen);
  const ScalarField sv = shifted(v, -1, 0);  // sv(i, j) = v(i + 1, j)
  auto fft = Fft2d::for_grid(grid);
  std::vector<std::complex<double>> a(grid.size()), b(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    a[k] = v[k];
    b[k] = sv[k];
  }
  fft->forward(a);
  fft->forward(b);
  const FourierSymbols z(grid);
  for (int i = 0; i < grid.rows(); ++i)
    for (int j = 0; j < grid.cols(); ++j) {
      const auto k = grid.index(i, j);
      EXPECT_LT(std::abs(b[k] - std::polar(1.0, z.zi[i]) * a[k]), 1e-12);
    }
}

TEST(Helmholtz, MatchesDenseOracle) {
  std::mt19937_64 gen(4);
  for (const Grid grid : {Grid(8, 8), Grid(6, 9, 0.5), Grid(5, 4, 2.0)}) {
    for (int t = 0; t < 5; ++t) {
      const ScalarField rhs = random_scalar(grid, gen);
      SpectralReport rep;
      const ScalarField u = solve_helmholtz(rhs, 0.3, 1.7, &rep);
      EXPECT_LT(rel_err(u, oracle::helmholtz(rhs, 0.3, 1.7)), 1e-10);
      EXPECT_LT(rep.max_imag, 1e-12);
    }
  }
}

TEST(Helmholtz, ResidualWithGridOperators) {
  std::mt19937_64 gen(5);
  const Grid grid(16, 12, 0.8);
  const ScalarField rhs = random_scalar(grid, gen);
  const double tau = 0.1, eta = 3.0, h2 = grid.cell_area();
  const ScalarField u = solve_helmholtz(rhs, tau, eta);
  const ScalarField lap = div_bwd(grad_fwd(u));
  ScalarField res(grid);
  for (std::size_t k = 0; k < res.size(); ++k) res[k] = h2 * (tau * u[k] - eta * lap[k]) - rhs[k];
  EXPECT_LT(max_abs(res), 1e-12);
}

TEST(Helmholtz, ConstantRhs) {
  const Grid grid(8, 8);
  const ScalarField u = solve_helmholtz(ScalarField(grid, 0.6), 0.2, 5.0);
  for (std::size_t k = 0; k < u.size(); ++k) EXPECT_NEAR(u[k], 3.0, 1e-13);
}

TEST(Block2x2, MatchesDenseOracle) {
  std::mt19937_64 gen(6);
  for (const Grid grid : {Grid(8, 8), Grid(7, 10, 0.6)}) {
    for (const double c1 : {0.0, 0.4, 3.0}) {
      const ScalarField w1 = random_scalar(grid, gen), w2 = random_scalar(grid, gen);
      const VectorField2 lam = solve_block2x2(w1, w2, 1.3, c1);
      const VectorField2 ref = oracle::block2x2(w1, w2, 1.3, c1);
      EXPECT_LT(rel_err(lam[0], ref[0]), 1e-10) << c1;
      EXPECT_LT(rel_err(lam[1], ref[1]), 1e-10) << c1;
    }
  }
}

TEST(Block2x2, ResidualWithGridOperators) {
  std::mt19937_64 gen(7);
  const Grid grid(12, 9);
  const VectorField2 w = random_vector(grid, gen);
  const double g1 = 1.0, c1 = 2.5;
  const VectorField2 lam = solve_block2x2(w[0], w[1], g1, c1);
  const VectorField2 gd = grad_fwd(div_bwd(lam));
  for (int r = 0; r < 2; ++r) {
    ScalarField res(grid);
    for (std::size_t k = 0; k < res.size(); ++k) res[k] = g1 * lam[r][k] - c1 * gd[r][k] - w[r][k];
    EXPECT_LT(max_abs(res), 1e-12);
  }
}

TEST(Block2x2, ZeroCouplingIsPointwise) {
  std::mt19937_64 gen(8);
  const Grid grid(6, 6);
  const VectorField2 w = random_vector(grid, gen);
  const VectorField2 lam = solve_block2x2(w[0], w[1], 2.0, 0.0);
  for (std::size_t k = 0; k < grid.size(); ++k) EXPECT_EQ(lam[0][k], w[0][k] / 2.0);
}

TEST(Poisson, MatchesDenseOracle) {
  std::mt19937_64 gen(9);
  for (const Grid grid : {Grid(8, 8), Grid(9, 6, 0.4)}) {
    for (int t = 0; t < 5; ++t) {
      ScalarField rhs = random_scalar(grid, gen);
      rhs -= ScalarField(grid, rhs.mean());
      const ScalarField v = solve_poisson_mean(rhs, 0.25);
      EXPECT_LT(rel_err(v, oracle::poisson_mean(rhs, 0.25)), 1e-10);
      EXPECT_NEAR(v.mean(), 0.25, 1e-13);
    }
  }
}

TEST(Poisson, RoundTripsGradients) {
  std::mt19937_64 gen(10);
  const Grid grid(16, 16);
  const ScalarField v0 = random_scalar(grid, gen);
  const ScalarField v = solve_poisson_mean(div_bwd(grad_fwd(v0)), v0.mean());
  EXPECT_LT(max_abs_diff(v, v0), 1e-11);
}

TEST(Poisson, RejectsNonzeroMeanRhs) {
  const Grid grid(4, 4);
  EXPECT_THROW(solve_poisson_mean(ScalarField(grid, 1.0), 0.0), std::invalid_argument);
}

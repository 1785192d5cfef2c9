#pragma once

#include <Eigen/Dense>
#include <random>

#include "elastica/grid.hpp"
#include "elastica/metric.hpp"

namespace testing_support {

using namespace elastica;

inline ScalarField random_scalar(const Grid& grid, std::mt19937_64& gen, double lo = -1.0,
                                 double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  ScalarField out(grid);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = dist(gen);
  return out;
}

inline VectorField2 random_vector(const Grid& grid, std::mt19937_64& gen) {
  return VectorField2(random_scalar(grid, gen), random_scalar(grid, gen));
}

inline ColorField random_color(const Grid& grid, std::mt19937_64& gen, double lo = 0.0,
                               double hi = 1.0) {
  return ColorField(random_scalar(grid, gen, lo, hi), random_scalar(grid, gen, lo, hi),
                    random_scalar(grid, gen, lo, hi));
}

inline GradientField random_gradient(const Grid& grid, std::mt19937_64& gen) {
  return GradientField(random_vector(grid, gen), random_vector(grid, gen), random_vector(grid, gen));
}

inline Jacobian random_jacobian(std::mt19937_64& gen, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  Jacobian q;
  for (auto& r : q) r = {n(gen), n(gen)};
  return q;
}

// Dense periodic difference matrices acting on row-major vectors,
// assembled entry by entry.
struct Stencils {
  Eigen::MatrixXd d1p, d2p, d1m, d2m;
};

inline Stencils dense_stencils(int M, int N, double h) {
  const int n = M * N;
  Stencils s{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n),
             Eigen::MatrixXd::Zero(n, n)};
  auto id = [&](int i, int j) { return ((i + M) % M) * N + ((j + N) % N); };
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < N; ++j) {
      const int r = id(i, j);
      s.d1p(r, id(i + 1, j)) += 1.0 / h;
      s.d1p(r, r) -= 1.0 / h;
      s.d2p(r, id(i, j + 1)) += 1.0 / h;
      s.d2p(r, r) -= 1.0 / h;
      s.d1m(r, r) += 1.0 / h;
      s.d1m(r, id(i - 1, j)) -= 1.0 / h;
      s.d2m(r, r) += 1.0 / h;
      s.d2m(r, id(i, j - 1)) -= 1.0 / h;
    }
  }
  return s;
}

inline Eigen::VectorXd to_eigen(const ScalarField& v) {
  Eigen::VectorXd out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k];
  return out;
}

inline ScalarField from_eigen(const Grid& grid, const Eigen::VectorXd& v) {
  ScalarField out(grid);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = v[k];
  return out;
}

inline double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

inline double max_abs(const ScalarField& a) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k]));
  return m;
}

}  // namespace testing_support

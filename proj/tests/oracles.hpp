#pragma once

// Reference computations that do not share code paths with the library:
// dense stencil solves, a generic KKT solve for the pixel projections, and
// a derivative-free minimiser for the pixel proximal problems.

#include <Eigen/Dense>
#include <cmath>
#include <functional>

#include "support.hpp"

namespace oracle {

using namespace elastica;
using testing_support::dense_stencils;
using testing_support::from_eigen;
using testing_support::to_eigen;

inline ScalarField helmholtz(const ScalarField& rhs, double tau, double eta) {
  const Grid& grid = rhs.grid();
  const double h = grid.spacing();
  const auto s = dense_stencils(grid.rows(), grid.cols(), h);
  const int n = static_cast<int>(grid.size());
  const Eigen::MatrixXd lap = s.d1m * s.d1p + s.d2m * s.d2p;
  const Eigen::MatrixXd A = h * h * (tau * Eigen::MatrixXd::Identity(n, n) - eta * lap);
  return from_eigen(grid, A.partialPivLu().solve(to_eigen(rhs)));
}

inline VectorField2 block2x2(const ScalarField& w1, const ScalarField& w2, double gamma1,
                             double c1) {
  const Grid& grid = w1.grid();
  const auto s = dense_stencils(grid.rows(), grid.cols(), grid.spacing());
  const int n = static_cast<int>(grid.size());
  Eigen::MatrixXd A(2 * n, 2 * n);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  // gamma1 lambda - c1 grad^+(div^- lambda)
  A.block(0, 0, n, n) = gamma1 * I - c1 * s.d1p * s.d1m;
  A.block(0, n, n, n) = -c1 * s.d1p * s.d2m;
  A.block(n, 0, n, n) = -c1 * s.d2p * s.d1m;
  A.block(n, n, n, n) = gamma1 * I - c1 * s.d2p * s.d2m;
  Eigen::VectorXd b(2 * n);
  b << to_eigen(w1), to_eigen(w2);
  const Eigen::VectorXd x = A.partialPivLu().solve(b);
  return VectorField2(from_eigen(grid, x.head(n)), from_eigen(grid, x.tail(n)));
}

/// Bordered system [L 1; 1^T 0] for the mean-constrained Poisson problem.
inline ScalarField poisson_mean(const ScalarField& rhs, double mean_value) {
  const Grid& grid = rhs.grid();
  const auto s = dense_stencils(grid.rows(), grid.cols(), grid.spacing());
  const int n = static_cast<int>(grid.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + 1, n + 1);
  A.topLeftCorner(n, n) = s.d1m * s.d1p + s.d2m * s.d2p;
  A.block(0, n, n, 1).setOnes();
  A.block(n, 0, 1, n).setOnes();
  Eigen::VectorXd b(n + 1);
  b << to_eigen(rhs), n * mean_value;
  const Eigen::VectorXd x = A.fullPivLu().solve(b);
  return from_eigen(grid, x.head(n));
}

/// alpha^2 + alpha sum_k |q_k|^2 + sum_{k<l} det(q_k; q_l)^2
inline double metric_expansion(const Jacobian& q, double alpha) {
  double norms = 0.0, cross = 0.0;
  for (int k = 0; k < 3; ++k) {
    norms += q[k][0] * q[k][0] + q[k][1] * q[k][1];
    for (int l = k + 1; l < 3; ++l) {
      const double d = q[k][0] * q[l][1] - q[k][1] * q[l][0];
      cross += d * d;
    }
  }
  return alpha * alpha + alpha * norms + cross;
}

/// Minimises |q - p|^2 + gamma1 |mu - lambda|^2 per row subject to
/// c_q q + mu B = 0 (B symmetric 2x2, c_q scalar) via the full KKT system.
inline void kkt_project(Jacobian& p, Jacobian& lambda, double cq, const Eigen::Matrix2d& B,
                        double gamma1) {
  for (int k = 0; k < 3; ++k) {
    Eigen::Matrix<double, 6, 6> K = Eigen::Matrix<double, 6, 6>::Zero();
    Eigen::Matrix<double, 6, 1> rhs = Eigen::Matrix<double, 6, 1>::Zero();
    K(0, 0) = K(1, 1) = 1.0;
    K(2, 2) = K(3, 3) = gamma1;
    rhs << p[k][0], p[k][1], gamma1 * lambda[k][0], gamma1 * lambda[k][1], 0.0, 0.0;
    // constraint row r: cq q_r + sum_c mu_c B(c, r) = 0
    Eigen::Matrix<double, 2, 4> A = Eigen::Matrix<double, 2, 4>::Zero();
    for (int r = 0; r < 2; ++r) {
      A(r, r) = cq;
      A(r, 2) = B(0, r);
      A(r, 3) = B(1, r);
    }
    K.block<4, 2>(0, 4) = A.transpose();
    K.block<2, 4>(4, 0) = A;
    const Eigen::Matrix<double, 6, 1> x = K.fullPivLu().solve(rhs);
    p[k] = {x[0], x[1]};
    lambda[k] = {x[2], x[3]};
  }
}

inline void project_S(Jacobian& p, Jacobian& lambda, const Sym2& G, double g, double gamma1) {
  Eigen::Matrix2d B;
  B << G.g11, G.g12, G.g12, G.g22;
  // sqrt(g) q - mu G = 0
  kkt_project(p, lambda, std::sqrt(g), -B, gamma1);
}

/// With the roles swapped: d nu - q cof(G) = 0, unknowns ordered (q, nu).
inline void project_S_tilde(Jacobian& p, Jacobian& lambda, const Sym2& G, double g, double alpha,
                            double gamma1) {
  const double d = std::sqrt(std::max(g - alpha * alpha, 0.0));
  for (int k = 0; k < 3; ++k) {
    Eigen::Matrix<double, 6, 6> K = Eigen::Matrix<double, 6, 6>::Zero();
    Eigen::Matrix<double, 6, 1> rhs;
    K(0, 0) = K(1, 1) = 1.0;
    K(2, 2) = K(3, 3) = gamma1;
    rhs << p[k][0], p[k][1], gamma1 * lambda[k][0], gamma1 * lambda[k][1], 0.0, 0.0;
    Eigen::Matrix2d C;
    C << G.g22, -G.g12, -G.g12, G.g11;
    Eigen::Matrix<double, 2, 4> A = Eigen::Matrix<double, 2, 4>::Zero();
    for (int r = 0; r < 2; ++r) {
      A(r, 0) = -C(0, r);
      A(r, 1) = -C(1, r);
      A(r, 2 + r) = d;
    }
    K.block<4, 2>(0, 4) = A.transpose();
    K.block<2, 4>(4, 0) = A;
    const Eigen::Matrix<double, 6, 1> x = K.fullPivLu().solve(rhs);
    p[k] = {x[0], x[1]};
    lambda[k] = {x[2], x[3]};
  }
}

/// Cyclic coordinate descent with golden-section line searches.
inline Jacobian coordinate_minimise(const std::function<double(const Jacobian&)>& f, Jacobian x,
                                    int sweeps = 400, double tol = 1e-12) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    double moved = 0.0;
    for (int idx = 0; idx < 6; ++idx) {
      double& xi = x[idx / 2][idx % 2];
      const double x0 = xi;
      auto phi = [&](double t) {
        xi = t;
        return f(x);
      };
      double radius = 0.5;
      double lo = x0 - radius, hi = x0 + radius;
      // grow the bracket until the interior point beats both ends
      while (true) {
        const double flo = phi(lo), fhi = phi(hi), fmid = phi(x0);
        if (fmid <= flo && fmid <= fhi) break;
        radius *= 2.0;
        lo = x0 - radius;
        hi = x0 + radius;
      }
      double a = lo, b = hi;
      double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
      double fc = phi(c), fd = phi(d);
      while (b - a > 1e-14 * (1.0 + std::abs(a) + std::abs(b))) {
        if (fc < fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - inv_phi * (b - a);
          fc = phi(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + inv_phi * (b - a);
          fd = phi(d);
        }
      }
      xi = 0.5 * (a + b);
      moved = std::max(moved, std::abs(xi - x0));
    }
    if (moved < tol) break;
  }
  return x;
}

/// Pixel energy behind the Model::One fixed point.
inline double prox_energy_one(const Jacobian& q, const Jacobian& p, double s, double tau,
                              double alpha) {
  double quad = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int r = 0; r < 2; ++r) quad += (q[k][r] - p[k][r]) * (q[k][r] - p[k][r]);
  return quad / (2.0 * tau) + s * std::sqrt(metric_expansion(q, alpha));
}

/// Model::Two: the penalty sqrt(x) - eps log(sqrt(x) + eps), x = m - alpha^2,
/// has gradient q cof(G) / (sqrt(x) + eps), which is what the fixed point uses.
inline double prox_energy_two(const Jacobian& q, const Jacobian& p, double s, double tau,
                              double alpha, double eps) {
  double quad = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int r = 0; r < 2; ++r) quad += (q[k][r] - p[k][r]) * (q[k][r] - p[k][r]);
  const double x = std::max(metric_expansion(q, alpha) - alpha * alpha, 0.0);
  const double r = std::sqrt(x);
  return quad / (2.0 * tau) + s * (r - eps * std::log(r + eps));
}

}  // namespace oracle

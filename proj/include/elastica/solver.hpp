#pragma once

// Operator-splitting denoisers for the two modified colour-elastica models.
//
// Model::One regularizes with (1 + beta sum_k g |Lap_g v_k|^2) sqrt(g),
// Model::Two with the shifted metric g - alpha^2 in place of g. Both carry
// the fidelity 1/(2 eta) |v - f|^2. Each outer iteration runs three
// fractional steps on (p, lambda, G):
//
//   1. proximal step of the regularizer in p (pixel-wise fixed point),
//      relaxation of G, frozen-coefficient elliptic solve for lambda;
//   2. projection of (p, lambda) onto the constraint set fixed by G,
//      relaxation of G;
//   3. fidelity step: Helmholtz solve for u, p = grad u, relaxation of G.
//
// The final image is reconstructed from p by a mean-constrained Poisson
// solve.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "elastica/energies.hpp"
#include "elastica/grid.hpp"
#include "elastica/metric.hpp"

namespace elastica {

enum class C1Policy { FrozenMax, FrozenConst };
enum class Init { FromData, Zero };

struct SolverConfig {
  Model model = Model::One;
  double alpha = 5e-4;
  double beta = 50.0;
  double eta = 3.0;
  double tau = 0.1;
  double gamma1 = 1.0;
  double gamma2 = 3.0;
  /// Inner fixed-point tolerance (sup norm of the update).
  double xi1 = 1e-5;
  double eps = 1e-3;
  /// Outer stopping tolerance on ||u^{n+1} - u^n||_F / ||u^n||_F.
  double zeta = 1e-5;
  int max_outer = 500;
  int max_inner = 50;
  C1Policy c1_policy = C1Policy::FrozenMax;
  /// Used when c1_policy == FrozenConst.
  double c1_value = 0.0;
  Init init = Init::FromData;

  /// Defaults for SD 0.06 Gaussian noise.
  static SolverConfig defaults(Model model);

  /// Throws std::invalid_argument on a violated positivity constraint.
  void validate() const;
};

struct SolverState {
  GradientField p;
  GradientField lambda;
  MetricField G;
  ScalarField g;
  ColorField u;
  int n = 0;
};

struct IterationHistory {
  /// Functional value at u^0.
  double initial_energy = 0.0;
  std::vector<double> energy;
  std::vector<double> rel_change;

  std::size_t size() const { return rel_change.size(); }
};

/// Raised when a non-finite value appears during the outer loop.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(int iteration, const std::string& what);
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

SolverState initialize(const ColorField& f, const SolverConfig& cfg);

/// s = 1 + beta sum_k (div^- lambda_k)^2.
ScalarField elastica_weight(const GradientField& lambda, double beta);

/// Pixel-wise fixed point for argmin |q - p|^2 / (2 tau) + s sqrt(m(q))
/// (Model::One) or its shifted, eps-regularized counterpart (Model::Two).
GradientField fixed_point_p(const GradientField& p_prev, const ScalarField& s,
                            const SolverConfig& cfg);

struct FixedPointResult {
  Jacobian q;
  int iterations = 0;
  bool converged = false;
};
FixedPointResult fixed_point_pixel(const Jacobian& p, double s, const SolverConfig& cfg);

/// Exact solution of dG/dt = -gamma2 (G - M(p)) over one step tau.
std::pair<MetricField, ScalarField> relax_G(const MetricField& G, const GradientField& p,
                                            const SolverConfig& cfg);

/// Frozen-coefficient solve of gamma1 lambda - 2 beta tau grad^+(d div^- lambda) = gamma1
/// lambda_prev with d = sqrt(g) (Model::One) or sqrt(g - alpha^2) (Model::Two).
GradientField lambda_step(const GradientField& lambda_prev, const ScalarField& g,
                          const SolverConfig& cfg);

/// The constant c1 the lambda step freezes for a given g.
double frozen_c1(const ScalarField& g, const SolverConfig& cfg);

struct Projection {
  GradientField p;
  GradientField lambda;
};

/// Projection onto sqrt(g) q_k = mu_k G in the (1, gamma1)-weighted norm.
Projection project_S(const GradientField& p, const GradientField& lambda, const MetricField& G,
                     const ScalarField& g, const SolverConfig& cfg);

/// Projection onto sqrt(g - alpha^2) nu_k = q_k cof(G).
Projection project_S_tilde(const GradientField& p, const GradientField& lambda,
                           const MetricField& G, const ScalarField& g, const SolverConfig& cfg);

/// Per-pixel projection kernels; rows are updated in place.
void project_S_pixel(Jacobian& p, Jacobian& lambda, const Sym2& G, double g, double gamma1);
void project_S_tilde_pixel(Jacobian& p, Jacobian& lambda, const Sym2& G, double g, double alpha,
                           double gamma1);

struct UStep {
  ColorField u;
  GradientField p;
};

/// Solves -eta div^-(grad^+ u) + tau u = -eta div^- p + tau f per channel.
UStep u_step(const GradientField& p, const ColorField& f, const SolverConfig& cfg);

/// Solves div^-(grad^+ v_k) = div^- p_k with mean(v_k) = mean(f_k).
ColorField reconstruct_u(const GradientField& p, const ColorField& f);

struct DenoiseResult {
  ColorField u;
  IterationHistory history;
  int iterations = 0;
  bool converged = false;
};

/// Runs the splitting scheme. With track_energy off, history.energy stays
/// empty.
DenoiseResult denoise(const ColorField& f, const SolverConfig& cfg, bool track_energy = true);

}  // namespace elastica

#pragma once

// Geometric regularizer energies of colour images and relative-energy
// analysis. Discrete convention: q = grad^+ f per channel, the
// Laplace-Beltrami parts are div^- of the pixel-wise mu / nu fields, and
// integrals are sums times h^2.

#include <optional>
#include <string_view>

#include "elastica/grid.hpp"

namespace elastica {

enum class Model { One = 1, Two = 2 };

struct SurfaceAreas {
  double a0 = 0.0;  // sum sqrt(g)
  double a1 = 0.0;  // sum sqrt(g - alpha^2)
};

struct ElasticaTerms {
  double e0 = 0.0;
  double e1 = 0.0;  // power variant when m_power > 1
  double e2 = 0.0;
};

struct EnergyParams {
  double alpha = 1e-3;
  double beta = 30.0;
  /// Regularisation of the nu-field denominator.
  double eps = 1e-3;
  int m_power = 1;
};

struct EnergyReport {
  double alpha = 0.0;
  double beta = 0.0;
  int m_power = 1;
  double A0 = 0.0, A1 = 0.0;
  double E0 = 0.0, E1 = 0.0, E2 = 0.0;
  double F0 = 0.0, F1 = 0.0, F2 = 0.0;
  double F_PA = 0.0, F_CTV = 0.0, F_VTV = 0.0;
};

enum class Regularizer { A0, A1, E0, E1, E2, F0, F1, F2, PA, CTV, VTV };

std::string_view to_string(Regularizer r);
std::optional<Regularizer> parse_regularizer(std::string_view name);

SurfaceAreas surface_areas(const ColorField& f, double alpha);

/// E0 = sum_k |div mu_k|^2 / sqrt(g)
/// E1 = sum_k g^(m-1) |div mu_k|^2 sqrt(g)
/// E2 = sum_k (g - alpha^2)^(m-1) |div nu_k|^2 sqrt(g - alpha^2)
ElasticaTerms elastica_terms(const ColorField& f, double alpha, int m_power = 1,
                             double eps = 1e-3);

double ctv_energy(const ColorField& f);
/// Sum of the largest singular value of the per-pixel 3x2 Jacobian.
double vtv_energy(const ColorField& f);

/// Discrete isotropic TV with forward differences.
double total_variation(const ScalarField& v);

/// sum (a + b * (div^-(grad^+ v / (|grad^+ v| + eps)))^2) |grad^+ v| h^2
double euler_elastica_gray(const ScalarField& v, double a, double b, double eps);

EnergyReport energy_report(const ColorField& f, const EnergyParams& params);
double value_of(const EnergyReport& report, Regularizer which);
double evaluate(const ColorField& f, Regularizer which, const EnergyParams& params);

/// F(noisy) / F(clean). Throws std::domain_error when F(clean) == 0.
double relative_energy(const ColorField& noisy, const ColorField& clean, Regularizer which,
                       const EnergyParams& params);

/// Value of the full denoising functional (regularizer + fidelity 1/(2 eta)).
double model_functional(const ColorField& u, const ColorField& f, Model model, double alpha,
                        double beta, double eta, double eps);

}  // namespace elastica

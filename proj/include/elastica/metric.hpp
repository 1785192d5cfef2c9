#pragma once

// Metric tensor of the colour image manifold.
//
// For a 3x2 Jacobian q (row k = gradient of channel k):
//   M(q) = alpha I + q^T q,  m(q) = det M(q) >= alpha^2.

#include <array>
#include <cstddef>

#include "elastica/grid.hpp"

namespace elastica {

using Row2 = std::array<double, 2>;
using Jacobian = std::array<Row2, 3>;

/// Symmetric 2x2 matrix [[g11, g12], [g12, g22]].
struct Sym2 {
  double g11 = 0.0;
  double g12 = 0.0;
  double g22 = 0.0;

  double det() const { return g11 * g22 - g12 * g12; }
  /// [[g22, -g12], [-g12, g11]]; G cof(G)^T = det(G) I.
  Sym2 cofactor() const { return {g22, -g12, g11}; }
  double trace() const { return g11 + g22; }
};

/// Row vector times symmetric matrix.
inline Row2 times(const Row2& r, const Sym2& m) {
  return {r[0] * m.g11 + r[1] * m.g12, r[0] * m.g12 + r[1] * m.g22};
}

Sym2 metric_at(const Jacobian& q, double alpha);

Jacobian gather(const GradientField& q, std::size_t pix);
void scatter(GradientField& q, std::size_t pix, const Jacobian& value);

struct MetricField {
  MetricField(const Grid& grid, double alpha);

  const Grid& grid() const { return g11.grid(); }
  Sym2 at(std::size_t pix) const { return {g11[pix], g12[pix], g22[pix]}; }
  void set(std::size_t pix, const Sym2& m) {
    g11[pix] = m.g11;
    g12[pix] = m.g12;
    g22[pix] = m.g22;
  }

  ScalarField g11;
  ScalarField g12;
  ScalarField g22;
  double alpha;
};

/// Per-pixel M(q). Throws std::invalid_argument for alpha <= 0.
MetricField metric_tensor(const GradientField& q, double alpha);

ScalarField determinant(const MetricField& G);
MetricField cofactor(const MetricField& G);

/// mu_k = sqrt(g) q_k G^{-1} = q_k cof(G) / sqrt(g). Throws if det G <= 0.
GradientField mu_field(const GradientField& q, const MetricField& G);

/// nu_k = q_k cof(G) / (sqrt(max(g - alpha^2, 0)) + eps).
GradientField nu_field(const GradientField& q, const MetricField& G, double alpha, double eps);

// Pixel kernels shared by the field versions, the energies and the solver.
Jacobian mu_at(const Jacobian& q, const Sym2& G);
Jacobian nu_at(const Jacobian& q, const Sym2& G, double alpha, double eps);

}  // namespace elastica

#include "elastica/metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace elastica {

Sym2 metric_at(const Jacobian& q, double alpha) {
  Sym2 m{alpha, 0.0, alpha};
  for (const Row2& r : q) {
    m.g11 += r[0] * r[0];
    m.g12 += r[0] * r[1];
    m.g22 += r[1] * r[1];
  }
  return m;
}

Jacobian gather(const GradientField& q, std::size_t pix) {
  Jacobian out;
  for (int k = 0; k < 3; ++k) out[k] = {q.at(k, 0, pix), q.at(k, 1, pix)};
  return out;
}

void scatter(GradientField& q, std::size_t pix, const Jacobian& value) {
  for (int k = 0; k < 3; ++k) {
    q.at(k, 0, pix) = value[k][0];
    q.at(k, 1, pix) = value[k][1];
  }
}

MetricField::MetricField(const Grid& grid, double a)
    : g11(grid, a), g12(grid, 0.0), g22(grid, a), alpha(a) {}

MetricField metric_tensor(const GradientField& q, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("metric_tensor: alpha must be positive");
  MetricField G(q.grid(), alpha);
  for (std::size_t pix = 0; pix < q.grid().size(); ++pix) G.set(pix, metric_at(gather(q, pix), alpha));
  return G;
}

ScalarField determinant(const MetricField& G) {
  ScalarField out(G.grid());
  for (std::size_t pix = 0; pix < out.size(); ++pix) out[pix] = G.at(pix).det();
  return out;
}

MetricField cofactor(const MetricField& G) {
  MetricField out(G.grid(), G.alpha);
  for (std::size_t pix = 0; pix < G.grid().size(); ++pix) out.set(pix, G.at(pix).cofactor());
  return out;
}

Jacobian mu_at(const Jacobian& q, const Sym2& G) {
  const double det = G.det();
  if (!(det > 0.0)) throw std::invalid_argument("mu_field: metric is not positive definite");
  const double inv_root = 1.0 / std::sqrt(det);
  const Sym2 cof = G.cofactor();
  Jacobian out;
  for (int k = 0; k < 3; ++k) {
    const Row2 r = times(q[k], cof);
    out[k] = {r[0] * inv_root, r[1] * inv_root};
  }
  return out;
}

Jacobian nu_at(const Jacobian& q, const Sym2& G, double alpha, double eps) {
  const double denom = std::sqrt(std::max(G.det() - alpha * alpha, 0.0)) + eps;
  const Sym2 cof = G.cofactor();
  Jacobian out{};
  if (denom == 0.0) return out;  // flat pixel with eps = 0: q cof(G) vanishes too
  for (int k = 0; k < 3; ++k) {
    const Row2 r = times(q[k], cof);
    out[k] = {r[0] / denom, r[1] / denom};
  }
  return out;
}

GradientField mu_field(const GradientField& q, const MetricField& G) {
  require_same_grid(q.grid(), G.grid(), "mu_field");
  GradientField out(q.grid());
  for (std::size_t pix = 0; pix < q.grid().size(); ++pix) scatter(out, pix, mu_at(gather(q, pix), G.at(pix)));
  return out;
}

GradientField nu_field(const GradientField& q, const MetricField& G, double alpha, double eps) {
  require_same_grid(q.grid(), G.grid(), "nu_field");
  if (eps < 0.0) throw std::invalid_argument("nu_field: eps must be nonnegative");
  GradientField out(q.grid());
  for (std::size_t pix = 0; pix < q.grid().size(); ++pix) {
    scatter(out, pix, nu_at(gather(q, pix), G.at(pix), alpha, eps));
  }
  return out;
}

}  // namespace elastica

#include <gtest/gtest.h>

#include <random>

#include "elastica/metric.hpp"
#include "oracles.hpp"

using namespace elastica;
using namespace testing_support;

TEST(Metric, DeterminantMatchesChannelExpansion) {
  std::mt19937_64 gen(1);
  for (int t = 0; t < 2000; ++t) {
    const double alpha = std::pow(10.0, -3.0 + 3.0 * (t % 7) / 6.0);
    const Jacobian q = random_jacobian(gen);
    const Sym2 G = metric_at(q, alpha);
    const double ref = oracle::metric_expansion(q, alpha);
    EXPECT_NEAR(G.det(), ref, 1e-12 * std::max(1.0, ref));
    EXPECT_GE(G.det(), alpha * alpha);
  }
}

TEST(Metric, FlatImageGivesAlphaIdentity) {
  const Grid grid(4, 5);
  const MetricField G = metric_tensor(GradientField(grid), 0.2);
  const ScalarField g = determinant(G);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_EQ(G.g11[k], 0.2);
    EXPECT_EQ(G.g12[k], 0.0);
    EXPECT_EQ(G.g22[k], 0.2);
    EXPECT_NEAR(g[k], 0.04, 1e-17);
  }
}

TEST(Metric, RejectsNonpositiveAlpha) {
  const Grid grid(3, 3);
  EXPECT_THROW(metric_tensor(GradientField(grid), 0.0), std::invalid_argument);
  EXPECT_THROW(metric_tensor(GradientField(grid), -1.0), std::invalid_argument);
}

TEST(Metric, CofactorIdentity) {
  std::mt19937_64 gen(2);
  const Sym2 G = metric_at(random_jacobian(gen), 0.3);
  const Sym2 C = G.cofactor();
  // G C = det(G) I
  EXPECT_NEAR(G.g11 * C.g11 + G.g12 * C.g12, G.det(), 1e-12);
  EXPECT_NEAR(G.g11 * C.g12 + G.g12 * C.g22, 0.0, 1e-12);
  EXPECT_NEAR(G.g12 * C.g12 + G.g22 * C.g22, G.det(), 1e-12);
}

TEST(Metric, MuSatisfiesDefiningRelation) {
  std::mt19937_64 gen(3);
  const Grid grid(6, 7);
  const GradientField q = random_gradient(grid, gen);
  const MetricField G = metric_tensor(q, 1e-2);
  const GradientField mu = mu_field(q, G);
  for (std::size_t pix = 0; pix < grid.size(); ++pix) {
    const Sym2 m = G.at(pix);
    const double rg = std::sqrt(m.det());
    for (int k = 0; k < 3; ++k) {
      const Row2 lhs = times({mu.at(k, 0, pix), mu.at(k, 1, pix)}, m);
      EXPECT_NEAR(lhs[0], rg * q.at(k, 0, pix), 1e-12);
      EXPECT_NEAR(lhs[1], rg * q.at(k, 1, pix), 1e-12);
    }
  }
}

TEST(Metric, NuRelationAndFlatPixels) {
  std::mt19937_64 gen(4);
  const double alpha = 3e-2, eps = 1e-3;
  const Grid grid(5, 5);
  GradientField q = random_gradient(grid, gen);
  for (int k = 0; k < 3; ++k) q.at(k, 0, 0) = q.at(k, 1, 0) = 0.0;
  const MetricField G = metric_tensor(q, alpha);
  const GradientField nu = nu_field(q, G, alpha, eps);
  for (std::size_t pix = 0; pix < grid.size(); ++pix) {
    const Sym2 m = G.at(pix);
    const double d = std::sqrt(std::max(m.det() - alpha * alpha, 0.0)) + eps;
    for (int k = 0; k < 3; ++k) {
      const Row2 rhs = times({q.at(k, 0, pix), q.at(k, 1, pix)}, m.cofactor());
      EXPECT_NEAR(d * nu.at(k, 0, pix), rhs[0], 1e-12);
      EXPECT_NEAR(d * nu.at(k, 1, pix), rhs[1], 1e-12);
    }
  }
  // eps = 0 at a flat pixel is defined as zero
  const GradientField nu0 = nu_field(q, G, alpha, 0.0);
  EXPECT_EQ(nu0.at(1, 1, 0), 0.0);
  EXPECT_THROW(nu_field(q, G, alpha, -1.0), std::invalid_argument);
}

TEST(Metric, MuRejectsSingularMetric) {
  const Grid grid(3, 3);
  MetricField G(grid, 1.0);
  G.g11[4] = 0.0;
  EXPECT_THROW(mu_field(GradientField(grid), G), std::invalid_argument);
}

TEST(Metric, GrayscaleMuIsNormalisedGradient) {
  // (v, 0, 0): mu_1 = sqrt(alpha) q / sqrt(alpha + |q|^2)
  const double alpha = 0.05;
  const Jacobian q{Row2{0.3, -0.4}, Row2{0, 0}, Row2{0, 0}};
  const Jacobian mu = mu_at(q, metric_at(q, alpha));
  const double scale = std::sqrt(alpha) / std::sqrt(alpha + 0.25);
  EXPECT_NEAR(mu[0][0], 0.3 * scale, 1e-14);
  EXPECT_NEAR(mu[0][1], -0.4 * scale, 1e-14);
  EXPECT_EQ(mu[1][0], 0.0);
}

#include "elastica/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

#include "elastica/spectral.hpp"

namespace elastica {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string("SolverConfig: ") + name + " must be positive");
  }
}

// d = sqrt(g) for Model::One, sqrt((g - alpha^2)_+) for Model::Two.
double lambda_weight(double g, const SolverConfig& cfg) {
  if (cfg.model == Model::One) return std::sqrt(g);
  return std::sqrt(std::max(g - cfg.alpha * cfg.alpha, 0.0));
}

GradientField lambda_of(const GradientField& p, const MetricField& G, const SolverConfig& cfg) {
  return cfg.model == Model::One ? mu_field(p, G) : nu_field(p, G, cfg.alpha, cfg.eps);
}

}  // namespace

DivergenceError::DivergenceError(int iteration, const std::string& what)
    : std::runtime_error("diverged at outer iteration " + std::to_string(iteration) + ": " + what),
      iteration_(iteration) {}

SolverConfig SolverConfig::defaults(Model model) {
  SolverConfig c;
  c.model = model;
  if (model == Model::One) {
    c.alpha = 5e-4;
    c.beta = 50.0;
    c.eta = 3.0;
  } else {
    c.alpha = 3e-2;
    c.beta = 30.0;
    c.eta = 0.2;
  }
  return c;
}

void SolverConfig::validate() const {
  require_positive(alpha, "alpha");
  require_positive(eta, "eta");
  require_positive(tau, "tau");
  require_positive(gamma1, "gamma1");
  require_positive(gamma2, "gamma2");
  if (!(beta >= 0.0)) throw std::invalid_argument("SolverConfig: beta must be >= 0");
  if (!(xi1 >= 0.0)) throw std::invalid_argument("SolverConfig: xi1 must be >= 0");
  if (!(zeta >= 0.0)) throw std::invalid_argument("SolverConfig: zeta must be >= 0");
  if (!(eps >= 0.0)) throw std::invalid_argument("SolverConfig: eps must be >= 0");
  if (model == Model::Two && !(eps > 0.0)) {
    throw std::invalid_argument("SolverConfig: Model 2 needs eps > 0");
  }
  if (max_outer < 1 || max_inner < 1) {
    throw std::invalid_argument("SolverConfig: iteration caps must be >= 1");
  }
  if (c1_policy == C1Policy::FrozenConst && !(c1_value >= 0.0)) {
    throw std::invalid_argument("SolverConfig: c1 must be >= 0");
  }
}

SolverState initialize(const ColorField& f, const SolverConfig& cfg) {
  const Grid& grid = f.grid();
  ColorField u0 = cfg.init == Init::FromData ? f : ColorField(grid);
  GradientField p = grad_fwd(u0);
  MetricField G = metric_tensor(p, cfg.alpha);
  ScalarField g = determinant(G);
  if (!all_finite(g)) throw DivergenceError(0, "metric overflows at initialization");
  GradientField lambda = lambda_of(p, G, cfg);
  return SolverState{std::move(p), std::move(lambda), std::move(G), std::move(g), std::move(u0), 0};
}

ScalarField elastica_weight(const GradientField& lambda, double beta) {
  const ColorField div = div_bwd(lambda);
  ScalarField s(lambda.grid(), 1.0);
  for (std::size_t pix = 0; pix < s.size(); ++pix) {
    double acc = 0.0;
    for (int k = 0; k < 3; ++k) acc += div[k][pix] * div[k][pix];
    s[pix] += beta * acc;
  }
  return s;
}

FixedPointResult fixed_point_pixel(const Jacobian& p, double s, const SolverConfig& cfg) {
  const double st = s * cfg.tau;
  const double a2 = cfg.alpha * cfg.alpha;
  FixedPointResult r{p, 0, false};
  Jacobian& q = r.q;
  while (r.iterations < cfg.max_inner) {
    const Sym2 G = metric_at(q, cfg.alpha);
    const double m = G.det();
    const double w = cfg.model == Model::One ? std::sqrt(m)
                                             : std::sqrt(std::max(m - a2, 0.0)) + cfg.eps;
    double change = 0.0;
    Jacobian next;
    for (int k = 0; k < 3; ++k) {
      // (w p + st g12 q') / (w + st g22), written as an increment of p
      next[k][0] = p[k][0] + st * (G.g12 * q[k][1] - G.g22 * p[k][0]) / (w + st * G.g22);
      next[k][1] = p[k][1] + st * (G.g12 * q[k][0] - G.g11 * p[k][1]) / (w + st * G.g11);
      change = std::max({change, std::abs(next[k][0] - q[k][0]), std::abs(next[k][1] - q[k][1])});
    }
    q = next;
    ++r.iterations;
    if (change < cfg.xi1) {
      r.converged = true;
      break;
    }
  }
  return r;
}

GradientField fixed_point_p(const GradientField& p_prev, const ScalarField& s,
                            const SolverConfig& cfg) {
  require_same_grid(p_prev.grid(), s.grid(), "fixed_point_p");
  GradientField out(p_prev.grid());
  for (std::size_t pix = 0; pix < s.size(); ++pix) {
    scatter(out, pix, fixed_point_pixel(gather(p_prev, pix), s[pix], cfg).q);
  }
  return out;
}

std::pair<MetricField, ScalarField> relax_G(const MetricField& G, const GradientField& p,
                                            const SolverConfig& cfg) {
  require_same_grid(G.grid(), p.grid(), "relax_G");
  const double w = std::exp(-cfg.gamma2 * cfg.tau);
  MetricField out(G.grid(), cfg.alpha);
  ScalarField g(G.grid());
  for (std::size_t pix = 0; pix < g.size(); ++pix) {
    const Sym2 a = G.at(pix);
    const Sym2 b = metric_at(gather(p, pix), cfg.alpha);
    const Sym2 c{w * a.g11 + (1.0 - w) * b.g11, w * a.g12 + (1.0 - w) * b.g12,
                 w * a.g22 + (1.0 - w) * b.g22};
    out.set(pix, c);
    g[pix] = c.det();
  }
  return {std::move(out), std::move(g)};
}

double frozen_c1(const ScalarField& g, const SolverConfig& cfg) {
  if (cfg.c1_policy == C1Policy::FrozenConst) return cfg.c1_value;
  double dmax = 0.0;
  for (std::size_t pix = 0; pix < g.size(); ++pix) dmax = std::max(dmax, lambda_weight(g[pix], cfg));
  return 2.0 * cfg.beta * cfg.tau * dmax;
}

GradientField lambda_step(const GradientField& lambda_prev, const ScalarField& g,
                          const SolverConfig& cfg) {
  require_same_grid(lambda_prev.grid(), g.grid(), "lambda_step");
  if (cfg.beta == 0.0) return lambda_prev;
  const Grid& grid = g.grid();
  const double c1 = frozen_c1(g, cfg);
  ScalarField coef(grid);
  for (std::size_t pix = 0; pix < g.size(); ++pix) {
    coef[pix] = 2.0 * cfg.beta * cfg.tau * lambda_weight(g[pix], cfg) - c1;
  }
  GradientField out(grid);
  for (int k = 0; k < 3; ++k) {
    ScalarField t = div_bwd(lambda_prev[k]);
    for (std::size_t pix = 0; pix < t.size(); ++pix) t[pix] *= coef[pix];
    const VectorField2 corr = grad_fwd(t);
    ScalarField w1 = cfg.gamma1 * lambda_prev[k][0];
    ScalarField w2 = cfg.gamma1 * lambda_prev[k][1];
    w1 += corr[0];
    w2 += corr[1];
    out[k] = solve_block2x2(w1, w2, cfg.gamma1, c1);
  }
  return out;
}

void project_S_pixel(Jacobian& p, Jacobian& lambda, const Sym2& G, double g, double gamma1) {
  const double g11 = G.g11, g12 = G.g12, g22 = G.g22;
  const double rg = std::sqrt(g);
  const double a1 = -(g11 * g11 + g12 * g12) / gamma1 - g;
  const double a2 = -(g11 * g12 + g12 * g22) / gamma1;
  const double b1 = a2;
  const double b2 = -(g12 * g12 + g22 * g22) / gamma1 - g;
  const double det = a1 * b2 - a2 * b1;
  // relative test; an absolute one would misfire for small alpha
  if (!(std::abs(det) > 1e-14 * (std::abs(a1 * b2) + std::abs(a2 * b1)))) return;
  for (int k = 0; k < 3; ++k) {
    const double a3 = lambda[k][0] * g11 + lambda[k][1] * g12 - rg * p[k][0];
    const double b3 = lambda[k][0] * g12 + lambda[k][1] * g22 - rg * p[k][1];
    const double s1 = (a2 * b3 - a3 * b2) / det;
    const double s2 = (a3 * b1 - a1 * b3) / det;
    lambda[k][0] -= (g11 * s1 + g12 * s2) / gamma1;
    lambda[k][1] -= (g12 * s1 + g22 * s2) / gamma1;
    p[k][0] += rg * s1;
    p[k][1] += rg * s2;
  }
}

void project_S_tilde_pixel(Jacobian& p, Jacobian& lambda, const Sym2& G, double g, double alpha,
                           double gamma1) {
  const double g11 = G.g11, g12 = G.g12, g22 = G.g22;
  const double shifted = std::max(g - alpha * alpha, 0.0);
  const double d = std::sqrt(shifted);
  // Stationarity: q = p - s cof(G), nu = lambda + (d / gamma1) s, with
  // (cof(G)^2 + (d^2 / gamma1) I) s = p cof(G) - d lambda. cof(G)^2 is SPD
  // since det cof(G) = g >= alpha^2, so flat pixels (d = 0) need no special case.
  const double a1 = -(g22 * g22 + g12 * g12) - shifted / gamma1;
  const double a2 = g12 * g22 + g11 * g12;
  const double b1 = a2;
  const double b2 = -(g11 * g11 + g12 * g12) - shifted / gamma1;
  const double det = a1 * b2 - a2 * b1;
  if (!(std::abs(det) > 1e-14 * (std::abs(a1 * b2) + std::abs(a2 * b1)))) return;
  for (int k = 0; k < 3; ++k) {
    const double a3 = g22 * p[k][0] - g12 * p[k][1] - d * lambda[k][0];
    const double b3 = -g12 * p[k][0] + g11 * p[k][1] - d * lambda[k][1];
    const double s1 = (a2 * b3 - a3 * b2) / det;
    const double s2 = (a3 * b1 - a1 * b3) / det;
    lambda[k][0] += d * s1 / gamma1;
    lambda[k][1] += d * s2 / gamma1;
    p[k][0] -= g22 * s1 - g12 * s2;
    p[k][1] -= -g12 * s1 + g11 * s2;
  }
}

namespace {

template <typename Kernel>
Projection project_fields(const GradientField& p, const GradientField& lambda,
                          const MetricField& G, const ScalarField& g, Kernel kernel) {
  require_same_grid(p.grid(), lambda.grid(), "project");
  require_same_grid(p.grid(), G.grid(), "project");
  require_same_grid(p.grid(), g.grid(), "project");
  Projection out{p, lambda};
  for (std::size_t pix = 0; pix < g.size(); ++pix) {
    Jacobian pp = gather(p, pix);
    Jacobian ll = gather(lambda, pix);
    kernel(pp, ll, G.at(pix), g[pix]);
    scatter(out.p, pix, pp);
    scatter(out.lambda, pix, ll);
  }
  return out;
}

}  // namespace

Projection project_S(const GradientField& p, const GradientField& lambda, const MetricField& G,
                     const ScalarField& g, const SolverConfig& cfg) {
  return project_fields(p, lambda, G, g, [&](Jacobian& pp, Jacobian& ll, const Sym2& m, double gv) {
    project_S_pixel(pp, ll, m, gv, cfg.gamma1);
  });
}

Projection project_S_tilde(const GradientField& p, const GradientField& lambda,
                           const MetricField& G, const ScalarField& g, const SolverConfig& cfg) {
  return project_fields(p, lambda, G, g, [&](Jacobian& pp, Jacobian& ll, const Sym2& m, double gv) {
    project_S_tilde_pixel(pp, ll, m, gv, cfg.alpha, cfg.gamma1);
  });
}

UStep u_step(const GradientField& p, const ColorField& f, const SolverConfig& cfg) {
  require_same_grid(p.grid(), f.grid(), "u_step");
  const double h2 = f.grid().cell_area();
  const ColorField div = div_bwd(p);
  ColorField u(f.grid());
  for (int k = 0; k < 3; ++k) {
    ScalarField rhs(f.grid());
    for (std::size_t pix = 0; pix < rhs.size(); ++pix) {
      rhs[pix] = -cfg.eta * h2 * div[k][pix] + cfg.tau * h2 * f[k][pix];
    }
    u[k] = solve_helmholtz(rhs, cfg.tau, cfg.eta);
  }
  GradientField q = grad_fwd(u);
  return {std::move(u), std::move(q)};
}

ColorField reconstruct_u(const GradientField& p, const ColorField& f) {
  require_same_grid(p.grid(), f.grid(), "reconstruct_u");
  const ColorField div = div_bwd(p);
  ColorField u(f.grid());
  for (int k = 0; k < 3; ++k) u[k] = solve_poisson_mean(div[k], f[k].mean());
  return u;
}

DenoiseResult denoise(const ColorField& f, const SolverConfig& cfg, bool track_energy) {
  cfg.validate();
  if (!all_finite(f)) throw std::invalid_argument("denoise: input has non-finite values");

  SolverState st = initialize(f, cfg);
  DenoiseResult result{f, {}, 0, false};
  IterationHistory& hist = result.history;
  auto energy_of = [&](const ColorField& u) {
    return model_functional(u, f, cfg.model, cfg.alpha, cfg.beta, cfg.eta, cfg.eps);
  };
  if (track_energy) hist.initial_energy = energy_of(st.u);

  for (int n = 0; n < cfg.max_outer; ++n) {
    // step 1
    const ScalarField s = elastica_weight(st.lambda, cfg.beta);
    st.p = fixed_point_p(st.p, s, cfg);
    std::tie(st.G, st.g) = relax_G(st.G, st.p, cfg);
    st.lambda = lambda_step(st.lambda, st.g, cfg);

    // step 2
    Projection proj = cfg.model == Model::One ? project_S(st.p, st.lambda, st.G, st.g, cfg)
                                              : project_S_tilde(st.p, st.lambda, st.G, st.g, cfg);
    st.p = std::move(proj.p);
    st.lambda = std::move(proj.lambda);
    std::tie(st.G, st.g) = relax_G(st.G, st.p, cfg);

    // step 3
    UStep us = u_step(st.p, f, cfg);
    std::tie(st.G, st.g) = relax_G(st.G, us.p, cfg);
    st.p = std::move(us.p);

    if (!all_finite(us.u) || !all_finite(st.p) || !all_finite(st.lambda)) {
      throw DivergenceError(n + 1, "non-finite values in u, p or lambda");
    }

    const double base = frobenius_norm(st.u);
    ColorField diff(us.u[0] - st.u[0], us.u[1] - st.u[1], us.u[2] - st.u[2]);
    const double change = frobenius_norm(diff);
    const double rel = base > 0.0 ? change / base : change;
    st.u = std::move(us.u);
    st.n = n + 1;

    hist.rel_change.push_back(rel);
    if (track_energy) {
      const double e = energy_of(st.u);
      if (!std::isfinite(e)) throw DivergenceError(n + 1, "non-finite energy");
      hist.energy.push_back(e);
    }
    result.iterations = n + 1;
    if (rel <= cfg.zeta) {
      result.converged = true;
      break;
    }
  }
  result.u = reconstruct_u(st.p, f);
  if (!all_finite(result.u)) throw DivergenceError(result.iterations, "reconstruction failed");
  return result;
}

}  // namespace elastica

#include "elastica/grid.hpp"

#include <cmath>
#include <string>

namespace elastica {

Grid::Grid(int rows, int cols, double spacing) : rows_(rows), cols_(cols), spacing_(spacing) {
  if (rows < 2 || cols < 2) {
    throw std::invalid_argument("Grid: need at least 2x2 pixels, got " + std::to_string(rows) +
                                "x" + std::to_string(cols));
  }
  if (!(spacing > 0.0)) {
    throw std::invalid_argument("Grid: spacing must be positive");
  }
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) {
    throw GridMismatch(std::string(where) + ": fields live on different grids");
  }
}

ScalarField::ScalarField(const Grid& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("ScalarField: value count does not match grid");
  }
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_, "ScalarField::operator+=");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_, "ScalarField::operator-=");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

double ScalarField::sum() const { return pairwise_sum(values_); }

double ScalarField::mean() const { return sum() / static_cast<double>(values_.size()); }

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

VectorField2::VectorField2(ScalarField c1, ScalarField c2) : comp{std::move(c1), std::move(c2)} {
  require_same_grid(comp[0].grid(), comp[1].grid(), "VectorField2");
}

ColorField::ColorField(ScalarField c1, ScalarField c2, ScalarField c3)
    : channel{std::move(c1), std::move(c2), std::move(c3)} {
  require_same_grid(channel[0].grid(), channel[1].grid(), "ColorField");
  require_same_grid(channel[0].grid(), channel[2].grid(), "ColorField");
}

GradientField::GradientField(VectorField2 r1, VectorField2 r2, VectorField2 r3)
    : row{std::move(r1), std::move(r2), std::move(r3)} {
  require_same_grid(row[0].grid(), row[1].grid(), "GradientField");
  require_same_grid(row[0].grid(), row[2].grid(), "GradientField");
}

VectorField2 grad_fwd(const ScalarField& v) {
  const Grid& g = v.grid();
  const double inv_h = 1.0 / g.spacing();
  VectorField2 out(g);
  for (int i = 0; i < g.rows(); ++i) {
    const int ip = (i + 1 == g.rows()) ? 0 : i + 1;
    for (int j = 0; j < g.cols(); ++j) {
      const int jp = (j + 1 == g.cols()) ? 0 : j + 1;
      const double c = v(i, j);
      out.comp[0](i, j) = (v(ip, j) - c) * inv_h;
      out.comp[1](i, j) = (v(i, jp) - c) * inv_h;
    }
  }
  return out;
}

VectorField2 grad_bwd(const ScalarField& v) {
  const Grid& g = v.grid();
  const double inv_h = 1.0 / g.spacing();
  VectorField2 out(g);
  for (int i = 0; i < g.rows(); ++i) {
    const int im = (i == 0) ? g.rows() - 1 : i - 1;
    for (int j = 0; j < g.cols(); ++j) {
      const int jm = (j == 0) ? g.cols() - 1 : j - 1;
      const double c = v(i, j);
      out.comp[0](i, j) = (c - v(im, j)) * inv_h;
      out.comp[1](i, j) = (c - v(i, jm)) * inv_h;
    }
  }
  return out;
}

ScalarField div_bwd(const VectorField2& w) {
  const Grid& g = w.grid();
  const double inv_h = 1.0 / g.spacing();
  const ScalarField& w1 = w.comp[0];
  const ScalarField& w2 = w.comp[1];
  ScalarField out(g);
  for (int i = 0; i < g.rows(); ++i) {
    const int im = (i == 0) ? g.rows() - 1 : i - 1;
    for (int j = 0; j < g.cols(); ++j) {
      const int jm = (j == 0) ? g.cols() - 1 : j - 1;
      out(i, j) = ((w1(i, j) - w1(im, j)) + (w2(i, j) - w2(i, jm))) * inv_h;
    }
  }
  return out;
}

ScalarField div_fwd(const VectorField2& w) {
  const Grid& g = w.grid();
  const double inv_h = 1.0 / g.spacing();
  const ScalarField& w1 = w.comp[0];
  const ScalarField& w2 = w.comp[1];
  ScalarField out(g);
  for (int i = 0; i < g.rows(); ++i) {
    const int ip = (i + 1 == g.rows()) ? 0 : i + 1;
    for (int j = 0; j < g.cols(); ++j) {
      const int jp = (j + 1 == g.cols()) ? 0 : j + 1;
      out(i, j) = ((w1(ip, j) - w1(i, j)) + (w2(i, jp) - w2(i, j))) * inv_h;
    }
  }
  return out;
}

GradientField grad_fwd(const ColorField& v) {
  return GradientField(grad_fwd(v[0]), grad_fwd(v[1]), grad_fwd(v[2]));
}

ColorField div_bwd(const GradientField& w) {
  return ColorField(div_bwd(w[0]), div_bwd(w[1]), div_bwd(w[2]));
}

double pairwise_sum(std::span<const double> xs) {
  constexpr std::size_t kLeaf = 64;
  if (xs.size() <= kLeaf) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double inner(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "inner");
  std::vector<double> prod(a.size());
  for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = a[k] * b[k];
  return pairwise_sum(prod) * a.grid().cell_area();
}

double inner(const VectorField2& a, const VectorField2& b) {
  return inner(a.comp[0], b.comp[0]) + inner(a.comp[1], b.comp[1]);
}

double inner(const ColorField& a, const ColorField& b) {
  return inner(a[0], b[0]) + inner(a[1], b[1]) + inner(a[2], b[2]);
}

double inner(const GradientField& a, const GradientField& b) {
  return inner(a[0], b[0]) + inner(a[1], b[1]) + inner(a[2], b[2]);
}

double frobenius_norm(const ColorField& v) {
  double s = 0.0;
  for (const auto& c : v.channel) {
    std::vector<double> sq(c.size());
    for (std::size_t k = 0; k < sq.size(); ++k) sq[k] = c[k] * c[k];
    s += pairwise_sum(sq);
  }
  return std::sqrt(s);
}

ScalarField shifted(const ScalarField& v, int di, int dj) {
  const Grid& g = v.grid();
  ScalarField out(g);
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) out(i, j) = v.wrapped(i - di, j - dj);
  return out;
}

ColorField shifted(const ColorField& v, int di, int dj) {
  return ColorField(shifted(v[0], di, dj), shifted(v[1], di, dj), shifted(v[2], di, dj));
}

bool all_finite(const ScalarField& v) {
  for (double x : v.values())
    if (!std::isfinite(x)) return false;
  return true;
}

bool all_finite(const ColorField& v) {
  return all_finite(v[0]) && all_finite(v[1]) && all_finite(v[2]);
}

bool all_finite(const GradientField& v) {
  for (const auto& r : v.row)
    if (!all_finite(r.comp[0]) || !all_finite(r.comp[1])) return false;
  return true;
}

}  // namespace elastica

#pragma once

// Periodic raster fields and the forward/backward difference calculus.
//
// Index convention: (i, j) with 0 <= i < rows, 0 <= j < cols, stored
// row-major. Direction 1 runs along i (rows), direction 2 along j (cols).
// Every index is taken modulo the grid size.

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace elastica {

class Grid {
 public:
  Grid(int rows, int cols, double spacing = 1.0);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double spacing() const { return spacing_; }
  std::size_t size() const { return static_cast<std::size_t>(rows_) * cols_; }

  /// Area element h^2.
  double cell_area() const { return spacing_ * spacing_; }

  int wrap_row(int i) const {
    i %= rows_;
    return i < 0 ? i + rows_ : i;
  }
  int wrap_col(int j) const {
    j %= cols_;
    return j < 0 ? j + cols_ : j;
  }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * cols_ + j;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int rows_;
  int cols_;
  double spacing_;
};

/// Thrown when two fields on different grids are combined.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void require_same_grid(const Grid& a, const Grid& b, const char* where);

class ScalarField {
 public:
  explicit ScalarField(const Grid& grid, double fill = 0.0);
  ScalarField(const Grid& grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
  double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }

  /// Periodic access; i and j may lie outside the grid.
  double wrapped(int i, int j) const {
    return values_[grid_.index(grid_.wrap_row(i), grid_.wrap_col(j))];
  }

  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s);

  double sum() const;
  double mean() const;

  bool operator==(const ScalarField& other) const = default;

 private:
  Grid grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/// A 2-vector per pixel: one row q_k = (q_k1, q_k2) of a Jacobian.
struct VectorField2 {
  explicit VectorField2(const Grid& grid) : comp{ScalarField(grid), ScalarField(grid)} {}
  VectorField2(ScalarField c1, ScalarField c2);

  const Grid& grid() const { return comp[0].grid(); }
  ScalarField& operator[](int r) { return comp[r]; }
  const ScalarField& operator[](int r) const { return comp[r]; }

  bool operator==(const VectorField2&) const = default;

  std::array<ScalarField, 2> comp;
};

/// RGB image: three channel planes on one grid.
struct ColorField {
  explicit ColorField(const Grid& grid, double fill = 0.0)
      : channel{ScalarField(grid, fill), ScalarField(grid, fill), ScalarField(grid, fill)} {}
  ColorField(ScalarField c1, ScalarField c2, ScalarField c3);

  const Grid& grid() const { return channel[0].grid(); }
  ScalarField& operator[](int k) { return channel[k]; }
  const ScalarField& operator[](int k) const { return channel[k]; }

  bool operator==(const ColorField&) const = default;

  std::array<ScalarField, 3> channel;
};

/// 3x2 matrix field: row k is the spatial gradient of channel k.
struct GradientField {
  explicit GradientField(const Grid& grid)
      : row{VectorField2(grid), VectorField2(grid), VectorField2(grid)} {}
  GradientField(VectorField2 r1, VectorField2 r2, VectorField2 r3);

  const Grid& grid() const { return row[0].grid(); }
  VectorField2& operator[](int k) { return row[k]; }
  const VectorField2& operator[](int k) const { return row[k]; }

  /// Entry q_kr at flat pixel index.
  double& at(int k, int r, std::size_t pix) { return row[k].comp[r][pix]; }
  double at(int k, int r, std::size_t pix) const { return row[k].comp[r][pix]; }

  bool operator==(const GradientField&) const = default;

  std::array<VectorField2, 3> row;
};

// Difference operators. All wrap periodically.
VectorField2 grad_fwd(const ScalarField& v);
VectorField2 grad_bwd(const ScalarField& v);
ScalarField div_bwd(const VectorField2& w);
ScalarField div_fwd(const VectorField2& w);

// Channel-wise versions.
GradientField grad_fwd(const ColorField& v);
ColorField div_bwd(const GradientField& w);

/// Sum of entrywise products times h^2, reduced pairwise so the result does
/// not depend on loop scheduling.
double inner(const ScalarField& a, const ScalarField& b);
double inner(const VectorField2& a, const VectorField2& b);
double inner(const ColorField& a, const ColorField& b);
double inner(const GradientField& a, const GradientField& b);

/// Deterministic pairwise summation.
double pairwise_sum(std::span<const double> xs);

/// Frobenius norm over all channels (no h^2 factor).
double frobenius_norm(const ColorField& v);

/// Periodic shift: out(i, j) = v(i - di, j - dj).
ScalarField shifted(const ScalarField& v, int di, int dj);
ColorField shifted(const ColorField& v, int di, int dj);

bool all_finite(const ScalarField& v);
bool all_finite(const ColorField& v);
bool all_finite(const GradientField& v);

}  // namespace elastica

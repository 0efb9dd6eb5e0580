#pragma once

// Uniform rectangular grids, scalar fields sampled on them, and the
// second-order finite-difference calculus used throughout the library.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

namespace phaselab {

struct Bounds {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// nx x ny nodes on [x_min, x_max] x [y_min, y_max], both ends included.
class Grid2D {
 public:
  Grid2D(int nx, int ny, Bounds bounds = {});

  static Grid2D square(int n, Bounds bounds = {}) { return Grid2D(n, n, bounds); }

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(nx_) * ny_; }
  const Bounds& bounds() const noexcept { return bounds_; }
  double hx() const noexcept { return hx_; }
  double hy() const noexcept { return hy_; }

  double x(int i) const noexcept { return bounds_.x_min + i * hx_; }
  double y(int j) const noexcept { return bounds_.y_min + j * hy_; }
  /// Row-major, x fastest.
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j) * nx_ + i;
  }
  bool is_boundary(int i, int j) const noexcept {
    return i == 0 || j == 0 || i == nx_ - 1 || j == ny_ - 1;
  }
  bool contains(double x, double y) const noexcept {
    return x >= bounds_.x_min && x <= bounds_.x_max && y >= bounds_.y_min && y <= bounds_.y_max;
  }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 private:
  int nx_;
  int ny_;
  Bounds bounds_;
  double hx_;
  double hy_;
};

class ScalarField2D {
 public:
  /// Zero-filled field.
  explicit ScalarField2D(Grid2D grid, double z = 0.0);
  /// Takes ownership of values; throws unless size matches and all are finite.
  ScalarField2D(Grid2D grid, std::vector<double> values, double z = 0.0);

  /// Evaluate f(x, y) at every node.
  static ScalarField2D sample(const Grid2D& grid, double z,
                              const std::function<double(double, double)>& f);

  const Grid2D& grid() const noexcept { return grid_; }
  double z() const noexcept { return z_; }
  void set_z(double z) noexcept { z_ = z; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  const double* data() const noexcept { return values_.data(); }
  double* data() noexcept { return values_.data(); }
  std::size_t size() const noexcept { return values_.size(); }

  double operator()(int i, int j) const noexcept { return values_[grid_.index(i, j)]; }
  double& operator()(int i, int j) noexcept { return values_[grid_.index(i, j)]; }

  double min() const;
  double max() const;
  double mean() const;

 private:
  Grid2D grid_;
  std::vector<double> values_;
  double z_;
};

/// Slices on one grid with strictly increasing, uniformly spaced z.
class FieldStack {
 public:
  explicit FieldStack(std::vector<ScalarField2D> slices);

  std::size_t size() const noexcept { return slices_.size(); }
  const ScalarField2D& operator[](std::size_t k) const { return slices_[k]; }
  const Grid2D& grid() const { return slices_.front().grid(); }
  /// 0 for a single slice.
  double dz() const noexcept { return dz_; }
  auto begin() const noexcept { return slices_.begin(); }
  auto end() const noexcept { return slices_.end(); }

 private:
  std::vector<ScalarField2D> slices_;
  double dz_ = 0.0;
};

/// Throws GridMismatch if the grids differ.
void require_same_grid(const ScalarField2D& a, const ScalarField2D& b, const char* what);

struct Gradient {
  ScalarField2D dx;
  ScalarField2D dy;
};

/// Central differences inside, second-order one-sided on the boundary.
Gradient fd_gradient(const ScalarField2D& f);

/// 5-point Laplacian inside; boundary nodes use second-order one-sided
/// second derivatives along the normal direction.
ScalarField2D fd_laplacian(const ScalarField2D& f);

/// Reduced intensity term lap(sqrt I) / sqrt I. Throws NonPositiveIntensity.
ScalarField2D compute_i_hat(const ScalarField2D& intensity);

/// div(c grad phi) in conservative flux form with arithmetic-mean face
/// coefficients. Interior nodes only; boundary nodes are set to 0.
ScalarField2D fd_divergence_of_flux(const ScalarField2D& coef, const ScalarField2D& phi);

/// d/dz of slice k: central inside the stack, second-order one-sided at the ends.
ScalarField2D stack_z_derivative(const FieldStack& stack, std::size_t slice_index);

struct ErrorNorms {
  double l2_rel = 0.0;
  double linf_rel = 0.0;
  double linf_abs = 0.0;
  /// max_n |a_n - b_n| / |b_n| over nodes with b_n != 0.
  double max_pointwise_rel = 0.0;
  /// Set when ||b|| = 0 and the relative norms hold absolute values.
  bool absolute_fallback = false;
};

enum class NormRegion { All, Interior };

/// Norms of a - b relative to b.
ErrorNorms field_error_norms(const ScalarField2D& a, const ScalarField2D& b,
                             NormRegion region = NormRegion::All);

double linf(const ScalarField2D& f, NormRegion region = NormRegion::All);

// .fld text format: '#key=value' header lines, then ny rows of nx values.
void write_fld(const std::filesystem::path& path, const ScalarField2D& field);
ScalarField2D read_fld(const std::filesystem::path& path);

}  // namespace phaselab

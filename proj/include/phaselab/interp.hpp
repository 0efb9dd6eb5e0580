#pragma once

#include "phaselab/grid.hpp"

namespace phaselab {

struct InterpSample {
  double value = 0.0;
  double dx = 0.0;
  double dy = 0.0;
};

/// C1 bicubic (Keys cubic convolution, a = -1/2) interpolation of a field,
/// with edge ghost nodes extrapolated as f(-1) = 3f(0) - 3f(1) + f(2).
/// Derivatives are those of the interpolant.
class BicubicInterpolator {
 public:
  explicit BicubicInterpolator(ScalarField2D field);

  /// Throws InterpolationOutOfDomain outside the grid rectangle.
  InterpSample operator()(double x, double y) const;

  const ScalarField2D& field() const noexcept { return field_; }

 private:
  double node(int i, int j) const;

  ScalarField2D field_;
};

}  // namespace phaselab

#include "phaselab/interp.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "phaselab/error.hpp"

namespace phaselab {

namespace {

struct Weights {
  std::array<double, 4> w;
  std::array<double, 4> dw;
};

Weights keys_weights(double t) {
  const double t2 = t * t, t3 = t2 * t;
  return {{0.5 * (-t + 2.0 * t2 - t3), 0.5 * (2.0 - 5.0 * t2 + 3.0 * t3),
           0.5 * (t + 4.0 * t2 - 3.0 * t3), 0.5 * (-t2 + t3)},
          {0.5 * (-1.0 + 4.0 * t - 3.0 * t2), 0.5 * (-10.0 * t + 9.0 * t2),
           0.5 * (1.0 + 8.0 * t - 9.0 * t2), 0.5 * (-2.0 * t + 3.0 * t2)}};
}

// Cell index and local coordinate along one axis.
std::pair<int, double> locate(double u, double lo, double h, int n) {
  const double s = (u - lo) / h;
  const int c = std::clamp(static_cast<int>(std::floor(s)), 0, n - 2);
  return {c, s - c};
}

}  // namespace

BicubicInterpolator::BicubicInterpolator(ScalarField2D field) : field_(std::move(field)) {}

double BicubicInterpolator::node(int i, int j) const {
  const int nx = field_.grid().nx(), ny = field_.grid().ny();
  if (i < 0) return 3.0 * node(0, j) - 3.0 * node(1, j) + node(2, j);
  if (i >= nx) return 3.0 * node(nx - 1, j) - 3.0 * node(nx - 2, j) + node(nx - 3, j);
  if (j < 0) return 3.0 * node(i, 0) - 3.0 * node(i, 1) + node(i, 2);
  if (j >= ny) return 3.0 * node(i, ny - 1) - 3.0 * node(i, ny - 2) + node(i, ny - 3);
  return field_(i, j);
}

InterpSample BicubicInterpolator::operator()(double x, double y) const {
  const Grid2D& g = field_.grid();
  require(g.contains(x, y), ErrorCode::InterpolationOutOfDomain,
          "point (" + std::to_string(x) + ", " + std::to_string(y) + ") outside sampled grid");
  const auto [ci, tx] = locate(x, g.bounds().x_min, g.hx(), g.nx());
  const auto [cj, ty] = locate(y, g.bounds().y_min, g.hy(), g.ny());
  const Weights wx = keys_weights(tx);
  const Weights wy = keys_weights(ty);
  InterpSample out;
  for (int b = 0; b < 4; ++b) {
    double row = 0.0, drow = 0.0;
    for (int a = 0; a < 4; ++a) {
      const double f = node(ci - 1 + a, cj - 1 + b);
      row += wx.w[a] * f;
      drow += wx.dw[a] * f;
    }
    out.value += wy.w[b] * row;
    out.dx += wy.w[b] * drow;
    out.dy += wy.dw[b] * row;
  }
  out.dx /= g.hx();
  out.dy /= g.hy();
  return out;
}

}  // namespace phaselab

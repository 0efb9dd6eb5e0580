#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include "phaselab/grid.hpp"

namespace testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

/// c0 + c1 x + c2 y + c3 x^2 + c4 xy + c5 y^2 with random coefficients.
struct Quadratic {
  double c[6];
  Quadratic() {
    for (double& v : c) v = uniform(-2.0, 2.0);
  }
  double operator()(double x, double y) const {
    return c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y + c[5] * y * y;
  }
  double dx(double x, double y) const { return c[1] + 2.0 * c[3] * x + c[4] * y; }
  double dy(double x, double y) const { return c[2] + c[4] * x + 2.0 * c[5] * y; }
  double lap() const { return 2.0 * c[3] + 2.0 * c[5]; }
};

/// Smooth random field: a few low-frequency sinusoids.
inline phaselab::ScalarField2D smooth_field(const phaselab::Grid2D& g, double amplitude = 1.0) {
  const double a = uniform(-1, 1), b = uniform(-1, 1), c = uniform(-1, 1);
  const double fx = uniform(0.5, 3.0), fy = uniform(0.5, 3.0);
  return phaselab::ScalarField2D::sample(g, 0.0, [=](double x, double y) {
    return amplitude * (a * std::sin(fx * x + c) + b * std::cos(fy * y) + c * x * y);
  });
}

inline std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("phaselab_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline double max_abs_diff(const phaselab::ScalarField2D& a, const phaselab::ScalarField2D& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n)
    m = std::max(m, std::abs(a.values()[n] - b.values()[n]));
  return m;
}

}  // namespace testing

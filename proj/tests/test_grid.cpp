#include <doctest.h>

#include <fstream>

#include "phaselab/error.hpp"
#include "phaselab/grid.hpp"
#include "support.hpp"

using namespace phaselab;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected phaselab::Error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("grid geometry and indexing") {
  const Grid2D g(5, 3, {-1.0, 1.0, 0.0, 2.0});
  CHECK(g.hx() == 0.5);
  CHECK(g.hy() == 1.0);
  CHECK(g.x(4) == 1.0);
  CHECK(g.y(2) == 2.0);
  CHECK(g.index(2, 1) == 7);
  CHECK(g.is_boundary(0, 1));
  CHECK(g.is_boundary(2, 2));
  CHECK_FALSE(g.is_boundary(2, 1));
  CHECK(code_of([] { Grid2D(2, 5); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([] { Grid2D(4, 4, {1.0, 0.0, 0.0, 1.0}); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("field construction validates") {
  const Grid2D g = Grid2D::square(3);
  CHECK(code_of([&] { ScalarField2D(g, std::vector<double>(8)); }) == ErrorCode::DimensionMismatch);
  std::vector<double> v(9, 1.0);
  v[4] = NAN;
  CHECK(code_of([&] { ScalarField2D(g, v); }) == ErrorCode::InvalidConfig);
  const auto f = ScalarField2D::sample(g, 0.0, [](double x, double y) { return x + 10 * y; });
  CHECK(f(2, 1) == doctest::Approx(6.0));
  CHECK(f.min() == 0.0);
  CHECK(f.max() == doctest::Approx(11.0));
  CHECK(f.mean() == doctest::Approx(5.5));
}

TEST_CASE("finite differences are exact on quadratics, boundary included") {
  for (int trial = 0; trial < 10; ++trial) {
    const testing::Quadratic q;
    const int n = 5 + trial;
    const Grid2D g(n, n + 2, {testing::uniform(-2, 0), testing::uniform(0.5, 2),
                              testing::uniform(-1, 0), testing::uniform(0.5, 3)});
    const auto f = ScalarField2D::sample(g, 0.0, q);
    const Gradient grad = fd_gradient(f);
    const ScalarField2D lap = fd_laplacian(f);
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) {
        const double x = g.x(i), y = g.y(j);
        CHECK(grad.dx(i, j) == doctest::Approx(q.dx(x, y)).epsilon(1e-9).scale(1));
        CHECK(grad.dy(i, j) == doctest::Approx(q.dy(x, y)).epsilon(1e-9).scale(1));
        CHECK(lap(i, j) == doctest::Approx(q.lap()).epsilon(1e-8).scale(1));
      }
  }
}

TEST_CASE("Laplacian on the smallest grid uses the three-point boundary formula") {
  const Grid2D g = Grid2D::square(3);
  const auto f = ScalarField2D::sample(g, 0.0, [](double x, double y) { return x * x - 3 * y * y; });
  const ScalarField2D lap = fd_laplacian(f);
  for (double v : lap.values()) CHECK(v == doctest::Approx(-4.0));
}

TEST_CASE("flux divergence with arithmetic-mean faces") {
  const Grid2D g = Grid2D::square(9);
  // div((1 + x) grad x^2) = 2 + 4x, reproduced exactly by the face-averaged stencil.
  const auto c = ScalarField2D::sample(g, 0.0, [](double x, double) { return 1.0 + x; });
  const auto phi = ScalarField2D::sample(g, 0.0, [](double x, double) { return x * x; });
  const ScalarField2D d = fd_divergence_of_flux(c, phi);
  for (int j = 1; j < 8; ++j)
    for (int i = 1; i < 8; ++i) CHECK(d(i, j) == doctest::Approx(2.0 + 4.0 * g.x(i)));
  CHECK(d(0, 4) == 0.0);

  // Unit coefficient reduces to the Laplacian.
  const auto one = ScalarField2D::sample(g, 0.0, [](double, double) { return 1.0; });
  const auto f = testing::smooth_field(g);
  const ScalarField2D a = fd_divergence_of_flux(one, f), b = fd_laplacian(f);
  for (int j = 1; j < 8; ++j)
    for (int i = 1; i < 8; ++i) CHECK(a(i, j) == doctest::Approx(b(i, j)).epsilon(1e-12));
}

TEST_CASE("Ihat is invariant under intensity scaling and rejects non-positive intensity") {
  const Grid2D g = Grid2D::square(17);
  const auto I = ScalarField2D::sample(g, 0.0, [](double x, double y) {
    return std::exp(-(x - 0.3) * (x - 0.3) - 2 * y * y) + 0.1;
  });
  ScalarField2D scaled = I;
  for (double& v : scaled.values()) v *= 7.5;
  const ScalarField2D a = compute_i_hat(I), b = compute_i_hat(scaled);
  CHECK(testing::max_abs_diff(a, b) <= 1e-10);

  ScalarField2D bad = I;
  bad(3, 3) = 0.0;
  CHECK(code_of([&] { compute_i_hat(bad); }) == ErrorCode::NonPositiveIntensity);
}

TEST_CASE("field stacks") {
  const Grid2D g = Grid2D::square(4);
  auto slice = [&](double z) {
    return ScalarField2D::sample(g, z, [z](double x, double y) { return x + y + 3 * z * z; });
  };
  const FieldStack s({slice(0.0), slice(0.5), slice(1.0)});
  CHECK(s.dz() == 0.5);
  // Central difference of 3z^2 at z = 0.5 is exact: 3.
  const ScalarField2D dz = stack_z_derivative(s, 1);
  for (double v : dz.values()) CHECK(v == doctest::Approx(3.0));
  // One-sided second-order difference is exact on quadratics too.
  const ScalarField2D d0 = stack_z_derivative(s, 0), d2 = stack_z_derivative(s, 2);
  for (double v : d0.values()) CHECK(v == doctest::Approx(0.0).scale(1));
  for (double v : d2.values()) CHECK(v == doctest::Approx(6.0));

  CHECK(code_of([&] { FieldStack({slice(0.0), slice(0.5), slice(1.2)}); }) == ErrorCode::NonUniformZ);
  CHECK(code_of([&] { FieldStack({slice(0.5), slice(0.0)}); }) == ErrorCode::NonUniformZ);
  CHECK(code_of([&] { FieldStack({slice(0.0), ScalarField2D(Grid2D::square(5), 1.0)}); }) ==
        ErrorCode::GridMismatch);
  CHECK(code_of([&] { stack_z_derivative(FieldStack({slice(0.0), slice(1.0)}), 0); }) ==
        ErrorCode::TooFewSlices);
  CHECK(code_of([&] { stack_z_derivative(s, 3); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("error norms") {
  const Grid2D g = Grid2D::square(5);
  const auto b = ScalarField2D::sample(g, 0.0, [](double x, double y) { return 1.0 + x + y; });
  ErrorNorms same = field_error_norms(b, b);
  CHECK(same.l2_rel == 0.0);
  CHECK(same.linf_abs == 0.0);
  CHECK(same.max_pointwise_rel == 0.0);

  ScalarField2D a = b;
  a(4, 4) += 0.3;  // b = 3 there
  const ErrorNorms n = field_error_norms(a, b);
  CHECK(n.linf_abs == doctest::Approx(0.3));
  CHECK(n.linf_rel == doctest::Approx(0.1));
  CHECK(n.max_pointwise_rel == doctest::Approx(0.1));
  CHECK_FALSE(n.absolute_fallback);
  CHECK(field_error_norms(a, b, NormRegion::Interior).linf_abs == 0.0);

  const ScalarField2D zero(g);
  const ErrorNorms z = field_error_norms(a, zero);
  CHECK(z.absolute_fallback);
  CHECK(z.linf_rel == doctest::Approx(a.max()));
  CHECK(code_of([&] { field_error_norms(a, ScalarField2D(Grid2D::square(4))); }) ==
        ErrorCode::GridMismatch);
}

TEST_CASE("fld files round-trip bit for bit") {
  const auto dir = testing::temp_dir("fld");
  const Grid2D g(7, 4, {-0.3, 1.7, 2.0, 2.1});
  ScalarField2D f = testing::smooth_field(g, 1e5);
  f.set_z(0.123456789);
  f(0, 0) = 1e-300;
  write_fld(dir / "f.fld", f);
  const ScalarField2D r = read_fld(dir / "f.fld");
  CHECK(r.grid() == g);
  CHECK(r.z() == f.z());
  for (std::size_t n = 0; n < f.size(); ++n) CHECK(r.values()[n] == f.values()[n]);

  CHECK(code_of([&] { read_fld(dir / "missing.fld"); }) == ErrorCode::Io);
  std::ofstream(dir / "bad.fld") << "# nx=3\n1 2 3\n";
  CHECK(code_of([&] { read_fld(dir / "bad.fld"); }) == ErrorCode::Io);
}

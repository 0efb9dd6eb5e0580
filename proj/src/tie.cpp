#include "phaselab/tie.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "phaselab/error.hpp"

namespace phaselab {

namespace {

// Shortest round-trip text for descriptors.
std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

DirichletBC::DirichletBC(ScalarField2D values, std::string descriptor)
    : values_(std::move(values)), descriptor_(std::move(descriptor)) {}

DirichletBC DirichletBC::from_function(const Grid2D& grid, std::string descriptor,
                                       const std::function<double(double, double)>& g) {
  ScalarField2D v(grid);
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      if (!grid.is_boundary(i, j)) continue;
      v(i, j) = g(grid.x(i), grid.y(j));
      require(std::isfinite(v(i, j)), ErrorCode::InvalidConfig,
              "boundary data '" + descriptor + "' is not finite");
    }
  }
  return DirichletBC(std::move(v), std::move(descriptor));
}

DirichletBC DirichletBC::constant(const Grid2D& grid, double c) {
  return from_function(grid, "constant:" + num(c), [c](double, double) { return c; });
}

DirichletBC DirichletBC::floor10x(const Grid2D& grid) {
  return from_function(grid, "floor10x", [](double x, double) { return std::floor(10.0 * x); });
}

DirichletBC DirichletBC::sine(const Grid2D& grid, double amplitude, double frequency) {
  return from_function(grid, "sin:" + num(amplitude) + "," + num(frequency),
                       [=](double x, double) {
                         return amplitude * std::sin(2.0 * std::numbers::pi * frequency * x);
                       });
}

DirichletBC DirichletBC::gaussian(const Grid2D& grid) {
  return from_function(grid, "gauss", [](double x, double y) { return std::exp(-(x * x + y * y)); });
}

DirichletBC DirichletBC::ground_truth(const Beam& beam, const Grid2D& grid, double z) {
  return from_function(grid, "truth",
                       [&](double x, double y) { return beam.phase(x, y, z); });
}

DirichletBC DirichletBC::sampled(const ScalarField2D& field, std::string descriptor) {
  const Grid2D& g = field.grid();
  return from_function(g, std::move(descriptor), [&](double x, double y) {
    const int i = static_cast<int>(std::lround((x - g.bounds().x_min) / g.hx()));
    const int j = static_cast<int>(std::lround((y - g.bounds().y_min) / g.hy()));
    return field(i, j);
  });
}

double DirichletBC::boundary_min() const {
  double m = std::numeric_limits<double>::infinity();
  const Grid2D& g = grid();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      if (g.is_boundary(i, j)) m = std::min(m, values_(i, j));
  return m;
}

double DirichletBC::boundary_max() const {
  double m = -std::numeric_limits<double>::infinity();
  const Grid2D& g = grid();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      if (g.is_boundary(i, j)) m = std::max(m, values_(i, j));
  return m;
}

DirichletBC DirichletBC::shifted(double c) const {
  ScalarField2D v = values_;
  const Grid2D& g = grid();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      if (g.is_boundary(i, j)) v(i, j) += c;
  return DirichletBC(std::move(v), descriptor_ + "+" + num(c));
}

void TieProblem::validate() const {
  require_same_grid(intensity, intensity_z, "TIE: intensity and I_z grids differ");
  require_same_grid(intensity, bc.values(), "TIE: intensity and boundary grids differ");
  require(k > 0.0, ErrorCode::InvalidConfig, "TIE needs k > 0");
  require(intensity.min() > 0.0, ErrorCode::NonPositiveIntensity,
          "TIE needs strictly positive intensity");
}

TieProblem beam_tie_problem(const Beam& beam, const Grid2D& grid, double z, DirichletBC bc) {
  return TieProblem{sample_quantity(beam, grid, z, &Beam::intensity),
                    sample_quantity(beam, grid, z, &Beam::intensity_z), beam.wavenumber(),
                    std::move(bc)};
}

namespace {

std::int32_t unknown(const Grid2D& g, int i, int j) { return (i - 1) + (j - 1) * (g.nx() - 2); }

}  // namespace

AssembledSystem assemble_dirichlet(const ScalarField2D& coef, double scale,
                                   std::span<const double> shift, const ScalarField2D& source,
                                   const ScalarField2D& boundary) {
  require_same_grid(coef, source, "assemble: coefficient and source grids differ");
  require_same_grid(coef, boundary, "assemble: coefficient and boundary grids differ");
  const Grid2D& g = coef.grid();
  const std::int32_t n = (g.nx() - 2) * (g.ny() - 2);
  require(shift.empty() || shift.size() == static_cast<std::size_t>(n),
          ErrorCode::DimensionMismatch, "assemble: shift has wrong length");
  const double ihx2 = scale / (g.hx() * g.hx());
  const double ihy2 = scale / (g.hy() * g.hy());

  std::vector<SparseMatrix::Triplet> t;
  t.reserve(static_cast<std::size_t>(n) * 5);
  std::vector<double> rhs(static_cast<std::size_t>(n));
  for (int j = 1; j < g.ny() - 1; ++j) {
    for (int i = 1; i < g.nx() - 1; ++i) {
      const std::int32_t row = unknown(g, i, j);
      const double c0 = coef(i, j);
      struct Neighbour {
        int i, j;
        double w;
      };
      const Neighbour nb[4] = {{i - 1, j, 0.5 * (coef(i - 1, j) + c0) * ihx2},
                               {i + 1, j, 0.5 * (coef(i + 1, j) + c0) * ihx2},
                               {i, j - 1, 0.5 * (coef(i, j - 1) + c0) * ihy2},
                               {i, j + 1, 0.5 * (coef(i, j + 1) + c0) * ihy2}};
      double diag = shift.empty() ? 0.0 : shift[row];
      double b = source(i, j);
      for (const Neighbour& m : nb) {
        diag += m.w;
        if (g.is_boundary(m.i, m.j))
          b += m.w * boundary(m.i, m.j);
        else
          t.push_back({row, unknown(g, m.i, m.j), -m.w});
      }
      t.push_back({row, row, diag});
      rhs[row] = b;
    }
  }
  return {SparseMatrix::from_triplets(n, std::move(t)), std::move(rhs)};
}

ScalarField2D expand_interior(std::span<const double> interior, const ScalarField2D& boundary) {
  const Grid2D& g = boundary.grid();
  require(interior.size() == static_cast<std::size_t>((g.nx() - 2) * (g.ny() - 2)),
          ErrorCode::DimensionMismatch, "interior vector has wrong length");
  ScalarField2D out = boundary;
  for (int j = 1; j < g.ny() - 1; ++j)
    for (int i = 1; i < g.nx() - 1; ++i) out(i, j) = interior[unknown(g, i, j)];
  return out;
}

AssembledSystem assemble_tie(const TieProblem& problem) {
  problem.validate();
  ScalarField2D source = problem.intensity_z;
  for (double& v : source.values()) v *= -problem.k;
  return assemble_dirichlet(problem.intensity, 1.0, {}, source, problem.bc.values());
}

namespace {

CgResult solve_checked(const AssembledSystem& sys, double tol, const char* what) {
  const JacobiPreconditioner jacobi(sys.matrix);
  CgOptions opt;
  opt.tol_rel = tol;
  opt.preconditioner = &jacobi;
  CgResult res = conjugate_gradient(sys.matrix, sys.rhs, opt);
  if (!res.report.converged)
    throw NotConvergedError(std::string(what) + ": CG stopped at relative residual " +
                                std::to_string(res.report.final_residual_rel),
                            res.report);
  return res;
}

}  // namespace

TieSolution solve_tie(const TieProblem& problem, double tol) {
  const AssembledSystem sys = assemble_tie(problem);
  CgResult res = solve_checked(sys, tol, "solve_tie");
  ScalarField2D phase = expand_interior(res.x, problem.bc.values());
  phase.set_z(problem.intensity.z());
  return {std::move(phase), res.report};
}

TeagueSolution solve_tie_teague(const TieProblem& problem, double tol) {
  problem.validate();
  const Grid2D& g = problem.intensity.grid();
  const ScalarField2D ones = ScalarField2D::sample(g, problem.intensity.z(),
                                                   [](double, double) { return 1.0; });
  const ScalarField2D zero_boundary(g, problem.intensity.z());

  // -lap psi = -k I_z, psi = 0 on the boundary.
  ScalarField2D source = problem.intensity_z;
  for (double& v : source.values()) v *= -problem.k;
  const CgResult psi_res =
      solve_checked(assemble_dirichlet(ones, 1.0, {}, source, zero_boundary), tol,
                    "solve_tie_teague (psi)");
  ScalarField2D psi = expand_interior(psi_res.x, zero_boundary);

  // -lap phi = -div(grad psi / I) with the phase boundary data.
  ScalarField2D inv_i = problem.intensity;
  for (double& v : inv_i.values()) v = 1.0 / v;
  ScalarField2D rhs2 = fd_divergence_of_flux(inv_i, psi);
  for (double& v : rhs2.values()) v = -v;
  const CgResult phi_res =
      solve_checked(assemble_dirichlet(ones, 1.0, {}, rhs2, problem.bc.values()), tol,
                    "solve_tie_teague (phase)");
  ScalarField2D phase = expand_interior(phi_res.x, problem.bc.values());
  phase.set_z(problem.intensity.z());
  return {std::move(phase), std::move(psi), psi_res.report, phi_res.report};
}

ScalarField2D tie_residual(const ScalarField2D& phase, const TieProblem& problem) {
  require_same_grid(phase, problem.intensity, "tie_residual: grids differ");
  ScalarField2D r = fd_divergence_of_flux(problem.intensity, phase);
  const Grid2D& g = r.grid();
  for (int j = 1; j < g.ny() - 1; ++j)
    for (int i = 1; i < g.nx() - 1; ++i) r(i, j) -= problem.k * problem.intensity_z(i, j);
  return r;
}

}  // namespace phaselab

#include "phaselab/viscosity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>

#include "phaselab/error.hpp"

namespace phaselab {

ColeHopfField cole_hopf_forward(const ScalarField2D& phase, double epsilon) {
  require(epsilon > 0.0, ErrorCode::InvalidConfig, "viscosity epsilon must be positive");
  const double gauge = phase.mean();
  ScalarField2D psi = phase;
  for (double& v : psi.values()) v = std::exp((v - gauge) / epsilon);
  return {std::move(psi), gauge};
}

ScalarField2D cole_hopf_inverse(const ScalarField2D& psi, double epsilon, double gauge) {
  require(epsilon > 0.0, ErrorCode::InvalidConfig, "viscosity epsilon must be positive");
  ScalarField2D phase = psi;
  for (double& v : phase.values()) {
    require(v > 0.0, ErrorCode::NonPositivePsi, "Cole-Hopf variable must stay positive");
    v = epsilon * std::log(v) + gauge;
  }
  return phase;
}

IHatSource ihat_from_model(std::shared_ptr<const IHatModel> model, const Grid2D& grid) {
  return [model = std::move(model), grid](double z) {
    return ScalarField2D::sample(grid, z,
                                 [&](double x, double y) { return (*model)(x, y, z).value; });
  };
}

IHatSource ihat_from_intensity(std::shared_ptr<const Beam> beam, const Grid2D& grid) {
  return [beam = std::move(beam), grid](double z) {
    return compute_i_hat(sample_quantity(*beam, grid, z, &Beam::intensity));
  };
}

IHatSource ihat_from_stack(FieldStack stack) {
  return [stack = std::move(stack)](double z) {
    if (stack.size() == 1) {
      ScalarField2D out = stack[0];
      out.set_z(z);
      return out;
    }
    const double z0 = stack[0].z();
    const double s = (z - z0) / stack.dz();
    const double last = static_cast<double>(stack.size() - 1);
    require(s >= -1e-9 && s <= last + 1e-9, ErrorCode::InterpolationOutOfDomain,
            "z = " + std::to_string(z) + " outside the Ihat stack");
    const auto k = static_cast<std::size_t>(std::clamp(std::floor(s), 0.0, last - 1.0));
    const double t = std::clamp(s - static_cast<double>(k), 0.0, 1.0);
    ScalarField2D out = stack[k];
    for (std::size_t n = 0; n < out.size(); ++n)
      out.values()[n] = (1.0 - t) * stack[k].values()[n] + t * stack[k + 1].values()[n];
    out.set_z(z);
    return out;
  };
}

IHatSource ihat_zero(const Grid2D& grid) {
  return [grid](double z) { return ScalarField2D(grid, z); };
}

LateralBoundary lateral_constant(double c) {
  return [c](double, double, double) { return c; };
}

LateralBoundary lateral_from_beam(std::shared_ptr<const Beam> beam) {
  return [beam = std::move(beam)](double x, double y, double z) { return beam->phase(x, y, z); };
}

namespace {

void validate(const ViscositySettings& s) {
  require(s.k > 0.0, ErrorCode::InvalidConfig, "viscosity march needs k > 0");
  require(s.epsilon > 0.0, ErrorCode::InvalidConfig, "viscosity march needs epsilon > 0");
  require(s.dz > 0.0, ErrorCode::InvalidConfig, "viscosity march needs dz > 0");
  require(static_cast<bool>(s.ihat) && static_cast<bool>(s.h), ErrorCode::InvalidConfig,
          "viscosity march needs an Ihat source and lateral boundary data");
}

// Rescales psi by a constant (folded into the gauge) so that the largest of
// psi and the incoming boundary values is 1. CG squares these values, so they
// must stay well below the overflow threshold.
void normalise(MarchState& st, const ViscositySettings& s, double z_next) {
  const Grid2D& g = st.psi.grid();
  double hi = -INFINITY;
  for (double v : st.psi.values()) hi = std::max(hi, std::log(v));
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      if (g.is_boundary(i, j)) hi = std::max(hi, (s.h(g.x(i), g.y(j), z_next) - st.gauge) / s.epsilon);
  if (!std::isfinite(hi) || hi == 0.0) return;
  const double scale = std::exp(-hi);
  for (double& v : st.psi.values()) v *= scale;
  st.gauge += s.epsilon * hi;
}

}  // namespace

CgReport viscosity_step(MarchState& st, const ViscositySettings& s) {
  validate(s);
  const Grid2D& g = st.psi.grid();
  const double z_next = st.z + s.dz;
  const double mass = 2.0 * s.k / s.dz;
  normalise(st, s, z_next);

  const ScalarField2D ihat = s.ihat(z_next);
  require_same_grid(ihat, st.psi, "viscosity step: Ihat grid differs");

  std::vector<double> shift;
  shift.reserve(static_cast<std::size_t>((g.nx() - 2) * (g.ny() - 2)));
  for (int j = 1; j < g.ny() - 1; ++j) {
    for (int i = 1; i < g.nx() - 1; ++i) {
      const double d = mass + ihat(i, j) / s.epsilon;
      if (!(d > 0.0))
        fail(ErrorCode::StepRejected,
             "reaction term makes the step matrix indefinite at z = " + std::to_string(z_next) +
                 "; reduce dz below " + std::to_string(2.0 * s.k * s.epsilon / -ihat(i, j)));
      shift.push_back(d);
    }
  }

  ScalarField2D source = st.psi;
  for (double& v : source.values()) v *= mass;
  ScalarField2D boundary(g, z_next);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      if (g.is_boundary(i, j))
        boundary(i, j) = std::exp((s.h(g.x(i), g.y(j), z_next) - st.gauge) / s.epsilon);

  const ScalarField2D ones = ScalarField2D::sample(g, z_next, [](double, double) { return 1.0; });
  const AssembledSystem sys = assemble_dirichlet(ones, s.epsilon, shift, source, boundary);
  const JacobiPreconditioner jacobi(sys.matrix);

  std::vector<double> guess;
  guess.reserve(sys.rhs.size());
  for (int j = 1; j < g.ny() - 1; ++j)
    for (int i = 1; i < g.nx() - 1; ++i) guess.push_back(st.psi(i, j));

  CgOptions opt;
  opt.tol_rel = s.tol;
  opt.preconditioner = &jacobi;
  opt.x0 = guess;
  CgResult res = conjugate_gradient(sys.matrix, sys.rhs, opt);
  if (!res.report.converged)
    throw NotConvergedError("viscosity step at z = " + std::to_string(z_next) +
                                " stopped at relative residual " +
                                std::to_string(res.report.final_residual_rel),
                            res.report);

  ScalarField2D next = expand_interior(res.x, boundary);
  for (double v : next.values())
    if (!(v > 0.0))
      fail(ErrorCode::StepRejected, "psi lost positivity at z = " + std::to_string(z_next) +
                                        "; reduce dz");
  st.psi = std::move(next);
  st.z = z_next;
  return res.report;
}

MarchResult viscosity_march(const ViscosityProblem& problem, double z_end) {
  const ViscositySettings& s = problem.settings;
  validate(s);
  require(z_end > 0.0, ErrorCode::InvalidConfig, "z_end must be positive");
  const double steps_real = z_end / s.dz;
  const auto steps = static_cast<long>(std::llround(steps_real));
  require(steps >= 1 && std::abs(static_cast<double>(steps) * s.dz - z_end) <=
                            1e-12 * std::max(1.0, z_end),
          ErrorCode::InvalidConfig, "z_end must be a multiple of dz");

  ColeHopfField start = cole_hopf_forward(problem.g, s.epsilon);
  MarchState st{0.0, std::move(start.psi), start.gauge};
  st.psi.set_z(0.0);

  std::vector<ScalarField2D> slices;
  slices.reserve(static_cast<std::size_t>(steps) + 1);
  slices.push_back(cole_hopf_inverse(st.psi, s.epsilon, st.gauge));
  std::vector<CgReport> reports;
  reports.reserve(static_cast<std::size_t>(steps));
  for (long n = 1; n <= steps; ++n) {
    reports.push_back(viscosity_step(st, s));
    // Use n * dz rather than the accumulated sum so slice heights are exact.
    st.z = static_cast<double>(n) * s.dz;
    ScalarField2D phi = cole_hopf_inverse(st.psi, s.epsilon, st.gauge);
    phi.set_z(st.z);
    slices.push_back(std::move(phi));
  }
  return {FieldStack(std::move(slices)), std::move(reports)};
}

HybridResult hybrid_pipeline(const TieProblem& tie_problem, const ViscositySettings& settings,
                             double z_end, double tie_tol) {
  TieSolution tie = solve_tie(tie_problem, tie_tol);
  require_same_grid(tie.phase, settings.ihat(0.0), "hybrid: TIE and Ihat grids differ");
  ViscosityProblem vp{settings, tie.phase};
  MarchResult march = viscosity_march(vp, z_end);
  return {std::move(tie), std::move(march)};
}

std::vector<SliceError> viscosity_error_report(const FieldStack& phase, const FieldStack& truth) {
  require(phase.size() == truth.size(), ErrorCode::GridMismatch,
          "error report: stacks have different slice counts");
  std::vector<SliceError> rows;
  rows.reserve(phase.size());
  for (std::size_t k = 0; k < phase.size(); ++k)
    rows.push_back({phase[k].z(), field_error_norms(phase[k], truth[k])});
  return rows;
}

void write_error_table_csv(const std::filesystem::path& path, const std::vector<SliceError>& rows) {
  std::ofstream os(path);
  require(static_cast<bool>(os), ErrorCode::Io, "cannot open " + path.string() + " for writing");
  os << std::setprecision(17) << "z,l2_rel,linf_rel,linf_abs,max_pointwise_rel\n";
  for (const auto& r : rows)
    os << r.z << ',' << r.norms.l2_rel << ',' << r.norms.linf_rel << ',' << r.norms.linf_abs << ','
       << r.norms.max_pointwise_rel << '\n';
  require(static_cast<bool>(os), ErrorCode::Io, "write failed for " + path.string());
}

std::vector<std::string> write_stack(const std::filesystem::path& dir, const FieldStack& stack,
                                     const std::string& prefix) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> names;
  names.reserve(stack.size());
  for (std::size_t k = 0; k < stack.size(); ++k) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04zu", k);
    names.push_back(prefix + buf + ".fld");
    write_fld(dir / names.back(), stack[k]);
  }
  return names;
}

}  // namespace phaselab

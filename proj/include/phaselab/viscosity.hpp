#pragma once

// Vanishing-viscosity approximation of the transport of phase equation,
//
//   2k phi_z - eps lap phi - |grad phi|^2 = -Ihat,
//
// solved through the Cole-Hopf substitution phi = eps log psi, which turns it
// into the linear parabolic problem 2k psi_z - eps lap psi = -(Ihat / eps) psi
// marched in z with backward Euler.

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "phaselab/beams.hpp"
#include "phaselab/characteristics.hpp"
#include "phaselab/grid.hpp"
#include "phaselab/sparse.hpp"
#include "phaselab/tie.hpp"

namespace phaselab {

struct ColeHopfField {
  ScalarField2D psi;
  /// Constant removed from phi before exponentiation: psi = exp((phi - gauge) / eps).
  double gauge = 0.0;
};

/// gauge = mean(phi), psi = exp((phi - gauge) / eps).
ColeHopfField cole_hopf_forward(const ScalarField2D& phase, double epsilon);

/// phi = eps log psi + gauge. Throws NonPositivePsi.
ScalarField2D cole_hopf_inverse(const ScalarField2D& psi, double epsilon, double gauge);

/// Ihat on the march grid at height z.
using IHatSource = std::function<ScalarField2D(double z)>;

/// Samples an analytic or interpolated model at the grid nodes.
IHatSource ihat_from_model(std::shared_ptr<const IHatModel> model, const Grid2D& grid);
/// Finite-difference Ihat of the beam intensity sampled on the grid.
IHatSource ihat_from_intensity(std::shared_ptr<const Beam> beam, const Grid2D& grid);
/// Linear interpolation between stored slices; throws InterpolationOutOfDomain.
IHatSource ihat_from_stack(FieldStack stack);
IHatSource ihat_zero(const Grid2D& grid);

/// Lateral boundary phase h(x, y, z).
using LateralBoundary = std::function<double(double x, double y, double z)>;

LateralBoundary lateral_constant(double c);
LateralBoundary lateral_from_beam(std::shared_ptr<const Beam> beam);

struct ViscositySettings {
  IHatSource ihat;
  double k = 1.0;
  double epsilon = 5e-2;
  double dz = 1e-2;
  LateralBoundary h;
  double tol = 1e-12;
};

struct ViscosityProblem {
  ViscositySettings settings;
  /// Initial phase on z = 0.
  ScalarField2D g;
};

struct MarchState {
  double z = 0.0;
  ScalarField2D psi;
  double gauge = 0.0;
};

/// Advances the state by one backward-Euler step of size settings.dz:
///   (2k/dz + Ihat/eps) psi' - eps lap psi' = (2k/dz) psi.
/// Throws StepRejected when a diagonal entry is not positive or psi' <= 0.
CgReport viscosity_step(MarchState& state, const ViscositySettings& settings);

struct MarchResult {
  FieldStack phase;
  std::vector<CgReport> reports;
};

/// Marches from z = 0 to z_end (a multiple of dz) and returns phi on every
/// step, including z = 0.
MarchResult viscosity_march(const ViscosityProblem& problem, double z_end);

struct HybridResult {
  TieSolution tie;
  MarchResult march;
};

/// Solves the TIE on z = 0 and uses its phase as the initial data of the march.
HybridResult hybrid_pipeline(const TieProblem& tie_problem, const ViscositySettings& settings,
                             double z_end, double tie_tol = 1e-10);

struct SliceError {
  double z = 0.0;
  ErrorNorms norms;
};

/// Per-slice norms of phase - truth. Throws GridMismatch.
std::vector<SliceError> viscosity_error_report(const FieldStack& phase, const FieldStack& truth);

/// Columns z,l2_rel,linf_rel,linf_abs,max_pointwise_rel.
void write_error_table_csv(const std::filesystem::path& path, const std::vector<SliceError>& rows);

/// Writes <prefix>NNNN.fld per slice into dir and returns the file names.
std::vector<std::string> write_stack(const std::filesystem::path& dir, const FieldStack& stack,
                                     const std::string& prefix = "phi_z");

}  // namespace phaselab

#pragma once

// Transport of intensity equation  div(I grad phi) = k I_z  on a rectangle
// with Dirichlet phase data on its boundary.

#include <functional>
#include <string>

#include "phaselab/beams.hpp"
#include "phaselab/grid.hpp"
#include "phaselab/sparse.hpp"

namespace phaselab {

/// Phase values prescribed on the boundary nodes of a grid.
class DirichletBC {
 public:
  static DirichletBC constant(const Grid2D& grid, double c);
  static DirichletBC from_function(const Grid2D& grid, std::string descriptor,
                                   const std::function<double(double, double)>& g);
  /// floor(10 x)
  static DirichletBC floor10x(const Grid2D& grid);
  /// amplitude * sin(2 pi frequency x)
  static DirichletBC sine(const Grid2D& grid, double amplitude = 10.0, double frequency = 1.0);
  /// exp(-|x|^2) evaluated on the grid's own boundary coordinates
  static DirichletBC gaussian(const Grid2D& grid);
  static DirichletBC ground_truth(const Beam& beam, const Grid2D& grid, double z);
  /// Boundary nodes of an existing field; interior values are ignored.
  static DirichletBC sampled(const ScalarField2D& field, std::string descriptor = "sampled");

  const Grid2D& grid() const noexcept { return values_.grid(); }
  /// Full-grid field whose boundary nodes carry the data; interior nodes are 0.
  const ScalarField2D& values() const noexcept { return values_; }
  const std::string& descriptor() const noexcept { return descriptor_; }

  double boundary_min() const;
  double boundary_max() const;

  /// Adds c to every boundary value.
  DirichletBC shifted(double c) const;

 private:
  DirichletBC(ScalarField2D values, std::string descriptor);

  ScalarField2D values_;
  std::string descriptor_;
};

struct TieProblem {
  ScalarField2D intensity;
  ScalarField2D intensity_z;
  double k = 1.0;
  DirichletBC bc;

  /// Throws GridMismatch, NonPositiveIntensity or InvalidConfig.
  void validate() const;
};

/// Ground-truth TIE problem for a beam at height z with analytic I_z.
TieProblem beam_tie_problem(const Beam& beam, const Grid2D& grid, double z, DirichletBC bc);

/// Linear system on interior nodes, unknown (i, j) -> (i-1) + (j-1)(nx-2).
struct AssembledSystem {
  SparseMatrix matrix;
  std::vector<double> rhs;
};

/// Assembles  shift_n u_n - scale div(coef grad u) = source  on interior nodes
/// with the boundary values of `boundary` eliminated into the right-hand side.
/// `shift` is indexed by interior unknown and may be empty.
AssembledSystem assemble_dirichlet(const ScalarField2D& coef, double scale,
                                   std::span<const double> shift, const ScalarField2D& source,
                                   const ScalarField2D& boundary);

/// Scatter interior unknowns into a full field whose boundary comes from `boundary`.
ScalarField2D expand_interior(std::span<const double> interior, const ScalarField2D& boundary);

/// A = -div(I grad .) (SPD), b = -k I_z plus boundary eliminations.
AssembledSystem assemble_tie(const TieProblem& problem);

struct TieSolution {
  ScalarField2D phase;
  CgReport report;
};

/// Throws NotConvergedError when CG misses tol.
TieSolution solve_tie(const TieProblem& problem, double tol = 1e-10);

struct TeagueSolution {
  ScalarField2D phase;
  /// Auxiliary potential with lap psi = k I_z and psi = 0 on the boundary.
  ScalarField2D psi;
  CgReport psi_report;
  CgReport phase_report;
};

/// Two Poisson solves: lap psi = k I_z, then lap phi = div(grad psi / I)
/// with the problem's phase boundary data.
TeagueSolution solve_tie_teague(const TieProblem& problem, double tol = 1e-10);

/// div(I grad phi) - k I_z at interior nodes; boundary nodes are 0.
ScalarField2D tie_residual(const ScalarField2D& phase, const TieProblem& problem);

}  // namespace phaselab

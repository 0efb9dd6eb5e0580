#pragma once

// Closed-form solutions of the paraxial Helmholtz equation used as ground
// truth: a plane wave with constant intensity and the fundamental Gaussian
// beam. Axial derivatives are supplied analytically so that diagnostics
// see only the error of the method under test.

#include <memory>
#include <string>
#include <vector>

#include "phaselab/grid.hpp"

namespace phaselab {

struct PlaneWaveParams {
  double xi_x = 1.0;
  double xi_y = 1.0;
  double k = 1.0;
};

struct GaussianBeamParams {
  double z_R = 1.0;
  double k = 1.0;
  double I0 = 1.0;

  double wavelength() const;
  /// w0^2 = lambda z_R / pi = 2 z_R / k
  double waist_sq() const;
  /// w^2(z) = w0^2 (1 + (z/z_R)^2)
  double width_sq(double z) const;
};

/// Reduced intensity term and its gradient at one point.
struct IHatSample {
  double value = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;
};

class Beam {
 public:
  virtual ~Beam() = default;

  virtual std::string name() const = 0;
  virtual double wavenumber() const = 0;

  virtual double intensity(double x, double y, double z) const = 0;
  virtual double intensity_z(double x, double y, double z) const = 0;
  virtual double intensity_zz(double x, double y, double z) const = 0;
  virtual double phase(double x, double y, double z) const = 0;
  virtual double phase_z(double x, double y, double z) const = 0;
  virtual double phase_zz(double x, double y, double z) const = 0;
  virtual IHatSample i_hat(double x, double y, double z) const = 0;
};

class PlaneWave final : public Beam {
 public:
  explicit PlaneWave(PlaneWaveParams p);

  const PlaneWaveParams& params() const noexcept { return p_; }

  std::string name() const override { return "plane-wave"; }
  double wavenumber() const override { return p_.k; }
  double intensity(double, double, double) const override { return 1.0; }
  double intensity_z(double, double, double) const override { return 0.0; }
  double intensity_zz(double, double, double) const override { return 0.0; }
  double phase(double x, double y, double z) const override;
  double phase_z(double, double, double) const override;
  double phase_zz(double, double, double) const override { return 0.0; }
  IHatSample i_hat(double, double, double) const override { return {}; }

 private:
  PlaneWaveParams p_;
};

/// A = I0 / q(z) exp(-i k |x|^2 / (2 q(z))), q = z + i z_R, normalised so the
/// on-axis waist intensity is I0^2. The Gouy term is continued from 3pi/2 at
/// z = 0 without wrapping.
class GaussianBeam final : public Beam {
 public:
  explicit GaussianBeam(GaussianBeamParams p);

  const GaussianBeamParams& params() const noexcept { return p_; }

  std::string name() const override { return "gaussian"; }
  double wavenumber() const override { return p_.k; }
  double intensity(double x, double y, double z) const override;
  double intensity_z(double x, double y, double z) const override;
  double intensity_zz(double x, double y, double z) const override;
  double phase(double x, double y, double z) const override;
  double phase_z(double x, double y, double z) const override;
  double phase_zz(double x, double y, double z) const override;
  IHatSample i_hat(double x, double y, double z) const override;

 private:
  GaussianBeamParams p_;
};

struct BeamFields {
  ScalarField2D intensity;
  ScalarField2D phase;
};

BeamFields plane_wave_fields(const PlaneWaveParams& p, const Grid2D& grid, double z);
BeamFields gaussian_fields(const GaussianBeamParams& p, const Grid2D& grid, double z);
BeamFields sample_beam(const Beam& beam, const Grid2D& grid, double z);

/// Samples any scalar beam quantity, e.g. &Beam::intensity_z.
ScalarField2D sample_quantity(const Beam& beam, const Grid2D& grid, double z,
                              double (Beam::*quantity)(double, double, double) const);

/// Analytic reduced intensity term on a grid.
ScalarField2D sample_i_hat(const Beam& beam, const Grid2D& grid, double z);

struct BeamStacks {
  FieldStack intensity;
  FieldStack phase;
};

/// Throws NonUniformZ unless z_list is strictly increasing and uniform.
BeamStacks beam_stack(const Beam& beam, const Grid2D& grid, const std::vector<double>& z_list);

struct ParaxialResidual {
  /// lap(sqrt I) - sqrt I |grad phi|^2 + 2k sqrt I phi_z
  ScalarField2D re;
  /// div(I grad phi) - k I_z
  ScalarField2D im;
};

/// Real and imaginary parts of lap A - 2ik A_z divided by exp(i phi), with the
/// imaginary part scaled by sqrt I. Interior nodes only (boundary set to 0).
ParaxialResidual paraxial_residual(const ScalarField2D& intensity, const ScalarField2D& phase,
                                   const ScalarField2D& phase_z, const ScalarField2D& intensity_z,
                                   double k);

/// Real (TPE) and imaginary (TIE) parts of A_zz exp(-i phi): the terms dropped
/// by the paraxial approximation.
struct ModelingErrorTerms {
  ScalarField2D m_tie;
  ScalarField2D m_tpe;
};

ModelingErrorTerms modeling_error_terms(const ScalarField2D& intensity,
                                        const ScalarField2D& intensity_z,
                                        const ScalarField2D& intensity_zz,
                                        const ScalarField2D& phase_z,
                                        const ScalarField2D& phase_zz);

/// "plane-wave" or "gaussian"; throws InvalidConfig otherwise.
std::unique_ptr<Beam> make_beam(const std::string& model, const PlaneWaveParams& plane,
                                const GaussianBeamParams& gauss);

}  // namespace phaselab

#include "phaselab/beams.hpp"

#include <cmath>
#include <numbers>

#include "phaselab/error.hpp"

namespace phaselab {

namespace {
constexpr double kPi = std::numbers::pi;
}

double GaussianBeamParams::wavelength() const { return 2.0 * kPi / k; }
double GaussianBeamParams::waist_sq() const { return wavelength() * z_R / kPi; }
double GaussianBeamParams::width_sq(double z) const {
  const double t = z / z_R;
  return waist_sq() * (1.0 + t * t);
}

PlaneWave::PlaneWave(PlaneWaveParams p) : p_(p) {
  require(p.k > 0.0, ErrorCode::InvalidConfig, "plane wave needs k > 0");
}

double PlaneWave::phase(double x, double y, double z) const {
  return x * p_.xi_x + y * p_.xi_y + phase_z(x, y, z) * z;
}

double PlaneWave::phase_z(double, double, double) const {
  return 0.5 * (p_.xi_x * p_.xi_x + p_.xi_y * p_.xi_y) / p_.k;
}

GaussianBeam::GaussianBeam(GaussianBeamParams p) : p_(p) {
  require(p.z_R > 0.0 && p.k > 0.0 && p.I0 > 0.0, ErrorCode::InvalidConfig,
          "gaussian beam needs z_R > 0, k > 0, I0 > 0");
}

// With D = z^2 + z_R^2 and b = k z_R / D = 2 / w^2:
//   I   = I0^2 (z_R^2 / D) exp(-b rho^2)
//   phi = 3pi/2 + atan(z / z_R) - k rho^2 z / (2D)
//   Ihat = b^2 rho^2 - 2b
namespace {

struct Axial {
  double d, b, db, d2b;
};

Axial axial(const GaussianBeamParams& p, double z) {
  const double d = z * z + p.z_R * p.z_R;
  const double kz = p.k * p.z_R;
  return {d, kz / d, -2.0 * kz * z / (d * d), -2.0 * kz / (d * d) + 8.0 * kz * z * z / (d * d * d)};
}

}  // namespace

double GaussianBeam::intensity(double x, double y, double z) const {
  const Axial a = axial(p_, z);
  return p_.I0 * p_.I0 * (p_.z_R * p_.z_R / a.d) * std::exp(-a.b * (x * x + y * y));
}

double GaussianBeam::intensity_z(double x, double y, double z) const {
  const Axial a = axial(p_, z);
  const double log_dz = -2.0 * z / a.d - a.db * (x * x + y * y);
  return intensity(x, y, z) * log_dz;
}

double GaussianBeam::intensity_zz(double x, double y, double z) const {
  const Axial a = axial(p_, z);
  const double rho2 = x * x + y * y;
  const double log_dz = -2.0 * z / a.d - a.db * rho2;
  const double log_dzz = -2.0 / a.d + 4.0 * z * z / (a.d * a.d) - a.d2b * rho2;
  return intensity(x, y, z) * (log_dz * log_dz + log_dzz);
}

double GaussianBeam::phase(double x, double y, double z) const {
  const double d = z * z + p_.z_R * p_.z_R;
  return 1.5 * kPi + std::atan(z / p_.z_R) - p_.k * (x * x + y * y) * z / (2.0 * d);
}

double GaussianBeam::phase_z(double x, double y, double z) const {
  const double d = z * z + p_.z_R * p_.z_R;
  const double zr2 = p_.z_R * p_.z_R;
  return p_.z_R / d - p_.k * (x * x + y * y) * (zr2 - z * z) / (2.0 * d * d);
}

double GaussianBeam::phase_zz(double x, double y, double z) const {
  const double d = z * z + p_.z_R * p_.z_R;
  const double zr2 = p_.z_R * p_.z_R;
  return -2.0 * z * p_.z_R / (d * d) +
         p_.k * (x * x + y * y) * (z / (d * d) + 2.0 * z * (zr2 - z * z) / (d * d * d));
}

IHatSample GaussianBeam::i_hat(double x, double y, double z) const {
  const Axial a = axial(p_, z);
  const double rho2 = x * x + y * y;
  const double b2 = a.b * a.b;
  return {b2 * rho2 - 2.0 * a.b, 2.0 * b2 * x, 2.0 * b2 * y, 2.0 * a.b * a.db * rho2 - 2.0 * a.db};
}

ScalarField2D sample_quantity(const Beam& beam, const Grid2D& grid, double z,
                              double (Beam::*quantity)(double, double, double) const) {
  return ScalarField2D::sample(grid, z,
                               [&](double x, double y) { return (beam.*quantity)(x, y, z); });
}

BeamFields sample_beam(const Beam& beam, const Grid2D& grid, double z) {
  return {sample_quantity(beam, grid, z, &Beam::intensity),
          sample_quantity(beam, grid, z, &Beam::phase)};
}

BeamFields plane_wave_fields(const PlaneWaveParams& p, const Grid2D& grid, double z) {
  return sample_beam(PlaneWave(p), grid, z);
}

BeamFields gaussian_fields(const GaussianBeamParams& p, const Grid2D& grid, double z) {
  return sample_beam(GaussianBeam(p), grid, z);
}

ScalarField2D sample_i_hat(const Beam& beam, const Grid2D& grid, double z) {
  return ScalarField2D::sample(grid, z,
                               [&](double x, double y) { return beam.i_hat(x, y, z).value; });
}

BeamStacks beam_stack(const Beam& beam, const Grid2D& grid, const std::vector<double>& z_list) {
  require(!z_list.empty(), ErrorCode::InvalidConfig, "beam_stack needs at least one z");
  std::vector<ScalarField2D> intensity, phase;
  intensity.reserve(z_list.size());
  phase.reserve(z_list.size());
  for (double z : z_list) {
    BeamFields f = sample_beam(beam, grid, z);
    intensity.push_back(std::move(f.intensity));
    phase.push_back(std::move(f.phase));
  }
  // FieldStack validates monotone uniform spacing.
  return {FieldStack(std::move(intensity)), FieldStack(std::move(phase))};
}

namespace {

void zero_boundary(ScalarField2D& f) {
  const Grid2D& g = f.grid();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      if (g.is_boundary(i, j)) f(i, j) = 0.0;
}

void require_positive(const ScalarField2D& intensity) {
  require(intensity.min() > 0.0, ErrorCode::NonPositiveIntensity,
          "intensity must be strictly positive");
}

}  // namespace

ParaxialResidual paraxial_residual(const ScalarField2D& intensity, const ScalarField2D& phase,
                                   const ScalarField2D& phase_z, const ScalarField2D& intensity_z,
                                   double k) {
  require_same_grid(intensity, phase, "paraxial_residual: phase grid differs");
  require_same_grid(intensity, phase_z, "paraxial_residual: phase_z grid differs");
  require_same_grid(intensity, intensity_z, "paraxial_residual: intensity_z grid differs");
  require_positive(intensity);

  ScalarField2D amp = intensity;
  for (double& v : amp.values()) v = std::sqrt(v);
  const ScalarField2D lap_amp = fd_laplacian(amp);
  const Gradient grad = fd_gradient(phase);

  ScalarField2D re(intensity.grid(), intensity.z());
  for (std::size_t n = 0; n < re.size(); ++n) {
    const double gx = grad.dx.values()[n], gy = grad.dy.values()[n];
    const double a = amp.values()[n];
    re.values()[n] = lap_amp.values()[n] - a * (gx * gx + gy * gy) + 2.0 * k * a * phase_z.values()[n];
  }
  ScalarField2D im = fd_divergence_of_flux(intensity, phase);
  for (std::size_t n = 0; n < im.size(); ++n) im.values()[n] -= k * intensity_z.values()[n];
  zero_boundary(re);
  zero_boundary(im);
  return {std::move(re), std::move(im)};
}

ModelingErrorTerms modeling_error_terms(const ScalarField2D& intensity,
                                        const ScalarField2D& intensity_z,
                                        const ScalarField2D& intensity_zz,
                                        const ScalarField2D& phase_z,
                                        const ScalarField2D& phase_zz) {
  require_same_grid(intensity, intensity_z, "modeling_error_terms: I_z grid differs");
  require_same_grid(intensity, intensity_zz, "modeling_error_terms: I_zz grid differs");
  require_same_grid(intensity, phase_z, "modeling_error_terms: phi_z grid differs");
  require_same_grid(intensity, phase_zz, "modeling_error_terms: phi_zz grid differs");
  require_positive(intensity);

  ModelingErrorTerms out{ScalarField2D(intensity.grid(), intensity.z()),
                         ScalarField2D(intensity.grid(), intensity.z())};
  for (std::size_t n = 0; n < intensity.size(); ++n) {
    const double i = intensity.values()[n];
    const double iz = intensity_z.values()[n];
    const double root = std::sqrt(i);
    const double pz = phase_z.values()[n];
    out.m_tpe.values()[n] =
        -0.25 * iz * iz / (i * root) + 0.5 * intensity_zz.values()[n] / root - root * pz * pz;
    out.m_tie.values()[n] = iz / root * pz + root * phase_zz.values()[n];
  }
  return out;
}

std::unique_ptr<Beam> make_beam(const std::string& model, const PlaneWaveParams& plane,
                                const GaussianBeamParams& gauss) {
  if (model == "plane-wave") return std::make_unique<PlaneWave>(plane);
  if (model == "gaussian") return std::make_unique<GaussianBeam>(gauss);
  fail(ErrorCode::InvalidConfig, "unknown beam model '" + model + "'");
}

}  // namespace phaselab

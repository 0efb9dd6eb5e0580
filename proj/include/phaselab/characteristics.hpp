#pragma once

// Method of characteristics for the transport of phase equation
//
//   F(p, q, r, s, x, y, z) = 2k r - (p^2 + q^2) + Ihat(x, y, z) = 0,
//
// with p, q, r the phase derivatives and s the phase along the curve.

#include <array>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "phaselab/beams.hpp"
#include "phaselab/grid.hpp"
#include "phaselab/interp.hpp"

namespace phaselab {

struct CharacteristicState {
  double x = 0.0, y = 0.0, z = 0.0;
  double s = 0.0;
  double p = 0.0, q = 0.0, r = 0.0;

  std::array<double, 7> to_array() const { return {x, y, z, s, p, q, r}; }
  static CharacteristicState from_array(const std::array<double, 7>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], a[6]};
  }
};

/// Reduced intensity Ihat(x, y, z) together with its gradient.
class IHatModel {
 public:
  virtual ~IHatModel() = default;
  virtual std::string name() const = 0;
  virtual IHatSample operator()(double x, double y, double z) const = 0;
};

/// Constant transverse intensity: Ihat = 0.
class ZeroIHat final : public IHatModel {
 public:
  std::string name() const override { return "zero"; }
  IHatSample operator()(double, double, double) const override { return {}; }
};

/// Closed-form Ihat of an analytic beam.
class BeamIHat final : public IHatModel {
 public:
  explicit BeamIHat(std::shared_ptr<const Beam> beam) : beam_(std::move(beam)) {}
  std::string name() const override { return beam_->name(); }
  IHatSample operator()(double x, double y, double z) const override {
    return beam_->i_hat(x, y, z);
  }

 private:
  std::shared_ptr<const Beam> beam_;
};

/// Ihat sampled on z-slices: bicubic in (x, y), linear between slices.
/// Throws InterpolationOutOfDomain outside the sampled box.
class SampledIHat final : public IHatModel {
 public:
  explicit SampledIHat(const FieldStack& slices);
  std::string name() const override { return "sampled"; }
  IHatSample operator()(double x, double y, double z) const override;

 private:
  std::vector<BicubicInterpolator> slices_;
  double z0_;
  double dz_;
};

/// Phase data g on the initial plane z = 0 with its gradient.
struct InitialSurfaceData {
  std::function<double(double, double)> g;
  std::function<double(double, double)> g_x;
  std::function<double(double, double)> g_y;
  double k = 1.0;

  static InitialSurfaceData affine(double alpha, double beta, double gamma, double k);
  static InitialSurfaceData constant(double c, double k);
  /// Bicubic interpolant of a sampled phase; gradient from the interpolant.
  static InitialSurfaceData sampled(const ScalarField2D& phase, double k);
  static InitialSurfaceData from_beam(std::shared_ptr<const Beam> beam, double z0 = 0.0);
};

/// F evaluated at a state.
double hamiltonian(const CharacteristicState& state, const IHatModel& ihat, double k);

/// Initial state at (x0, y0, 0) satisfying F = 0: s = g, p = g_x, q = g_y,
/// r = (p^2 + q^2 - Ihat) / (2k).
CharacteristicState compatibility_init(double x0, double y0, const InitialSurfaceData& data,
                                       const IHatModel& ihat);

/// dF/dr = 2k != 0 at the initial surface.
bool noncharacteristic_check(const CharacteristicState& state, double k);

/// (x', y', z', s', p', q', r') = (-2p, -2q, 2k, -2p^2 - 2q^2 + 2kr, -Ihat_x, -Ihat_y, -Ihat_z)
std::array<double, 7> characteristic_rhs(const CharacteristicState& state, const IHatModel& ihat,
                                         double k);

/// Integration stops early when the curve leaves this box.
struct DomainBox {
  Bounds xy;
  double z_min = 0.0;
  double z_max = 1.0;

  bool contains(const CharacteristicState& s) const {
    return s.x >= xy.x_min && s.x <= xy.x_max && s.y >= xy.y_min && s.y <= xy.y_max &&
           s.z >= z_min && s.z <= z_max;
  }
};

enum class TrajectoryExit { Completed, LeftDomain, BlowUp, InterpolationOutOfDomain };

const char* to_string(TrajectoryExit e) noexcept;

struct Trajectory {
  std::vector<double> tau;
  std::vector<CharacteristicState> states;
  TrajectoryExit exit = TrajectoryExit::Completed;
};

/// Classical RK4 with fixed step. Throws BlowUp when a component exceeds 1e12
/// and InterpolationOutOfDomain from sampled models. With a domain box the
/// trajectory ends at the last state inside it.
Trajectory integrate_characteristic(const CharacteristicState& init, const IHatModel& ihat,
                                    double k, double tau_end, double dtau,
                                    const std::optional<DomainBox>& domain = std::nullopt);

/// Global solution for constant transverse intensity and affine
/// g = alpha x + beta y + gamma: phi = g + z (alpha^2 + beta^2) / (2k).
double constant_intensity_solution(double alpha, double beta, double gamma, double k, double x,
                                   double y, double z);

struct FanSample {
  std::size_t seed = 0;
  double x = 0.0, y = 0.0, z = 0.0, phase = 0.0;
};

struct FanResult {
  std::vector<Trajectory> trajectories;
  /// Empty string for successful seeds, else the error message.
  std::vector<std::string> errors;
  std::vector<FanSample> samples;

  std::size_t succeeded() const;
};

struct Seed {
  double x = 0.0, y = 0.0;
};

/// n x n seeds on a uniform lattice over `bounds`, endpoints included.
std::vector<Seed> seed_lattice(const Bounds& bounds, int n);

/// One characteristic per seed. Failed seeds are recorded and skipped.
FanResult characteristic_fan(const std::vector<Seed>& seeds, const InitialSurfaceData& data,
                             const IHatModel& ihat, double tau_end, double dtau,
                             const std::optional<DomainBox>& domain = std::nullopt);

/// Columns seed,tau,x,y,z,s,p,q,r.
void write_trajectories_csv(const std::filesystem::path& path, const FanResult& fan);
/// Columns seed,x,y,z,phi.
void write_samples_csv(const std::filesystem::path& path, const FanResult& fan);

}  // namespace phaselab

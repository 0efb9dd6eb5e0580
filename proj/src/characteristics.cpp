#include "phaselab/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "phaselab/error.hpp"

namespace phaselab {

SampledIHat::SampledIHat(const FieldStack& slices)
    : z0_(slices[0].z()), dz_(slices.dz()) {
  slices_.reserve(slices.size());
  for (const auto& s : slices) slices_.emplace_back(s);
}

IHatSample SampledIHat::operator()(double x, double y, double z) const {
  if (slices_.size() == 1) {
    const InterpSample v = slices_.front()(x, y);
    return {v.value, v.dx, v.dy, 0.0};
  }
  const double z_last = z0_ + dz_ * static_cast<double>(slices_.size() - 1);
  const double eps = 1e-12 * std::max(1.0, std::abs(z_last));
  require(z >= z0_ - eps && z <= z_last + eps, ErrorCode::InterpolationOutOfDomain,
          "z = " + std::to_string(z) + " outside sampled slices");
  const double s = (z - z0_) / dz_;
  const auto k = static_cast<std::size_t>(
      std::clamp(static_cast<long>(std::floor(s)), 0L, static_cast<long>(slices_.size()) - 2));
  const double t = std::clamp(s - static_cast<double>(k), 0.0, 1.0);
  const InterpSample a = slices_[k](x, y);
  const InterpSample b = slices_[k + 1](x, y);
  return {(1.0 - t) * a.value + t * b.value, (1.0 - t) * a.dx + t * b.dx,
          (1.0 - t) * a.dy + t * b.dy, (b.value - a.value) / dz_};
}

InitialSurfaceData InitialSurfaceData::affine(double alpha, double beta, double gamma, double k) {
  return {[=](double x, double y) { return alpha * x + beta * y + gamma; },
          [=](double, double) { return alpha; }, [=](double, double) { return beta; }, k};
}

InitialSurfaceData InitialSurfaceData::constant(double c, double k) {
  return affine(0.0, 0.0, c, k);
}

InitialSurfaceData InitialSurfaceData::sampled(const ScalarField2D& phase, double k) {
  auto interp = std::make_shared<const BicubicInterpolator>(phase);
  return {[interp](double x, double y) { return (*interp)(x, y).value; },
          [interp](double x, double y) { return (*interp)(x, y).dx; },
          [interp](double x, double y) { return (*interp)(x, y).dy; }, k};
}

InitialSurfaceData InitialSurfaceData::from_beam(std::shared_ptr<const Beam> beam, double z0) {
  // Gradient by central differences of the closed form; step well inside
  // the smooth scale of either beam.
  constexpr double h = 1e-5;
  const double k = beam->wavenumber();
  return {[beam, z0](double x, double y) { return beam->phase(x, y, z0); },
          [beam, z0](double x, double y) {
            return (beam->phase(x + h, y, z0) - beam->phase(x - h, y, z0)) / (2.0 * h);
          },
          [beam, z0](double x, double y) {
            return (beam->phase(x, y + h, z0) - beam->phase(x, y - h, z0)) / (2.0 * h);
          },
          k};
}

double hamiltonian(const CharacteristicState& st, const IHatModel& ihat, double k) {
  return 2.0 * k * st.r - (st.p * st.p + st.q * st.q) + ihat(st.x, st.y, st.z).value;
}

CharacteristicState compatibility_init(double x0, double y0, const InitialSurfaceData& data,
                                       const IHatModel& ihat) {
  require(data.k > 0.0, ErrorCode::InvalidConfig, "wavenumber must be positive");
  CharacteristicState st;
  st.x = x0;
  st.y = y0;
  st.z = 0.0;
  st.s = data.g(x0, y0);
  st.p = data.g_x(x0, y0);
  st.q = data.g_y(x0, y0);
  st.r = (st.p * st.p + st.q * st.q - ihat(x0, y0, 0.0).value) / (2.0 * data.k);
  return st;
}

bool noncharacteristic_check(const CharacteristicState&, double k) { return std::isfinite(k) && 2.0 * k != 0.0; }

std::array<double, 7> characteristic_rhs(const CharacteristicState& st, const IHatModel& ihat,
                                         double k) {
  const IHatSample ih = ihat(st.x, st.y, st.z);
  return {-2.0 * st.p,
          -2.0 * st.q,
          2.0 * k,
          -2.0 * st.p * st.p - 2.0 * st.q * st.q + 2.0 * k * st.r,
          -ih.dx,
          -ih.dy,
          -ih.dz};
}

const char* to_string(TrajectoryExit e) noexcept {
  switch (e) {
    case TrajectoryExit::Completed: return "completed";
    case TrajectoryExit::LeftDomain: return "left-domain";
    case TrajectoryExit::BlowUp: return "blow-up";
    case TrajectoryExit::InterpolationOutOfDomain: return "interpolation-out-of-domain";
  }
  return "unknown";
}

namespace {

constexpr double kBlowUp = 1e12;

std::array<double, 7> offset(const std::array<double, 7>& y, const std::array<double, 7>& d,
                             double h) {
  std::array<double, 7> out;
  for (std::size_t i = 0; i < 7; ++i) out[i] = y[i] + h * d[i];
  return out;
}

}  // namespace

Trajectory integrate_characteristic(const CharacteristicState& init, const IHatModel& ihat,
                                    double k, double tau_end, double dtau,
                                    const std::optional<DomainBox>& domain) {
  require(dtau > 0.0 && tau_end > 0.0, ErrorCode::InvalidConfig,
          "characteristic integration needs dtau > 0 and tau_end > 0");
  require(k > 0.0, ErrorCode::InvalidConfig, "wavenumber must be positive");
  Trajectory tr;
  tr.tau.push_back(0.0);
  tr.states.push_back(init);
  const auto steps = static_cast<long>(std::ceil(tau_end / dtau - 1e-9));
  const auto rhs = [&](const std::array<double, 7>& y) {
    return characteristic_rhs(CharacteristicState::from_array(y), ihat, k);
  };
  std::array<double, 7> y = init.to_array();
  for (long n = 0; n < steps; ++n) {
    const double tau = static_cast<double>(n) * dtau;
    const double h = std::min(dtau, tau_end - tau);
    const auto k1 = rhs(y);
    const auto k2 = rhs(offset(y, k1, 0.5 * h));
    const auto k3 = rhs(offset(y, k2, 0.5 * h));
    const auto k4 = rhs(offset(y, k3, h));
    for (std::size_t i = 0; i < 7; ++i)
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    for (double v : y)
      require(std::isfinite(v) && std::abs(v) <= kBlowUp, ErrorCode::BlowUp,
              "characteristic blew up at tau = " + std::to_string(tau + h));
    const CharacteristicState st = CharacteristicState::from_array(y);
    if (domain && !domain->contains(st)) {
      tr.exit = TrajectoryExit::LeftDomain;
      return tr;
    }
    tr.tau.push_back(tau + h);
    tr.states.push_back(st);
  }
  return tr;
}

double constant_intensity_solution(double alpha, double beta, double gamma, double k, double x,
                                   double y, double z) {
  require(k > 0.0, ErrorCode::InvalidConfig, "wavenumber must be positive");
  return alpha * x + beta * y + gamma + z * (alpha * alpha + beta * beta) / (2.0 * k);
}

std::size_t FanResult::succeeded() const {
  return static_cast<std::size_t>(
      std::count_if(errors.begin(), errors.end(), [](const std::string& e) { return e.empty(); }));
}

std::vector<Seed> seed_lattice(const Bounds& b, int n) {
  require(n >= 1, ErrorCode::InvalidConfig, "seed lattice needs n >= 1");
  std::vector<Seed> seeds;
  seeds.reserve(static_cast<std::size_t>(n) * n);
  const double hx = n > 1 ? (b.x_max - b.x_min) / (n - 1) : 0.0;
  const double hy = n > 1 ? (b.y_max - b.y_min) / (n - 1) : 0.0;
  const double ox = n > 1 ? b.x_min : 0.5 * (b.x_min + b.x_max);
  const double oy = n > 1 ? b.y_min : 0.5 * (b.y_min + b.y_max);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) seeds.push_back({ox + i * hx, oy + j * hy});
  return seeds;
}

FanResult characteristic_fan(const std::vector<Seed>& seeds, const InitialSurfaceData& data,
                             const IHatModel& ihat, double tau_end, double dtau,
                             const std::optional<DomainBox>& domain) {
  require(!seeds.empty(), ErrorCode::InvalidConfig, "characteristic fan needs at least one seed");
  FanResult fan;
  fan.trajectories.reserve(seeds.size());
  fan.errors.reserve(seeds.size());
  for (std::size_t id = 0; id < seeds.size(); ++id) {
    try {
      const CharacteristicState init = compatibility_init(seeds[id].x, seeds[id].y, data, ihat);
      Trajectory tr = integrate_characteristic(init, ihat, data.k, tau_end, dtau, domain);
      for (const auto& st : tr.states) fan.samples.push_back({id, st.x, st.y, st.z, st.s});
      fan.trajectories.push_back(std::move(tr));
      fan.errors.emplace_back();
    } catch (const Error& e) {
      Trajectory failed;
      failed.exit = e.code() == ErrorCode::BlowUp ? TrajectoryExit::BlowUp
                                                  : TrajectoryExit::InterpolationOutOfDomain;
      fan.trajectories.push_back(std::move(failed));
      fan.errors.emplace_back(e.what());
    }
  }
  return fan;
}

namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream os(path);
  require(static_cast<bool>(os), ErrorCode::Io, "cannot open " + path.string() + " for writing");
  os << std::setprecision(17);
  return os;
}

}  // namespace

void write_trajectories_csv(const std::filesystem::path& path, const FanResult& fan) {
  auto os = open_csv(path);
  os << "seed,tau,x,y,z,s,p,q,r\n";
  for (std::size_t id = 0; id < fan.trajectories.size(); ++id) {
    const Trajectory& tr = fan.trajectories[id];
    for (std::size_t n = 0; n < tr.states.size(); ++n) {
      const auto& s = tr.states[n];
      os << id << ',' << tr.tau[n] << ',' << s.x << ',' << s.y << ',' << s.z << ',' << s.s << ','
         << s.p << ',' << s.q << ',' << s.r << '\n';
    }
  }
  require(static_cast<bool>(os), ErrorCode::Io, "write failed for " + path.string());
}

void write_samples_csv(const std::filesystem::path& path, const FanResult& fan) {
  auto os = open_csv(path);
  os << "seed,x,y,z,phi\n";
  for (const auto& s : fan.samples)
    os << s.seed << ',' << s.x << ',' << s.y << ',' << s.z << ',' << s.phase << '\n';
  require(static_cast<bool>(os), ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace phaselab

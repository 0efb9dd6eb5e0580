// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "phaselab/beams.hpp"
#include "phaselab/characteristics.hpp"
#include "phaselab/tie.hpp"
#include "phaselab/viscosity.hpp"

using namespace phaselab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

char buf_[512];

template <typename... A>
std::string fmt(const char* f, A... a) {
  std::snprintf(buf_, sizeof(buf_), f, a...);
  return buf_;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ScalarField2D truth_phase(const Beam& b, const Grid2D& g, double z) {
  return sample_quantity(b, g, z, &Beam::phase);
}

// 1. Plane-wave TIE with ground-truth boundary data.
Outcome plane_wave_truth_bc() {
  const auto t0 = std::chrono::steady_clock::now();
  const PlaneWave pw({1.0, 1.0, 1.0});
  const Grid2D g = Grid2D::square(129);
  const TieSolution s = solve_tie(beam_tie_problem(pw, g, 0.0, DirichletBC::ground_truth(pw, g, 0.0)));
  const double err = field_error_norms(s.phase, truth_phase(pw, g, 0.0)).linf_abs;
  const double secs = seconds_since(t0);
  return {err <= 1e-6 && secs <= 5.0, fmt("Linf error %.3e (<= 1e-6), %.2f s (<= 5 s)", err, secs)};
}

// 2. Plane-wave TIE with zero boundary data.
Outcome plane_wave_zero_bc() {
  const PlaneWave pw({1.0, 1.0, 1.0});
  const Grid2D g = Grid2D::square(129);
  const TieSolution s = solve_tie(beam_tie_problem(pw, g, 0.0, DirichletBC::constant(g, 0.0)));
  const double recon = linf(s.phase);
  const ScalarField2D truth = truth_phase(pw, g, 0.0);
  const double dev = field_error_norms(s.phase, truth).linf_abs;
  const double corner = std::abs(s.phase(128, 128) - truth(128, 128));
  const bool pass = recon <= 1e-8 && std::abs(dev - 2.0) <= 1e-6 && std::abs(corner - dev) <= 1e-12;
  return {pass, fmt("|phi| max %.3e (<= 1e-8), Linf deviation %.9f at (1,1) corner %.9f (2 +- 1e-6)",
                    recon, dev, corner)};
}

// 3. Gaussian TIE on the waist with constant data 3pi/2, direct and Teague.
Outcome gaussian_constant_bc() {
  const GaussianBeam gb({1.0, 1.0, 1.0});
  const Grid2D g = Grid2D::square(129);
  const TieProblem p = beam_tie_problem(gb, g, 0.0, DirichletBC::constant(g, 1.5 * kPi));
  const ScalarField2D c = ScalarField2D::sample(g, 0.0, [](double, double) { return 1.5 * kPi; });
  const double direct = field_error_norms(solve_tie(p).phase, c).linf_abs;
  const double teague = field_error_norms(solve_tie_teague(p).phase, c).linf_abs;
  return {direct <= 1e-6 && teague <= 1e-6,
          fmt("direct Linf %.3e, Teague Linf %.3e (both <= 1e-6)", direct, teague)};
}

// 4. Wrong boundary data dominates the reconstruction.
Outcome boundary_dominance() {
  const Grid2D g = Grid2D::square(129);
  const PlaneWave pw({1.0, 1.0, 1.0});
  const GaussianBeam gb({1.0, 1.0, 1.0});
  struct Case {
    const char* name;
    const Beam* beam;
    DirichletBC bc;
  };
  const Case cases[] = {{"floor(10x) plane wave", &pw, DirichletBC::floor10x(g)},
                        {"exp(-|x|^2) Gaussian", &gb, DirichletBC::gaussian(g)},
                        {"10 sin(2 pi x) Gaussian", &gb, DirichletBC::sine(g, 10.0, 1.0)}};
  bool pass = true;
  std::string detail;
  for (const Case& c : cases) {
    const TieSolution s = solve_tie(beam_tie_problem(*c.beam, g, 0.0, c.bc));
    const double err = field_error_norms(s.phase, truth_phase(*c.beam, g, 0.0)).linf_abs;
    pass = pass && err > 0.5;
    detail += fmt("%s %.3f; ", c.name, err);
  }
  return {pass, detail + "(each > 0.5)"};
}

// 5. Characteristics: closed form with zero Ihat, F conservation for the Gaussian.
Outcome characteristics() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const ZeroIHat zero;
  const Bounds box{0.0, 1.0, 0.0, 1.0};
  double closed = 0.0;
  for (int t = 0; t < 5; ++t) {
    const double a = u(rng), b = u(rng), c = u(rng);
    const FanResult fan = characteristic_fan(seed_lattice(box, 10), InitialSurfaceData::affine(a, b, c, 1.0),
                                             zero, 0.5, 1e-3, DomainBox{box, 0.0, 1.0});
    for (const auto& s : fan.samples)
      closed = std::max(closed, std::abs(s.phase - constant_intensity_solution(a, b, c, 1.0, s.x, s.y, s.z)));
  }
  const auto beam = std::make_shared<const GaussianBeam>(GaussianBeamParams{1.0, 1.0, 1.0});
  const BeamIHat ihat(beam);
  const FanResult fan = characteristic_fan(seed_lattice(box, 10), InitialSurfaceData::from_beam(beam, 0.0),
                                           ihat, 0.5, 1e-3, DomainBox{box, 0.0, 1.0});
  double drift = 0.0;
  for (const auto& tr : fan.trajectories)
    for (const auto& s : tr.states) drift = std::max(drift, std::abs(hamiltonian(s, ihat, 1.0)));
  const bool pass = closed <= 1e-10 && drift <= 1e-8 && fan.succeeded() == fan.trajectories.size();
  return {pass, fmt("closed-form max error %.3e (<= 1e-10), Gaussian |F| max %.3e (<= 1e-8)", closed, drift)};
}

// 6. Constant-intensity global solution equals the plane-wave phase.
Outcome plane_wave_consistency() {
  const PlaneWave pw({1.0, 1.0, 1.0});
  double err = 0.0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      for (int k = 0; k < 5; ++k) {
        const double x = i / 9.0, y = j / 9.0, z = k / 4.0;
        err = std::max(err, std::abs(constant_intensity_solution(1.0, 1.0, 0.0, 1.0, x, y, z) - pw.phase(x, y, z)));
      }
  return {err <= 1e-12, fmt("max difference %.3e on 10x10x5 lattice (<= 1e-12)", err)};
}

ViscositySettings gaussian_settings(const std::shared_ptr<const GaussianBeam>& beam, const Grid2D& g, double h) {
  ViscositySettings s;
  s.ihat = ihat_from_intensity(beam, g);
  s.h = lateral_constant(h);
  s.epsilon = 0.05;
  s.dz = 0.01;
  return s;
}

// 7. Viscosity march on the Gaussian beam.
Outcome viscosity_example() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto beam = std::make_shared<const GaussianBeam>(GaussianBeamParams{1.0, 1.0, 1.0});
  const Grid2D g = Grid2D::square(129);
  const ScalarField2D g0 = ScalarField2D::sample(g, 0.0, [](double, double) { return 1.5 * kPi; });
  const MarchResult r = viscosity_march({gaussian_settings(beam, g, 1.5 * kPi), g0}, 1.0);
  std::vector<double> err;
  for (const auto& slice : r.phase)
    err.push_back(field_error_norms(slice, truth_phase(*beam, g, slice.z())).max_pointwise_rel);
  const double secs = seconds_since(t0);
  int drops = 0;
  for (std::size_t k = 2; k < err.size(); ++k) drops += err[k] < err[k - 1];
  const double e01 = err[10], e1 = err[100];
  const bool pass = e01 <= 0.03 && e1 >= 0.05 && e1 <= 0.15 && drops <= 1 && secs <= 60.0;
  return {pass, fmt("max pointwise rel error %.2f%% at z=0.1 (<= 3%%), %.2f%% at z=1 (5-15%%), "
                    "%d decreasing slices (<= 1), %.1f s (<= 60 s)",
                    100 * e01, 100 * e1, drops, secs)};
}

// 8. Cole-Hopf round trip and gauge invariance of the march.
Outcome cole_hopf() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Grid2D g = Grid2D::square(65);
  double round = 0.0;
  for (int t = 0; t < 20; ++t) {
    const double a = 3 * u(rng), b = 3 * u(rng), c = u(rng), f = 1 + 2 * std::abs(u(rng));
    const ScalarField2D phi = ScalarField2D::sample(g, 0.0, [&](double x, double y) {
      return a * std::sin(f * x + c) + b * std::cos(f * y) + c * x * y;
    });
    const ColeHopfField ch = cole_hopf_forward(phi, 0.05);
    const ScalarField2D back = cole_hopf_inverse(ch.psi, 0.05, ch.gauge);
    for (std::size_t n = 0; n < phi.size(); ++n)
      round = std::max(round, std::abs(back.values()[n] - phi.values()[n]));
  }
  const auto beam = std::make_shared<const GaussianBeam>(GaussianBeamParams{1.0, 1.0, 1.0});
  const double shift = 2.75;
  auto run = [&](double c) {
    const ScalarField2D g0 = ScalarField2D::sample(g, 0.0, [c](double, double) { return 1.5 * kPi + c; });
    return viscosity_march({gaussian_settings(beam, g, 1.5 * kPi + c), g0}, 0.5).phase;
  };
  const FieldStack a = run(0.0), b = run(shift);
  double gauge = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t n = 0; n < a[k].size(); ++n)
      gauge = std::max(gauge, std::abs(b[k].values()[n] - a[k].values()[n] - shift));
  return {round <= 1e-12 && gauge <= 1e-8,
          fmt("round trip %.3e (<= 1e-12), shifted march deviation %.3e (<= 1e-8)", round, gauge)};
}

// 9. Discretisation convergence of Ihat in h and of the march in dz.
Outcome convergence() {
  const auto beam = std::make_shared<const GaussianBeam>(GaussianBeamParams{1.0, 1.0, 1.0});
  std::vector<double> errs;
  for (int n : {33, 65, 129}) {
    const Grid2D g = Grid2D::square(n);
    const ScalarField2D fd = compute_i_hat(sample_quantity(*beam, g, 0.0, &Beam::intensity));
    errs.push_back(field_error_norms(fd, sample_i_hat(*beam, g, 0.0)).linf_abs);
  }
  const double r1 = errs[0] / errs[1], r2 = errs[1] / errs[2];

  const Grid2D g = Grid2D::square(65);
  const ScalarField2D g0 = ScalarField2D::sample(g, 0.0, [](double, double) { return 1.5 * kPi; });
  std::vector<ScalarField2D> finals;
  for (double dz : {0.02, 0.01, 0.005}) {
    ViscositySettings s = gaussian_settings(beam, g, 1.5 * kPi);
    s.dz = dz;
    const MarchResult r = viscosity_march({s, g0}, 0.5);
    finals.push_back(r.phase[r.phase.size() - 1]);
  }
  const double d1 = field_error_norms(finals[0], finals[1]).linf_abs;
  const double d2 = field_error_norms(finals[1], finals[2]).linf_abs;
  const double order = std::log2(d1 / d2);
  const bool pass = r1 >= 3.5 && r1 <= 4.5 && r2 >= 3.5 && r2 <= 4.5 && order >= 1.0;
  return {pass, fmt("Ihat error ratios %.3f, %.3f (in [3.5, 4.5]); march self-convergence order %.3f (>= 1)",
                    r1, r2, order)};
}

// 10. Discrete maximum principle for I = 1 and zero right-hand side.
Outcome maximum_principle() {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  const Grid2D g = Grid2D::square(65);
  const ScalarField2D one = ScalarField2D::sample(g, 0.0, [](double, double) { return 1.0; });
  const ScalarField2D zero(g);
  double worst = -INFINITY;
  for (int t = 0; t < 20; ++t) {
    ScalarField2D v(g);
    for (double& x : v.values()) x = u(rng);
    const DirichletBC bc = DirichletBC::sampled(v, "random");
    const ScalarField2D phi = solve_tie({one, zero, 1.0, bc}, 1e-12).phase;
    for (int j = 1; j < 64; ++j)
      for (int i = 1; i < 64; ++i)
        worst = std::max({worst, phi(i, j) - bc.boundary_max(), bc.boundary_min() - phi(i, j)});
  }
  return {worst <= 1e-10, fmt("largest excursion beyond boundary extrema %.3e (<= 1e-10) over 20 samplings", worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"plane-wave TIE, ground-truth bc", plane_wave_truth_bc},
      {"plane-wave TIE, zero bc", plane_wave_zero_bc},
      {"Gaussian TIE, constant bc 3pi/2", gaussian_constant_bc},
      {"boundary-dominance negative controls", boundary_dominance},
      {"characteristics closed form and F conservation", characteristics},
      {"constant-intensity solution equals plane wave", plane_wave_consistency},
      {"viscosity march on the Gaussian beam", viscosity_example},
      {"Cole-Hopf round trip and gauge invariance", cole_hopf},
      {"discretisation convergence", convergence},
      {"discrete maximum principle", maximum_principle},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %zu: %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

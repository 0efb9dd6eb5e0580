#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numbers>

#include "manifest.hpp"
#include "phaselab/characteristics.hpp"
#include "phaselab/viscosity.hpp"

namespace phaselab::app {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotConverged:
    case ErrorCode::BlowUp:
    case ErrorCode::NonPositivePsi:
    case ErrorCode::StepRejected:
      return kSolverFailure;
    case ErrorCode::Io:
      return kIoFailure;
    default:
      return kInvalidConfig;
  }
}

namespace {

std::pair<std::string, std::string> split_kind(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, ""};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string::npos ? text.size() : comma;
    out.push_back(parse_scalar(text.substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(std::string_view s, const std::string& whole) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require(ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(v),
          ErrorCode::InvalidConfig, "cannot parse number '" + whole + "'");
  return v;
}

}  // namespace

double parse_scalar(const std::string& text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  const auto pi = s.find("pi");
  if (pi == std::string_view::npos) return parse_number(s, text);
  std::string_view head = s.substr(0, pi);
  std::string_view tail = s.substr(pi + 2);
  if (!head.empty() && head.back() == '*') head.remove_suffix(1);
  double coef = 1.0;
  if (head == "-") coef = -1.0;
  else if (!head.empty() && head != "+") coef = parse_number(head, text);
  double denom = 1.0;
  if (!tail.empty()) {
    require(tail.front() == '/', ErrorCode::InvalidConfig, "cannot parse number '" + text + "'");
    denom = parse_number(tail.substr(1), text);
    require(denom != 0.0, ErrorCode::InvalidConfig, "division by zero in '" + text + "'");
  }
  return coef * std::numbers::pi / denom;
}

DirichletBC make_bc(const std::string& spec, const Grid2D& grid, const Beam* truth_beam,
                    double z) {
  const auto [kind, args] = split_kind(spec);
  if (kind == "zero") return DirichletBC::constant(grid, 0.0);
  if (kind == "truth") {
    require(truth_beam != nullptr, ErrorCode::InvalidConfig,
            "bc 'truth' needs a beam model");
    return DirichletBC::ground_truth(*truth_beam, grid, z);
  }
  if (kind == "floor10x") return DirichletBC::floor10x(grid);
  if (kind == "sin10") return DirichletBC::sine(grid, 10.0, 1.0);
  if (kind == "sin") {
    const auto v = parse_list(args);
    require(v.size() == 2, ErrorCode::InvalidConfig, "bc 'sin' expects sin:AMPLITUDE,FREQUENCY");
    return DirichletBC::sine(grid, v[0], v[1]);
  }
  if (kind == "gauss") return DirichletBC::gaussian(grid);
  if (kind == "const") return DirichletBC::constant(grid, parse_scalar(args));
  if (kind == "file") {
    const ScalarField2D f = read_fld(args);
    require(f.grid() == grid, ErrorCode::GridMismatch, "bc file " + args + " has a different grid");
    return DirichletBC::sampled(f, spec);
  }
  fail(ErrorCode::InvalidConfig, "unknown bc kind '" + kind + "'");
}

Grid2D make_grid(const RunConfig& cfg) {
  require(cfg.n >= 3, ErrorCode::InvalidConfig, "--grid must be at least 3");
  return Grid2D::square(cfg.n, cfg.domain.value_or(Bounds{}));
}

namespace {

json config_echo(const RunConfig& c) {
  const Bounds b = c.domain.value_or(Bounds{});
  return {{"model", c.model},
          {"xi", {c.xi_x, c.xi_y}},
          {"k", c.k},
          {"z_R", c.z_R},
          {"I0", c.I0},
          {"grid", c.n},
          {"domain", {b.x_min, b.x_max, b.y_min, b.y_max}},
          {"z", c.z},
          {"z_list", c.z_list},
          {"bc", c.bc},
          {"tol", c.tol},
          {"teague", c.teague},
          {"eps", c.eps},
          {"dz", c.dz},
          {"z_end", c.z_end},
          {"g", c.g},
          {"h", c.h},
          {"ihat", c.ihat},
          {"intensity_file", c.intensity_file},
          {"intensity_z_file", c.intensity_z_file},
          {"seeds", c.seeds},
          {"dtau", c.dtau},
          {"tau_end", c.tau_end},
          {"a", c.a_file},
          {"b", c.b_file},
          {"sweep", c.sweep},
          {"out", c.out.string()},
          {"truth", c.truth}};
}

std::shared_ptr<const Beam> beam_of(const RunConfig& c) {
  require(c.k > 0.0, ErrorCode::InvalidConfig, "--k must be positive");
  require(c.z_R > 0.0, ErrorCode::InvalidConfig, "--zr must be positive");
  require(c.I0 > 0.0, ErrorCode::InvalidConfig, "--i0 must be positive");
  return make_beam(c.model, PlaneWaveParams{c.xi_x, c.xi_y, c.k},
                   GaussianBeamParams{c.z_R, c.k, c.I0});
}

void write_field(RunManifest& m, const fs::path& dir, const std::string& name,
                 const ScalarField2D& f) {
  write_fld(dir / name, f);
  m.add_file(name);
}

// Location of the largest |a - b|.
json argmax_abs(const ScalarField2D& a, const ScalarField2D& b) {
  const Grid2D& g = a.grid();
  double best = -1.0;
  int bi = 0, bj = 0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      if (const double d = std::abs(a(i, j) - b(i, j)); d > best) {
        best = d;
        bi = i;
        bj = j;
      }
  return {g.x(bi), g.y(bj)};
}

ScalarField2D difference(const ScalarField2D& a, const ScalarField2D& b) {
  require_same_grid(a, b, "difference");
  ScalarField2D d = a;
  for (std::size_t n = 0; n < d.size(); ++n) d.values()[n] -= b.values()[n];
  return d;
}

// ---- beam ------------------------------------------------------------------

void cmd_beam(const RunConfig& c, RunManifest& m) {
  const auto beam = beam_of(c);
  const Grid2D grid = make_grid(c);
  const BeamFields f = sample_beam(*beam, grid, c.z);
  write_field(m, c.out, "I.fld", f.intensity);
  write_field(m, c.out, "phi.fld", f.phase);
  write_field(m, c.out, "Iz.fld", sample_quantity(*beam, grid, c.z, &Beam::intensity_z));
  m.results()["intensity_range"] = {f.intensity.min(), f.intensity.max()};
  m.results()["phase_range"] = {f.phase.min(), f.phase.max()};
  if (!c.z_list.empty()) {
    const BeamStacks s = beam_stack(*beam, grid, c.z_list);
    for (const auto& name : write_stack(c.out / "stack", s.intensity, "I_z"))
      m.add_file("stack/" + name);
    for (const auto& name : write_stack(c.out / "stack", s.phase, "phi_z"))
      m.add_file("stack/" + name);
  }
}

// ---- tie -------------------------------------------------------------------

void cmd_tie(const RunConfig& c, RunManifest& m) {
  const bool from_files = !c.intensity_file.empty();
  std::shared_ptr<const Beam> beam;
  if (!from_files || c.truth) beam = beam_of(c);

  std::optional<TieProblem> problem;
  const std::string bc_spec = c.bc.empty() ? "truth" : c.bc;
  if (from_files) {
    require(!c.intensity_z_file.empty(), ErrorCode::InvalidConfig,
            "--intensity needs --intensity-z");
    ScalarField2D I = read_fld(c.intensity_file);
    ScalarField2D Iz = read_fld(c.intensity_z_file);
    require_same_grid(I, Iz, "intensity and its z derivative");
    DirichletBC bc = make_bc(bc_spec, I.grid(), beam.get(), I.z());
    problem = TieProblem{std::move(I), std::move(Iz), c.k, std::move(bc)};
  } else {
    const Grid2D grid = make_grid(c);
    problem = beam_tie_problem(*beam, grid, c.z, make_bc(bc_spec, grid, beam.get(), c.z));
  }
  m.results()["bc"] = problem->bc.descriptor();
  if (bc_spec == "gauss") m.results()["bc_note"] = "exp(-|x|^2) evaluated on the configured domain boundary";

  const TieSolution sol = solve_tie(*problem, c.tol);
  m.add_stage("tie", sol.report);
  write_field(m, c.out, "phi.fld", sol.phase);
  m.results()["phase_range"] = {sol.phase.min(), sol.phase.max()};
  m.results()["residual_linf_interior"] = linf(tie_residual(sol.phase, *problem), NormRegion::Interior);

  std::optional<ScalarField2D> truth;
  if (c.truth) {
    truth = ScalarField2D::sample(sol.phase.grid(), sol.phase.z(), [&](double x, double y) {
      return beam->phase(x, y, sol.phase.z());
    });
    write_field(m, c.out, "phi_truth.fld", *truth);
    write_field(m, c.out, "error.fld", difference(sol.phase, *truth));
    m.results()["error"] = to_json(field_error_norms(sol.phase, *truth));
    m.results()["error"]["linf_abs_at"] = argmax_abs(sol.phase, *truth);
  }

  if (c.teague) {
    const TeagueSolution t = solve_tie_teague(*problem, c.tol);
    m.add_stage("teague_psi", t.psi_report);
    m.add_stage("teague_phase", t.phase_report);
    write_field(m, c.out, "phi_teague.fld", t.phase);
    m.results()["teague_vs_direct_linf"] = field_error_norms(t.phase, sol.phase).linf_abs;
    if (truth) m.results()["teague_error"] = to_json(field_error_norms(t.phase, *truth));
  }
}

// ---- tpe-char --------------------------------------------------------------

struct SurfaceChoice {
  InitialSurfaceData data;
  std::optional<std::array<double, 3>> affine;  // alpha, beta, gamma
};

SurfaceChoice make_surface(const std::string& spec, const std::shared_ptr<const Beam>& beam,
                           double k) {
  const auto [kind, args] = split_kind(spec.empty() ? "truth" : spec);
  if (kind == "truth") return {InitialSurfaceData::from_beam(beam, 0.0), std::nullopt};
  if (kind == "const") {
    const double v = parse_scalar(args);
    return {InitialSurfaceData::constant(v, k), std::array<double, 3>{0.0, 0.0, v}};
  }
  if (kind == "affine") {
    const auto v = parse_list(args);
    require(v.size() == 3, ErrorCode::InvalidConfig, "g 'affine' expects affine:A,B,C");
    return {InitialSurfaceData::affine(v[0], v[1], v[2], k), std::array<double, 3>{v[0], v[1], v[2]}};
  }
  if (kind == "file") return {InitialSurfaceData::sampled(read_fld(args), k), std::nullopt};
  fail(ErrorCode::InvalidConfig, "unknown initial phase kind '" + kind + "'");
}

void cmd_tpe_char(const RunConfig& c, RunManifest& m) {
  const auto beam = beam_of(c);
  const Grid2D grid = make_grid(c);
  require(c.seeds >= 1, ErrorCode::InvalidConfig, "--seeds must be at least 1");
  require(c.z_end > 0.0, ErrorCode::InvalidConfig, "--zend must be positive");

  std::unique_ptr<IHatModel> ihat;
  const std::string kind = c.ihat.empty() ? "analytic" : c.ihat;
  if (kind == "analytic") {
    ihat = std::make_unique<BeamIHat>(beam);
  } else if (kind == "zero") {
    ihat = std::make_unique<ZeroIHat>();
  } else if (kind == "sampled" || kind == "fd") {
    std::vector<ScalarField2D> slices;
    const auto steps = static_cast<long>(std::llround(c.z_end / c.dz));
    require(steps >= 1, ErrorCode::InvalidConfig, "--zend must cover at least one --dz");
    for (long n = 0; n <= steps; ++n) {
      const double z = static_cast<double>(n) * c.dz;
      ScalarField2D s = compute_i_hat(sample_quantity(*beam, grid, z, &Beam::intensity));
      s.set_z(z);
      slices.push_back(std::move(s));
    }
    ihat = std::make_unique<SampledIHat>(FieldStack(std::move(slices)));
  } else {
    fail(ErrorCode::InvalidConfig, "unknown ihat source '" + kind + "'");
  }

  const SurfaceChoice surface = make_surface(c.g, beam, c.k);
  const double tau_end = c.tau_end > 0.0 ? c.tau_end : c.z_end / (2.0 * c.k);
  const DomainBox box{grid.bounds(), 0.0, c.z_end};
  const FanResult fan = characteristic_fan(seed_lattice(grid.bounds(), c.seeds), surface.data,
                                           *ihat, tau_end, c.dtau, box);

  write_trajectories_csv(c.out / "trajectories.csv", fan);
  m.add_file("trajectories.csv");
  write_samples_csv(c.out / "samples.csv", fan);
  m.add_file("samples.csv");

  json failures = json::array();
  json exits = json::object();
  double drift = 0.0;
  for (std::size_t id = 0; id < fan.trajectories.size(); ++id) {
    const Trajectory& tr = fan.trajectories[id];
    const std::string e = to_string(tr.exit);
    exits[e] = exits.value(e, 0) + 1;
    if (!fan.errors[id].empty()) failures.push_back({{"seed", id}, {"error", fan.errors[id]}});
    for (const auto& st : tr.states) drift = std::max(drift, std::abs(hamiltonian(st, *ihat, c.k)));
  }
  m.results()["seeds"] = fan.trajectories.size();
  m.results()["succeeded"] = fan.succeeded();
  m.results()["failures"] = failures;
  m.results()["exits"] = exits;
  m.results()["samples"] = fan.samples.size();
  m.results()["hamiltonian_max_abs"] = drift;
  m.results()["ihat"] = ihat->name();

  if (surface.affine && kind == "zero") {
    const auto [a, b, g0] = *surface.affine;
    double err = 0.0;
    for (const auto& s : fan.samples)
      err = std::max(err, std::abs(s.phase - constant_intensity_solution(a, b, g0, c.k, s.x, s.y, s.z)));
    m.results()["closed_form_max_abs"] = err;
  }
  if (c.truth) {
    double err = 0.0;
    for (const auto& s : fan.samples) err = std::max(err, std::abs(s.phase - beam->phase(s.x, s.y, s.z)));
    m.results()["truth_max_abs"] = err;
  }
  if (fan.succeeded() == 0) {
    // Report the first failure's category.
    for (const auto& tr : fan.trajectories)
      if (tr.exit == TrajectoryExit::BlowUp) fail(ErrorCode::BlowUp, "every characteristic failed");
    fail(ErrorCode::InterpolationOutOfDomain, "every characteristic failed");
  }
}

// ---- tpe-visc / hybrid -----------------------------------------------------

ViscositySettings make_settings(const RunConfig& c, const std::shared_ptr<const Beam>& beam,
                                const Grid2D& grid, RunManifest& m) {
  ViscositySettings s;
  s.k = c.k;
  s.epsilon = c.eps;
  s.dz = c.dz;
  s.tol = c.tol;
  const std::string ihat = c.ihat.empty() ? "fd" : c.ihat;
  if (ihat == "fd") s.ihat = ihat_from_intensity(beam, grid);
  else if (ihat == "analytic") s.ihat = ihat_from_model(std::make_shared<BeamIHat>(beam), grid);
  else if (ihat == "zero") s.ihat = ihat_zero(grid);
  else fail(ErrorCode::InvalidConfig, "unknown ihat source '" + ihat + "'");

  std::string h = c.h;
  if (h.empty()) h = beam->name() == "gaussian" ? "const:3pi/2" : "truth";
  const auto [kind, args] = split_kind(h);
  if (kind == "truth") s.h = lateral_from_beam(beam);
  else if (kind == "const") s.h = lateral_constant(parse_scalar(args));
  else fail(ErrorCode::InvalidConfig, "unknown lateral boundary kind '" + kind + "'");

  m.results()["ihat"] = ihat;
  m.results()["h"] = h;
  return s;
}

ScalarField2D initial_phase(const RunConfig& c, const Beam& beam, const Grid2D& grid) {
  const auto [kind, args] = split_kind(c.g.empty() ? "truth" : c.g);
  if (kind == "truth")
    return ScalarField2D::sample(grid, 0.0, [&](double x, double y) { return beam.phase(x, y, 0.0); });
  if (kind == "const") {
    const double v = parse_scalar(args);
    return ScalarField2D::sample(grid, 0.0, [v](double, double) { return v; });
  }
  if (kind == "file") {
    ScalarField2D f = read_fld(args);
    require(f.grid() == grid, ErrorCode::GridMismatch, "g file " + args + " has a different grid");
    return f;
  }
  fail(ErrorCode::InvalidConfig, "unknown initial phase kind '" + kind + "'");
}

void record_march(const RunConfig& c, const MarchResult& r, const Beam& beam, RunManifest& m) {
  long total = 0, worst = 0;
  double worst_res = 0.0;
  for (const auto& rep : r.reports) {
    total += rep.iterations;
    worst = std::max<long>(worst, rep.iterations);
    worst_res = std::max(worst_res, rep.final_residual_rel);
  }
  m.stages()["march"] = {{"steps", r.reports.size()},
                         {"iterations_total", total},
                         {"iterations_max", worst},
                         {"final_residual_rel_max", worst_res}};

  for (const auto& name : write_stack(c.out, r.phase)) m.add_file(name);
  if (!c.truth) return;
  std::vector<ScalarField2D> truth;
  for (const auto& s : r.phase)
    truth.push_back(ScalarField2D::sample(s.grid(), s.z(), [&](double x, double y) {
      return beam.phase(x, y, s.z());
    }));
  const auto rows = viscosity_error_report(r.phase, FieldStack(std::move(truth)));
  write_error_table_csv(c.out / "errors.csv", rows);
  m.add_file("errors.csv");
  json table = json::array();
  for (const auto& row : rows) {
    json j = to_json(row.norms);
    j["z"] = row.z;
    table.push_back(j);
  }
  m.results()["per_slice"] = table;
}

void cmd_tpe_visc(const RunConfig& c, RunManifest& m) {
  const auto beam = beam_of(c);
  const Grid2D grid = make_grid(c);
  const ViscositySettings s = make_settings(c, beam, grid, m);
  m.results()["g"] = c.g.empty() ? "truth" : c.g;
  const MarchResult r = viscosity_march({s, initial_phase(c, *beam, grid)}, c.z_end);
  record_march(c, r, *beam, m);
}

void cmd_hybrid(const RunConfig& c, RunManifest& m) {
  const auto beam = beam_of(c);
  const Grid2D grid = make_grid(c);
  const std::string bc_spec = c.bc.empty() ? "truth" : c.bc;
  TieProblem tp = beam_tie_problem(*beam, grid, 0.0, make_bc(bc_spec, grid, beam.get(), 0.0));
  m.results()["bc"] = tp.bc.descriptor();
  const ViscositySettings s = make_settings(c, beam, grid, m);
  const HybridResult r = hybrid_pipeline(tp, s, c.z_end, c.tol);
  m.add_stage("tie", r.tie.report);
  write_field(m, c.out, "phi_tie.fld", r.tie.phase);
  record_march(c, r.march, *beam, m);
}

// ---- report ----------------------------------------------------------------

void write_long_csv(const fs::path& path, const ScalarField2D& f) {
  std::ofstream os(path);
  require(static_cast<bool>(os), ErrorCode::Io, "cannot open " + path.string() + " for writing");
  os << std::setprecision(17) << "x,y,value\n";
  const Grid2D& g = f.grid();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) os << g.x(i) << ',' << g.y(j) << ',' << f(i, j) << '\n';
  require(static_cast<bool>(os), ErrorCode::Io, "write failed for " + path.string());
}

void ihat_sweep(const RunConfig& c, RunManifest& m) {
  const auto beam = beam_of(c);
  std::ofstream os(c.out / "convergence.csv");
  require(static_cast<bool>(os), ErrorCode::Io, "cannot write convergence.csv");
  os << std::setprecision(17) << "n,h,linf_error,ratio\n";
  json table = json::array();
  double prev = 0.0;
  for (int n : {33, 65, 129}) {
    const Grid2D grid = Grid2D::square(n, c.domain.value_or(Bounds{}));
    const ScalarField2D fd = compute_i_hat(sample_quantity(*beam, grid, c.z, &Beam::intensity));
    const double err = linf(difference(fd, sample_i_hat(*beam, grid, c.z)));
    const double ratio = prev > 0.0 ? prev / err : 0.0;
    os << n << ',' << grid.hx() << ',' << err << ',' << ratio << '\n';
    table.push_back({{"n", n}, {"h", grid.hx()}, {"linf_error", err}, {"ratio", ratio}});
    prev = err;
  }
  m.add_file("convergence.csv");
  m.results()["convergence"] = table;
}

void dz_sweep(const RunConfig& c, RunManifest& m) {
  const auto beam = beam_of(c);
  const Grid2D grid = make_grid(c);
  std::vector<ScalarField2D> finals;
  std::vector<double> steps;
  for (double dz = c.dz; finals.size() < 4; dz *= 0.5) {
    RunConfig rc = c;
    rc.dz = dz;
    const ViscositySettings s = make_settings(rc, beam, grid, m);
    const MarchResult r = viscosity_march({s, initial_phase(rc, *beam, grid)}, c.z_end);
    finals.push_back(r.phase[r.phase.size() - 1]);
    steps.push_back(dz);
  }
  std::ofstream os(c.out / "convergence.csv");
  require(static_cast<bool>(os), ErrorCode::Io, "cannot write convergence.csv");
  os << std::setprecision(17) << "dz,diff_linf,order\n";
  json table = json::array();
  double prev = 0.0;
  for (std::size_t i = 0; i + 1 < finals.size(); ++i) {
    const double d = linf(difference(finals[i], finals[i + 1]));
    const double order = prev > 0.0 ? std::log2(prev / d) : 0.0;
    os << steps[i] << ',' << d << ',' << order << '\n';
    table.push_back({{"dz", steps[i]}, {"diff_linf", d}, {"order", order}});
    prev = d;
  }
  m.add_file("convergence.csv");
  m.results()["convergence"] = table;
}

void cmd_report(const RunConfig& c, RunManifest& m) {
  require(!c.a_file.empty() || !c.sweep.empty(), ErrorCode::InvalidConfig,
          "report needs --a FILE [--b FILE] or --sweep ihat|dz");
  if (!c.a_file.empty()) {
    const ScalarField2D a = read_fld(c.a_file);
    write_long_csv(c.out / "field_a.csv", a);
    m.add_file("field_a.csv");
    json summary = {{"a", c.a_file}, {"a_range", {a.min(), a.max()}}};
    if (!c.b_file.empty()) {
      const ScalarField2D b = read_fld(c.b_file);
      require(a.grid() == b.grid(), ErrorCode::GridMismatch, "report: fields have different grids");
      write_long_csv(c.out / "field_b.csv", b);
      m.add_file("field_b.csv");
      write_long_csv(c.out / "error.csv", difference(a, b));
      m.add_file("error.csv");
      summary["b"] = c.b_file;
      summary["norms"] = to_json(field_error_norms(a, b));
      summary["norms_interior"] = to_json(field_error_norms(a, b, NormRegion::Interior));
    }
    std::ofstream os(c.out / "summary.json");
    require(static_cast<bool>(os), ErrorCode::Io, "cannot write summary.json");
    os << summary.dump(2) << '\n';
    m.add_file("summary.json");
    m.results()["summary"] = summary;
  }
  if (c.sweep == "ihat") ihat_sweep(c, m);
  else if (c.sweep == "dz") dz_sweep(c, m);
  else if (!c.sweep.empty()) fail(ErrorCode::InvalidConfig, "unknown sweep '" + c.sweep + "'");
}

}  // namespace

int run_command(const RunConfig& cfg) {
  try {
    fs::create_directories(cfg.out);
  } catch (const std::exception& e) {
    std::cerr << "error: cannot create output directory " << cfg.out << ": " << e.what() << '\n';
    return kIoFailure;
  }
  RunManifest manifest(cfg.command);
  manifest.config() = config_echo(cfg);
  int code = kOk;
  try {
    if (cfg.command == "beam") cmd_beam(cfg, manifest);
    else if (cfg.command == "tie") cmd_tie(cfg, manifest);
    else if (cfg.command == "tpe-char") cmd_tpe_char(cfg, manifest);
    else if (cfg.command == "tpe-visc") cmd_tpe_visc(cfg, manifest);
    else if (cfg.command == "hybrid") cmd_hybrid(cfg, manifest);
    else if (cfg.command == "report") cmd_report(cfg, manifest);
    else fail(ErrorCode::InvalidConfig, "unknown command '" + cfg.command + "'");
  } catch (const Error& e) {
    code = exit_code_for(e.code());
    manifest.set_error(code, e.what());
  } catch (const fs::filesystem_error& e) {
    code = kIoFailure;
    manifest.set_error(code, e.what());
  } catch (const std::exception& e) {
    code = kSolverFailure;
    manifest.set_error(code, e.what());
  }
  if (code != kOk) std::cerr << "error: " << manifest.doc()["error"]["message"].get<std::string>() << '\n';
  try {
    manifest.write(cfg.out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return code == kOk ? kIoFailure : code;
  }
  return code;
}

}  // namespace phaselab::app

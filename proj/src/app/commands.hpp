#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "phaselab/beams.hpp"
#include "phaselab/error.hpp"
#include "phaselab/grid.hpp"
#include "phaselab/tie.hpp"

namespace phaselab::app {

/// Process exit codes; stable across versions.
enum ExitCode : int { kOk = 0, kInvalidConfig = 2, kSolverFailure = 3, kIoFailure = 4 };

int exit_code_for(ErrorCode code) noexcept;

struct RunConfig {
  std::string command;

  std::string model = "gaussian";
  double xi_x = 1.0;
  double xi_y = 1.0;
  double k = 1.0;
  double z_R = 1.0;
  double I0 = 1.0;

  int n = 129;
  std::optional<Bounds> domain;  // unset: [0,1]^2 for both beams
  double z = 0.0;
  std::vector<double> z_list;

  std::string bc;  // unset: per-command default
  double tol = 1e-10;
  bool teague = false;

  double eps = 5e-2;
  double dz = 1e-2;
  double z_end = 1.0;
  std::string g;       // tpe initial phase: truth | const:C | affine:A,B,C | file:PATH
  std::string h;       // lateral boundary: truth | const:C
  std::string ihat;    // tpe-visc: fd | analytic | zero; tpe-char: analytic | zero | sampled

  // tie file mode
  std::string intensity_file;
  std::string intensity_z_file;

  // tpe-char
  int seeds = 10;
  double dtau = 1e-3;
  double tau_end = 0.0;  // 0: reach z_end

  // report
  std::string a_file;
  std::string b_file;
  std::string sweep;  // ihat | dz

  std::filesystem::path out = "out";
  bool truth = false;
};

/// Parses a scalar such as "0.25", "-3", "3pi/2" or "pi".
double parse_scalar(const std::string& text);

/// Builds the Dirichlet data named by spec: zero, truth, floor10x, sin10,
/// sin:A,F, gauss, const:C, file:PATH.
DirichletBC make_bc(const std::string& spec, const Grid2D& grid, const Beam* truth_beam,
                    double z);

Grid2D make_grid(const RunConfig& cfg);

/// Runs cfg.command, writes outputs and manifest.json into cfg.out and
/// returns the process exit code. Never throws.
int run_command(const RunConfig& cfg);

}  // namespace phaselab::app

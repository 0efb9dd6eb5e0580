// phaselab: phase retrieval experiments from the command line.
//
//   phaselab beam --model gaussian --z 0 --out run/beam
//   phaselab tie --model plane-wave --bc zero --truth --out run/tie
//   phaselab tpe-visc --model gaussian --initial const:3pi/2 --truth --out run/visc
//
// Exit codes: 0 ok, 2 invalid configuration, 3 solver failure, 4 I/O.

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using phaselab::app::RunConfig;

std::vector<double> split_numbers(const std::string& text, std::size_t expect, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(phaselab::app::parse_scalar(item));
  if (expect != 0 && out.size() != expect)
    throw CLI::ValidationError(flag, "expected " + std::to_string(expect) + " comma-separated values");
  return out;
}

void add_beam_flags(CLI::App* sub, RunConfig& c, std::string& xi) {
  sub->add_option("--model", c.model, "Beam model")->check(CLI::IsMember({"plane-wave", "gaussian"}));
  sub->add_option("--xi", xi, "Plane-wave transverse wavevector XI_X,XI_Y");
  sub->add_option("--k", c.k, "Wavenumber");
  sub->add_option("--zr", c.z_R, "Gaussian Rayleigh range");
  sub->add_option("--i0", c.I0, "Gaussian peak amplitude");
}

void add_grid_flags(CLI::App* sub, RunConfig& c, std::string& domain) {
  sub->add_option("--grid", c.n, "Nodes per side");
  sub->add_option("--domain", domain, "XMIN,XMAX,YMIN,YMAX (default 0,1,0,1)");
  sub->add_option("--out", c.out, "Output directory");
  sub->add_option("--tol", c.tol, "Relative CG tolerance");
  sub->add_flag("--truth", c.truth, "Compare against the analytic beam");
}

void add_march_flags(CLI::App* sub, RunConfig& c) {
  sub->add_option("--eps", c.eps, "Viscosity epsilon");
  sub->add_option("--dz", c.dz, "Step in z");
  sub->add_option("--zend", c.z_end, "Final z (a multiple of dz)");
  sub->add_option("--initial", c.g, "Initial phase: truth | const:C | file:PATH");
  sub->add_option("--lateral", c.h, "Lateral boundary: truth | const:C");
  sub->add_option("--ihat", c.ihat, "Ihat source: fd | analytic | zero");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Expands "--config FILE" (key = value lines, '#' comments) into flags placed
// right after the subcommand. Keys already given on the command line are
// skipped, so flags win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string file;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      file = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (file.empty()) return args;
  std::ifstream is(file);
  if (!is) throw CLI::ValidationError("--config", "cannot open " + file);
  std::set<std::string> given;
  for (const auto& a : args)
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
  std::vector<std::string> extra;
  int line_no = 0;
  for (std::string line; std::getline(is, line);) {
    ++line_no;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--config", file + ":" + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (given.count(key)) continue;
    if (value == "true") {
      extra.push_back("--" + key);
    } else if (value != "false") {
      extra.push_back("--" + key);
      extra.push_back(value);
    }
  }
  if (args.size() < 2) return args;
  args.insert(args.begin() + 2, extra.begin(), extra.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase retrieval from intensity: TIE, TPE characteristics and viscosity marching"};
  app.require_subcommand(1);
  app.footer("Every subcommand also accepts --config FILE with key = value lines; flags win.");

  RunConfig c;
  std::string xi, domain, z_list, bc;

  auto* beam = app.add_subcommand("beam", "Sample a ground-truth beam");
  add_beam_flags(beam, c, xi);
  add_grid_flags(beam, c, domain);
  beam->add_option("--z", c.z, "Plane height");
  beam->add_option("--zlist", z_list, "Comma-separated uniform z values for a stack");

  auto* tie = app.add_subcommand("tie", "Solve the transport of intensity equation");
  add_beam_flags(tie, c, xi);
  add_grid_flags(tie, c, domain);
  tie->add_option("--z", c.z, "Plane height");
  tie->add_option("--bc", bc, "zero | truth | floor10x | sin10 | sin:A,F | gauss | const:C | file:PATH");
  tie->add_flag("--teague", c.teague, "Also run the two-Poisson route");
  tie->add_option("--intensity", c.intensity_file, "Intensity .fld (instead of a beam)");
  tie->add_option("--intensity-z", c.intensity_z_file, "Axial intensity derivative .fld");

  auto* chr = app.add_subcommand("tpe-char", "Trace characteristics of the transport of phase equation");
  add_beam_flags(chr, c, xi);
  add_grid_flags(chr, c, domain);
  chr->add_option("--seeds", c.seeds, "Seeds per side of the lattice");
  chr->add_option("--dtau", c.dtau, "RK4 step");
  chr->add_option("--tau-end", c.tau_end, "Parameter range (default: reach --zend)");
  chr->add_option("--zend", c.z_end, "Upper z of the tracing box");
  chr->add_option("--dz", c.dz, "Slice spacing for --ihat sampled");
  chr->add_option("--initial", c.g, "Initial phase: truth | const:C | affine:A,B,C | file:PATH");
  chr->add_option("--ihat", c.ihat, "Ihat source: analytic | zero | sampled");

  auto* visc = app.add_subcommand("tpe-visc", "March the viscous transport of phase equation");
  add_beam_flags(visc, c, xi);
  add_grid_flags(visc, c, domain);
  add_march_flags(visc, c);

  auto* hyb = app.add_subcommand("hybrid", "TIE on z = 0 followed by the viscosity march");
  add_beam_flags(hyb, c, xi);
  add_grid_flags(hyb, c, domain);
  add_march_flags(hyb, c);
  hyb->add_option("--bc", bc, "TIE boundary data (see tie --help)");

  auto* rep = app.add_subcommand("report", "Plot-ready CSV and norm summaries");
  add_beam_flags(rep, c, xi);
  add_grid_flags(rep, c, domain);
  rep->add_option("--a", c.a_file, "Field .fld");
  rep->add_option("--b", c.b_file, "Reference .fld");
  rep->add_option("--sweep", c.sweep, "Convergence table: ihat | dz")->check(CLI::IsMember({"ihat", "dz"}));
  rep->add_option("--z", c.z, "Plane height for --sweep ihat");
  add_march_flags(rep, c);

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = expand_config(std::move(args));
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(reversed);
    c.command = app.get_subcommands().front()->get_name();
    if (!xi.empty()) {
      const auto v = split_numbers(xi, 2, "--xi");
      c.xi_x = v[0];
      c.xi_y = v[1];
    }
    if (!domain.empty()) {
      const auto v = split_numbers(domain, 4, "--domain");
      c.domain = phaselab::Bounds{v[0], v[1], v[2], v[3]};
    }
    if (!z_list.empty()) c.z_list = split_numbers(z_list, 0, "--zlist");
    c.bc = bc;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : phaselab::app::kInvalidConfig;
  } catch (const phaselab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return phaselab::app::kInvalidConfig;
  }
  return phaselab::app::run_command(c);
}

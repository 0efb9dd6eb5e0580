#include "manifest.hpp"

#include <ctime>
#include <fstream>

#include "phaselab/error.hpp"
#include "phaselab/kernels.hpp"

namespace phaselab::app {

RunManifest::RunManifest(std::string command) : start_(std::chrono::steady_clock::now()) {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  started_at_ = buf;
  doc_["command"] = std::move(command);
  doc_["version"] = kVersion;
  doc_["kernel_isa"] = std::string(kernels::to_string(kernels::active().isa));
  doc_["files"] = nlohmann::json::array();
  doc_["stages"] = nlohmann::json::object();
  doc_["config"] = nlohmann::json::object();
  doc_["results"] = nlohmann::json::object();
}

void RunManifest::add_file(const std::string& name) { doc_["files"].push_back(name); }

void RunManifest::add_stage(const std::string& stage, const CgReport& report) {
  doc_["stages"][stage] = to_json(report);
}

void RunManifest::set_error(int exit_code, const std::string& message) {
  doc_["error"] = {{"exit_code", exit_code}, {"message", message}};
}

void RunManifest::write(const std::filesystem::path& dir) {
  doc_["status"] = doc_.contains("error") ? "failed" : "ok";
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  doc_["timing"] = {{"started_at", started_at_}, {"wall_clock_s", secs}};
  std::ofstream os(dir / "manifest.json");
  require(static_cast<bool>(os), ErrorCode::Io, "cannot write manifest in " + dir.string());
  os << doc_.dump(2) << '\n';
}

nlohmann::json to_json(const ErrorNorms& n) {
  return {{"l2_rel", n.l2_rel},
          {"linf_rel", n.linf_rel},
          {"linf_abs", n.linf_abs},
          {"max_pointwise_rel", n.max_pointwise_rel},
          {"absolute_fallback", n.absolute_fallback}};
}

nlohmann::json to_json(const CgReport& r) {
  return {{"iterations", r.iterations},
          {"final_residual_rel", r.final_residual_rel},
          {"converged", r.converged}};
}

nlohmann::json to_json(const Grid2D& g) {
  const Bounds& b = g.bounds();
  return {{"nx", g.nx()},
          {"ny", g.ny()},
          {"domain", {b.x_min, b.x_max, b.y_min, b.y_max}}};
}

}  // namespace phaselab::app

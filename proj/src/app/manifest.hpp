#pragma once

#include <chrono>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "phaselab/grid.hpp"
#include "phaselab/sparse.hpp"

namespace phaselab::app {

inline constexpr const char* kVersion = "0.1.0";

/// Run manifest written next to every command's outputs. Keys serialise
/// sorted; wall-clock data lives only under "timing" so two runs of the same
/// configuration produce identical manifests apart from that object.
class RunManifest {
 public:
  explicit RunManifest(std::string command);

  nlohmann::json& config() { return doc_["config"]; }
  nlohmann::json& results() { return doc_["results"]; }
  nlohmann::json& stages() { return doc_["stages"]; }

  void add_file(const std::string& name);
  void add_stage(const std::string& stage, const CgReport& report);
  void set_error(int exit_code, const std::string& message);

  /// Stamps status/timing and writes <dir>/manifest.json.
  void write(const std::filesystem::path& dir);

  const nlohmann::json& doc() const { return doc_; }

 private:
  nlohmann::json doc_;
  std::chrono::steady_clock::time_point start_;
  std::string started_at_;
};

nlohmann::json to_json(const ErrorNorms& n);
nlohmann::json to_json(const CgReport& r);
nlohmann::json to_json(const Grid2D& g);

}  // namespace phaselab::app

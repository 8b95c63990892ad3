#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dscflow/scenarios.hpp"
#include "dscflow/sim.hpp"

namespace dscflow {

enum class OutputFormat { Csv, Vtk, Both };

/// Everything a run needs. For scenario runs `config` starts from the
/// scenario's own configuration and keys in the file override it.
struct RunSettings {
  std::string scenario;           // empty for mesh-file runs
  int resolution = 0;             // 0 = scenario default
  ScenarioParameters parameters;  // scenario.<name> keys
  std::filesystem::path mesh_path;
  SimulationConfig config;
  double initial_T = 0.0;  // mesh-file runs
  Vec3 initial_u = Vec3::Zero();
  OutputFormat format = OutputFormat::Csv;
};

/// Parses "key = value" lines ('#' starts a comment). Relative mesh paths
/// resolve against `base_dir`. Throws ConfigError with the offending line.
RunSettings parse_config(std::istream& in, const std::filesystem::path& base_dir = ".");
RunSettings parse_config(const std::filesystem::path& path);

/// Settings for a scenario with all of its defaults.
RunSettings scenario_settings(const std::string& scenario, int resolution = 0,
                              const ScenarioParameters& parameters = {});

/// Complete config text; parse_config(emit_config(s)) reproduces s.
std::string emit_config(const RunSettings& settings);

struct PreparedRun {
  Mesh mesh;
  SimulationConfig config;
  FieldState initial;
};

/// Builds the scenario or reads the mesh file and sets up the initial state.
PreparedRun prepare_run(const RunSettings& settings);

std::string_view format_name(OutputFormat f) noexcept;

}  // namespace dscflow

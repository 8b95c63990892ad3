#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dscflow/config.hpp"
#include "dscflow/error.hpp"
#include "dscflow/mesh_io.hpp"
#include "dscflow/output.hpp"
#include "dscflow/scenarios.hpp"
#include "dscflow/sim.hpp"

namespace fs = std::filesystem;
using namespace dscflow;

namespace {

struct RunArgs {
  std::string config;
  std::string scenario;
  std::string mesh;
  int resolution = 0;
  std::int64_t steps = -1;
  double tau = 0.0;
  std::string output = "dscflow_out";
  std::string format;
  std::int64_t every = -1;
  int coarsen_period = -1;
  std::vector<std::string> probes;
  std::vector<std::string> params;
  std::vector<std::string> bcs;
  bool quiet = false;
};

ScenarioParameters parse_params(const std::vector<std::string>& items) {
  ScenarioParameters out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("--param expects name=value, got '" + item + "'");
    try {
      out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("--param value is not a number: '" + item + "'");
    }
  }
  return out;
}

Vec3 parse_point(const std::string& text) {
  std::string t = text;
  for (char& c : t) {
    if (c == ',') c = ' ';
  }
  std::istringstream is(t);
  Vec3 p;
  if (!(is >> p.x() >> p.y() >> p.z())) throw ConfigError("--probe expects x,y,z, got '" + text + "'");
  return p;
}

OutputFormat parse_format(const std::string& f) {
  if (f == "csv") return OutputFormat::Csv;
  if (f == "vtk") return OutputFormat::Vtk;
  if (f == "both") return OutputFormat::Both;
  throw ConfigError("--format must be csv, vtk or both");
}

RunSettings settings_from(const RunArgs& a) {
  RunSettings s;
  const int sources = !a.config.empty() + !a.scenario.empty() + !a.mesh.empty();
  if (sources != 1) throw ConfigError("give exactly one of --config, --scenario or --mesh");
  if (!a.config.empty()) {
    s = parse_config(fs::path(a.config));
  } else if (!a.scenario.empty()) {
    s = scenario_settings(a.scenario, a.resolution, parse_params(a.params));
  } else {
    s.mesh_path = a.mesh;
  }
  auto& c = s.config;
  if (a.steps >= 0) c.n_steps = a.steps;
  if (a.tau > 0.0) c.tau = a.tau;
  if (!a.format.empty()) s.format = parse_format(a.format);
  if (a.every >= 0) c.output_every = a.every;
  if (a.coarsen_period == 0) c.coarsening.enabled = false;
  if (a.coarsen_period > 0) {
    c.coarsening.enabled = true;
    c.coarsening.period = a.coarsen_period;
  }
  if (!a.probes.empty()) {
    c.probes.clear();
    for (const auto& p : a.probes) c.probes.push_back({std::nullopt, parse_point(p)});
  }
  for (const auto& b : a.bcs) {
    const auto eq = b.find('=');
    if (eq == std::string::npos) throw ConfigError("--bc expects tag=rule, got '" + b + "'");
    c.bcs[b.substr(0, eq)] = BoundaryRule::parse(b.substr(eq + 1));
  }
  return s;
}

std::string stem_for(std::int64_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%06lld", static_cast<long long>(step));
  return buf;
}

int do_run(const RunArgs& a) {
  const RunSettings s = settings_from(a);
  PreparedRun prep = prepare_run(s);
  const fs::path dir(a.output);
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "config.txt");
    cfg << emit_config(s);
  }
  std::int64_t files = 0;
  RunWriters writers;
  writers.snapshot = [&](std::int64_t k, const FieldState& st) {
    files += static_cast<std::int64_t>(write_snapshot(dir, stem_for(k), prep.mesh, st, s.format).size());
  };
  std::int64_t warnings = 0;
  writers.report = [&](const StepReport& r) {
    if (r.cfl_warning && warnings++ == 0) {
      std::cerr << "warning: CFL number " << r.cfl << " above " << prep.config.cfl_warn << " at step " << r.step
                << "\n";
    }
  };
  FieldState state = prep.initial;
  const RunResult res = run(prep.mesh, state, prep.config, writers);
  {
    std::ofstream pf(dir / "probes.csv", std::ios::binary);
    if (!pf) throw IoError("cannot write probes.csv");
    write_probes_csv(pf, res.probes);
  }
  if (!a.quiet) {
    std::cout << "steps: " << res.steps << "\n"
              << "cells: " << prep.mesh.num_cells() << "\n"
              << "snapshots: " << res.snapshots << " (" << files << " files in " << dir.string() << ")\n"
              << "max CFL: " << res.max_cfl << "\n"
              << "pressure iterations: " << res.pressure_iterations << "\n";
  }
  return 0;
}

int do_validate(const std::string& path) {
  const Mesh mesh = read_mesh(fs::path(path));
  std::map<std::string, std::size_t> per_tag;
  for (const auto& b : mesh.boundary_faces) ++per_tag[mesh.tags[b.tag]];
  double vmin = std::numeric_limits<double>::infinity();
  double vsum = 0.0;
  double closure = 0.0;
  for (const auto& c : mesh.cells) {
    vmin = std::min(vmin, c.volume);
    vsum += c.volume;
    Vec3 sum = Vec3::Zero();
    double scale = 0.0;
    for (const auto& f : c.face_vectors) {
      sum += f;
      scale += f.norm();
    }
    closure = std::max(closure, sum.norm() / scale);
  }
  std::cout << "vertices: " << mesh.vertices.size() << "\n"
            << "cells: " << mesh.num_cells() << "\n"
            << "interior faces: " << mesh.interior_faces.size() << "\n"
            << "boundary faces: " << mesh.boundary_faces.size() << "\n";
  for (const auto& [tag, n] : per_tag) std::cout << "  tag " << tag << ": " << n << "\n";
  std::cout << "total volume: " << vsum << "\n"
            << "min cell volume: " << vmin << "\n"
            << "max closure residual: " << closure << "\n";
  return 0;
}

int do_emit(const RunArgs& a, const std::string& out) {
  const RunSettings s = settings_from(a);
  const std::string text = emit_config(s);
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw IoError("cannot write '" + out + "'");
    f << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DSC finite-volume solver for Boussinesq flow on hexahedral meshes", "dscflow"};
  app.require_subcommand(1);

  RunArgs ra;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario or a mesh file with a config");
  run_cmd->add_option("-c,--config", ra.config, "Config file");
  run_cmd->add_option("-s,--scenario", ra.scenario, "Built-in scenario")
      ->check(CLI::IsMember({"cavity", "step", "cylinder", "annulus", "slab"}));
  run_cmd->add_option("-m,--mesh", ra.mesh, "Mesh file (needs --bc for every tag)");
  run_cmd->add_option("-r,--resolution", ra.resolution, "Scenario resolution")->check(CLI::PositiveNumber);
  run_cmd->add_option("-n,--steps", ra.steps, "Number of time steps")->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--tau", ra.tau, "Time step [s]")->check(CLI::PositiveNumber);
  run_cmd->add_option("-o,--output", ra.output, "Output directory")->capture_default_str();
  run_cmd->add_option("-f,--format", ra.format, "Snapshot format")->check(CLI::IsMember({"csv", "vtk", "both"}));
  run_cmd->add_option("--every", ra.every, "Snapshot cadence in steps (0: initial and final only)")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--coarsen-period", ra.coarsen_period, "Coarsening period in steps (0 disables)")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("-p,--probe", ra.probes, "Probe position x,y,z (repeatable)");
  run_cmd->add_option("--param", ra.params, "Scenario parameter name=value (repeatable)");
  run_cmd->add_option("--bc", ra.bcs, "Boundary rule tag=rule (repeatable)");
  run_cmd->add_flag("-q,--quiet", ra.quiet, "No summary");

  std::string mesh_path;
  auto* val_cmd = app.add_subcommand("validate-mesh", "Check a mesh file and print counts");
  val_cmd->add_option("mesh", mesh_path, "Mesh file")->required();

  RunArgs ea;
  std::string emit_out;
  auto* emit_cmd = app.add_subcommand("emit-config", "Print a complete config for a scenario or config file");
  emit_cmd->add_option("-c,--config", ea.config, "Config file to normalize");
  emit_cmd->add_option("-s,--scenario", ea.scenario, "Built-in scenario")
      ->check(CLI::IsMember({"cavity", "step", "cylinder", "annulus", "slab"}));
  emit_cmd->add_option("-r,--resolution", ea.resolution, "Scenario resolution")->check(CLI::PositiveNumber);
  emit_cmd->add_option("-n,--steps", ea.steps, "Number of time steps")->check(CLI::NonNegativeNumber);
  emit_cmd->add_option("--param", ea.params, "Scenario parameter name=value (repeatable)");
  emit_cmd->add_option("-o,--output", emit_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*run_cmd) return do_run(ra);
    if (*val_cmd) return do_validate(mesh_path);
    if (*emit_cmd) return do_emit(ea, emit_out);
  } catch (const dscflow::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dscflow/boundary.hpp"
#include "dscflow/coarsen.hpp"
#include "dscflow/hexmesh.hpp"
#include "dscflow/pressure.hpp"
#include "dscflow/reflection.hpp"
#include "dscflow/state.hpp"

namespace dscflow {

/// Volumetric heat source q [K/s]: a uniform value, optionally overridden
/// per cell.
struct SourceField {
  double uniform = 0.0;
  std::vector<double> per_cell;

  double at(std::size_t cell) const { return per_cell.empty() ? uniform : per_cell[cell]; }
  std::vector<double> expand(std::size_t num_cells) const;
  bool operator==(const SourceField&) const = default;
};

enum class ProbeField { T, Ux, Uy, Uz, P, Umag };

std::string_view probe_field_name(ProbeField f) noexcept;
std::optional<ProbeField> parse_probe_field(std::string_view name) noexcept;

struct ProbeSpec {
  std::optional<std::size_t> cell;  // takes precedence over position
  Vec3 position = Vec3::Zero();
  std::vector<ProbeField> fields{ProbeField::T, ProbeField::Ux, ProbeField::Uy, ProbeField::Uz, ProbeField::P};
  bool operator==(const ProbeSpec&) const = default;
};

struct ProbeSample {
  double time;
  std::vector<double> values;  // one per ProbeSpec::fields entry
};

/// A probe bound to a cell, keeping the most recent `capacity` samples.
class Probe {
 public:
  Probe(const Mesh& mesh, const ProbeSpec& spec, std::size_t capacity);

  std::size_t cell() const noexcept { return cell_; }
  const std::vector<ProbeField>& fields() const noexcept { return fields_; }
  const std::deque<ProbeSample>& samples() const noexcept { return samples_; }
  void record(const FieldState& state);
  /// Time series of one sampled field.
  std::vector<double> series(ProbeField f) const;
  std::vector<double> times() const;

 private:
  std::size_t cell_;
  std::vector<ProbeField> fields_;
  std::size_t capacity_;
  std::deque<ProbeSample> samples_;
};

struct SimulationConfig {
  double tau = 1e-3;
  MaterialProps props;
  SourceField q;
  CoarseningConfig coarsening;
  PressureSolverConfig pressure;
  BoundaryRules bcs;
  std::int64_t n_steps = 0;
  std::int64_t output_every = 0;  // snapshot cadence in steps, 0 = initial and final only
  std::vector<ProbeSpec> probes;
  std::size_t probe_capacity = 1u << 20;
  bool freeze_flow = false;  // transport T only, velocity and pressure untouched
  double cfl_warn = 0.9;
  double cfl_max = 2.0;

  /// Throws ConfigError or BoundaryError.
  void validate(const Mesh& mesh) const;
};

struct StepReport {
  std::int64_t step = 0;
  double time = 0.0;  // nodal time after the step
  int pressure_iterations = 0;
  double pressure_residual = 0.0;
  bool coarsened = false;
  double cfl = 0.0;
  bool cfl_warning = false;
};

/// max over cells of max(|u| tau / h, 2 alpha tau / h^2, 2 nu tau / h^2)
/// with h the cell's smallest node-vector length.
double cfl_number(const Mesh& mesh, const FieldState& state, const MaterialProps& props, double tau);

/// Sets every node and port to the given uniform values, imposes the
/// boundary ports and puts nodes at -tau/2 so that the first step's ports
/// are stamped t = 0.
FieldState initial_state(const Mesh& mesh, const SimulationConfig& config, double T0, const Vec3& u0 = Vec3::Zero());

/// Puts per-cell initial values onto nodes and ports, imposes the boundary
/// ports and sets the starting clock.
void prepare_state(const Mesh& mesh, const SimulationConfig& config, FieldState& state);

/// Precomputed per-run data: resolved boundary tables and expanded sources.
class Stepper {
 public:
  Stepper(const Mesh& mesh, const SimulationConfig& config);

  /// One full cycle: connection, boundary ports, pressure, port projection,
  /// coarsening (when due), reflection, health check. Steps are numbered from 1.
  StepReport step(FieldState& state, std::int64_t step_index) const;

  const ResolvedBoundary& boundary() const noexcept { return bcs_; }

 private:
  const Mesh& mesh_;
  SimulationConfig config_;
  ResolvedBoundary bcs_;
  std::vector<double> q_;
};

StepReport step(const Mesh& mesh, FieldState& state, const SimulationConfig& config, std::int64_t step_index);

struct RunWriters {
  std::function<void(std::int64_t step, const FieldState&)> snapshot;
  std::function<void(const StepReport&)> report;
};

struct RunResult {
  std::vector<Probe> probes;
  std::int64_t steps = 0;
  std::int64_t snapshots = 0;
  double max_cfl = 0.0;
  std::int64_t pressure_iterations = 0;
};

/// Runs config.n_steps steps from `state`. Snapshots go out at step 0, every
/// output_every steps and after the last step.
RunResult run(const Mesh& mesh, FieldState& state, const SimulationConfig& config, const RunWriters& writers = {});

}  // namespace dscflow

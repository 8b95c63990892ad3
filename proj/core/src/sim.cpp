#include "dscflow/sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dscflow/connection.hpp"
#include "dscflow/error.hpp"

namespace dscflow {

std::vector<double> SourceField::expand(std::size_t num_cells) const {
  if (!per_cell.empty()) {
    if (per_cell.size() != num_cells) throw ConfigError("source field has the wrong number of cells");
    return per_cell;
  }
  return std::vector<double>(num_cells, uniform);
}

std::string_view probe_field_name(ProbeField f) noexcept {
  switch (f) {
    case ProbeField::T: return "T";
    case ProbeField::Ux: return "ux";
    case ProbeField::Uy: return "uy";
    case ProbeField::Uz: return "uz";
    case ProbeField::P: return "p";
    case ProbeField::Umag: return "umag";
  }
  return "?";
}

std::optional<ProbeField> parse_probe_field(std::string_view name) noexcept {
  for (ProbeField f : {ProbeField::T, ProbeField::Ux, ProbeField::Uy, ProbeField::Uz, ProbeField::P, ProbeField::Umag}) {
    if (probe_field_name(f) == name) return f;
  }
  return std::nullopt;
}

namespace {

double sample(const FieldState& s, std::size_t c, ProbeField f) {
  switch (f) {
    case ProbeField::T: return s.node(Field::T, c);
    case ProbeField::Ux: return s.node(Field::Ux, c);
    case ProbeField::Uy: return s.node(Field::Uy, c);
    case ProbeField::Uz: return s.node(Field::Uz, c);
    case ProbeField::P: return s.node(Field::P, c);
    case ProbeField::Umag: return s.velocity(c).norm();
  }
  return 0.0;
}

std::size_t probe_cell(const Mesh& mesh, const ProbeSpec& spec) {
  if (spec.cell) {
    if (*spec.cell >= mesh.num_cells()) throw ConfigError("probe cell index out of range");
    return *spec.cell;
  }
  const std::int64_t c = locate_cell(mesh, spec.position);
  if (c < 0) {
    std::ostringstream os;
    os << "probe position (" << spec.position.x() << ", " << spec.position.y() << ", " << spec.position.z()
       << ") lies outside the mesh";
    throw ConfigError(os.str());
  }
  return static_cast<std::size_t>(c);
}

}  // namespace

Probe::Probe(const Mesh& mesh, const ProbeSpec& spec, std::size_t capacity)
    : cell_(probe_cell(mesh, spec)), fields_(spec.fields), capacity_(std::max<std::size_t>(capacity, 1)) {
  if (fields_.empty()) throw ConfigError("probe samples no fields");
}

void Probe::record(const FieldState& state) {
  ProbeSample s{state.node_time(), {}};
  s.values.reserve(fields_.size());
  for (ProbeField f : fields_) s.values.push_back(sample(state, cell_, f));
  if (samples_.size() == capacity_) samples_.pop_front();
  samples_.push_back(std::move(s));
}

std::vector<double> Probe::series(ProbeField f) const {
  const auto it = std::find(fields_.begin(), fields_.end(), f);
  if (it == fields_.end()) throw ConfigError("probe does not sample " + std::string(probe_field_name(f)));
  const auto k = static_cast<std::size_t>(it - fields_.begin());
  std::vector<double> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) out.push_back(s.values[k]);
  return out;
}

std::vector<double> Probe::times() const {
  std::vector<double> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) out.push_back(s.time);
  return out;
}

void SimulationConfig::validate(const Mesh& mesh) const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("tau must be positive and finite");
  props.validate();
  coarsening.validate();
  pressure.validate();
  if (n_steps < 0) throw ConfigError("steps must be non-negative");
  if (output_every < 0) throw ConfigError("output.every must be non-negative");
  if (!(cfl_warn > 0.0) || !(cfl_max >= cfl_warn)) throw ConfigError("cfl thresholds must satisfy 0 < warn <= max");
  if (!q.per_cell.empty() && q.per_cell.size() != mesh.num_cells()) {
    throw ConfigError("source field has the wrong number of cells");
  }
  if (!std::isfinite(q.uniform)) throw ConfigError("source.q must be finite");
  for (const auto& [tag, rule] : bcs) {
    if (!rule.u.allFinite() || !std::isfinite(rule.T) || !std::isfinite(rule.p)) {
      throw ConfigError("boundary rule for '" + tag + "' has a non-finite value");
    }
  }
  for (const auto& tag : mesh.tags) {
    if (!bcs.count(tag)) throw BoundaryError("no boundary rule for tag '" + tag + "'");
  }
  for (const auto& p : probes) (void)probe_cell(mesh, p);
  if (pressure.reference_cell >= mesh.num_cells()) throw ConfigError("pressure.reference_cell out of range");
}

double cfl_number(const Mesh& mesh, const FieldState& state, const MaterialProps& props, double tau) {
  const double nu = props.kinematic_viscosity();
  const double diff = 2.0 * std::max(props.alpha, nu) * tau;
  double cfl = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const double h = mesh.cells[c].min_spacing;
    const double adv = state.velocity(c).norm() * tau / h;
    cfl = std::max({cfl, adv, diff / (h * h)});
  }
  return cfl;
}

void prepare_state(const Mesh& mesh, const SimulationConfig& config, FieldState& state) {
  if (state.num_cells() != mesh.num_cells()) throw ConfigError("state does not match the mesh");
  state.ports_from_nodes(FieldMask::all());
  for (Field f : {Field::T, Field::Ux, Field::Uy, Field::Uz, Field::P}) {
    auto fl = state.flux(f);
    std::fill(fl.begin(), fl.end(), 0.0);
  }
  const ResolvedBoundary bcs = resolve_boundary(mesh, config.bcs);
  apply_boundary_conditions(mesh, state, bcs, FieldMask::transport());
  state.set_clock(-0.5 * config.tau, config.tau);
}

FieldState initial_state(const Mesh& mesh, const SimulationConfig& config, double T0, const Vec3& u0) {
  FieldState state(mesh.num_cells());
  state.fill(Field::T, T0);
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) state.set_velocity(c, u0);
  prepare_state(mesh, config, state);
  return state;
}

Stepper::Stepper(const Mesh& mesh, const SimulationConfig& config)
    : mesh_(mesh), config_(config), bcs_(resolve_boundary(mesh, config.bcs)), q_(config.q.expand(mesh.num_cells())) {
  config_.validate(mesh);
}

StepReport Stepper::step(FieldState& state, std::int64_t step_index) const {
  const double tau = config_.tau;
  const MaterialProps& props = config_.props;
  const bool flow = !config_.freeze_flow;
  const FieldMask fields = flow ? FieldMask::transport() : FieldMask{Field::T};

  StepReport rep;
  rep.step = step_index;

  connection_sweep(mesh_, state, fields);
  apply_boundary_conditions(mesh_, state, bcs_, fields);
  state.advance_ports(tau);

  if (flow) {
    const PressureResult pr = pressure_iterate(mesh_, state, tau, props.rho_inf, config_.pressure, bcs_.pressure);
    rep.pressure_iterations = pr.iterations;
    rep.pressure_residual = pr.residual;
    project_port_velocities(mesh_, state, tau, props.rho_inf);
  }

  ReflectionOptions opts;
  opts.update_velocity = flow;
  reflection_sweep(mesh_, state, props, q_, tau, opts,
                   [&](FieldState& s) { rep.coarsened = coarsen_sweep(mesh_, s, config_.coarsening, step_index); });
  state.advance_nodes(tau);
  rep.time = state.node_time();

  if (!state.finite()) throw NonfiniteStateError("non-finite value after step " + std::to_string(step_index));
  rep.cfl = cfl_number(mesh_, state, props, tau);
  if (rep.cfl > config_.cfl_max) {
    throw CflExceededError("CFL number " + std::to_string(rep.cfl) + " exceeds " + std::to_string(config_.cfl_max) +
                               " at step " + std::to_string(step_index),
                           rep.cfl);
  }
  rep.cfl_warning = rep.cfl > config_.cfl_warn;
  return rep;
}

StepReport step(const Mesh& mesh, FieldState& state, const SimulationConfig& config, std::int64_t step_index) {
  return Stepper(mesh, config).step(state, step_index);
}

RunResult run(const Mesh& mesh, FieldState& state, const SimulationConfig& config, const RunWriters& writers) {
  const Stepper stepper(mesh, config);
  RunResult res;
  res.probes.reserve(config.probes.size());
  for (const auto& p : config.probes) res.probes.emplace_back(mesh, p, config.probe_capacity);

  auto emit = [&](std::int64_t k) {
    ++res.snapshots;
    if (writers.snapshot) writers.snapshot(k, state);
  };
  emit(0);
  for (std::int64_t k = 1; k <= config.n_steps; ++k) {
    const StepReport rep = stepper.step(state, k);
    res.steps = k;
    res.max_cfl = std::max(res.max_cfl, rep.cfl);
    res.pressure_iterations += rep.pressure_iterations;
    for (auto& p : res.probes) p.record(state);
    if (writers.report) writers.report(rep);
    const bool due = config.output_every > 0 && k % config.output_every == 0;
    if (due || k == config.n_steps) emit(k);
  }
  return res;
}

}  // namespace dscflow

#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dscflow/hexmesh.hpp"
#include "dscflow/sim.hpp"
#include "dscflow/state.hpp"

namespace dscflow {

/// Named numeric overrides for a scenario, e.g. {"reynolds", 150}.
using ScenarioParameters = std::map<std::string, double>;

struct Scenario {
  std::string name;
  int resolution = 0;
  Mesh mesh;
  SimulationConfig config;
  FieldState initial;
  double length_scale = 1.0;    // L: slab length, cavity side, channel height, cylinder diameter, annulus gap
  double velocity_scale = 0.0;  // U: lid, inflow or free-stream speed, 0 when there is none
};

const std::vector<std::string>& scenario_names();

/// Parameters a scenario accepts, with their defaults.
ScenarioParameters scenario_defaults(std::string_view name);

/// Builds mesh, configuration and initial state. Throws ConfigError for an
/// unknown name, a resolution below the scenario minimum or an unknown
/// parameter.
Scenario build_scenario(std::string_view name, int resolution, const ScenarioParameters& parameters = {});

/// Default resolution used when none is given.
int default_resolution(std::string_view name);

/// Regular grid of nx*ny*nz cells of size h on [origin, origin + n h].
/// `active(i, j, k)` drops cells (obstacles); `tag(i, j, k, face)` names
/// every face whose neighbor is outside the domain or inactive.
Mesh structured_mesh(int nx, int ny, int nz, const Vec3& origin, const Vec3& h,
                     const std::function<bool(int, int, int)>& active,
                     const std::function<std::string(int, int, int, int)>& tag);

/// Annulus r_in < r < r_out swept over the full circle, one cell thick in z.
/// Faces are tagged "inner", "outer", "front" (z = 0) and "back".
Mesh annulus_mesh(int n_r, int n_theta, double r_in, double r_out, double thickness);

}  // namespace dscflow

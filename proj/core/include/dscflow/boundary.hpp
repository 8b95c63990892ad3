#pragma once

#include <map>
#include <string>
#include <vector>

#include "dscflow/connection.hpp"
#include "dscflow/hexmesh.hpp"
#include "dscflow/pressure.hpp"
#include "dscflow/state.hpp"

namespace dscflow {

enum class VelocityBc {
  NoSlip,        // u = 0
  Prescribed,    // u = value (inflow, moving wall)
  ZeroGradient,  // outflow
  Slip,          // zero normal velocity, zero tangential gradient (symmetry)
};

enum class TemperatureBc { Adiabatic, Fixed };

/// Boundary treatment for one tag. Zero normal pressure gradient applies
/// everywhere except on faces with a fixed pressure (outflow).
struct BoundaryRule {
  VelocityBc velocity = VelocityBc::NoSlip;
  Vec3 u = Vec3::Zero();
  TemperatureBc temperature = TemperatureBc::Adiabatic;
  double T = 0.0;
  bool fixed_pressure = false;
  double p = 0.0;

  static BoundaryRule no_slip_wall() { return {}; }
  static BoundaryRule adiabatic() { return {}; }
  static BoundaryRule fixed_temperature(double T);
  static BoundaryRule moving_wall(const Vec3& u);
  static BoundaryRule inflow(const Vec3& u, double T);
  static BoundaryRule outflow(double p = 0.0);
  static BoundaryRule symmetry();

  /// Text form used in config files, e.g. "inflow 1 0 0 300".
  std::string to_string() const;
  /// Inverse of to_string(); throws ConfigError.
  static BoundaryRule parse(const std::string& text);

  bool operator==(const BoundaryRule&) const = default;
};

using BoundaryRules = std::map<std::string, BoundaryRule>;

/// Boundary rules expanded to per-face tables for the sweeps.
struct ResolvedBoundary {
  BoundaryTable table;        // per boundary face, per field
  std::vector<char> slip;     // per boundary face
  PressureBoundary pressure;  // per boundary face
};

/// Throws BoundaryError when a mesh tag has no rule.
ResolvedBoundary resolve_boundary(const Mesh& mesh, const BoundaryRules& rules);

/// Overrides the boundary ports (and fluxes) of the selected transport fields
/// using the one-sided interface relation: fixed values are imposed,
/// zero-gradient faces take the value that makes the face flux vanish.
/// Slip faces additionally lose the normal part of the port velocity.
void apply_boundary_conditions(const Mesh& mesh, FieldState& state, const ResolvedBoundary& bcs,
                               FieldMask fields = FieldMask::transport());

}  // namespace dscflow

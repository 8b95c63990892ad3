#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "dscflow/connection.hpp"
#include "dscflow/hexmesh.hpp"
#include "dscflow/state.hpp"

namespace dscflow {

/// Oberbeck-Boussinesq material constants.
struct MaterialProps {
  double alpha = 0.0;    // thermal diffusivity [m^2/s]
  double eta = 0.0;      // dynamic viscosity [Pa s]
  double rho_inf = 1.0;  // reference density [kg/m^3]
  double beta = 0.0;     // thermal expansion [1/K]
  double T_inf = 0.0;    // reference temperature [K]
  Vec3 g = Vec3::Zero();  // gravity [m/s^2]

  double kinematic_viscosity() const { return eta / rho_inf; }
  /// Throws ConfigError on alpha < 0, eta < 0, rho_inf <= 0 or non-finite values.
  void validate() const;
  bool operator==(const MaterialProps&) const = default;
};

/// Gradient at the node from opposite-port differences contracted with gamma.
Vec3 nodal_gradient(const HexCell& cell, const CellPorts& ports);

/// Mass flux u^p . f on every face.
CellPorts face_mass_fluxes(const HexCell& cell, const std::array<Vec3, 6>& port_velocity);

/// T(t + tau/2) = T + tau/V sum_i (alpha S_i - T^p_i F_i) + tau q.
double update_temperature_node(const HexCell& cell, double T, const CellPorts& T_ports, const CellPorts& T_flux,
                               const CellPorts& mass_flux, const MaterialProps& props, double q, double tau);

/// u_k(t + tau/2) = u_k + tau (beta (T - T_inf) g_k - dp/dx_k / rho_inf)
///                + tau/V sum_i (nu S_{k,i} - u^p_{k,i} F_i).
Vec3 update_velocity_node(const HexCell& cell, const Vec3& u, double T, const std::array<Vec3, 6>& u_ports,
                          const std::array<Vec3, 6>& u_flux, const CellPorts& mass_flux, const Vec3& grad_p,
                          const MaterialProps& props, double tau);

struct ReflectionOptions {
  bool update_temperature = true;
  bool update_velocity = true;
};

/// Updates all nodal T and u from the current ports and fluxes. `pre_hook`
/// runs first (the coarsening step, when due). Throws NonfiniteStateError
/// if any updated nodal value is not finite.
void reflection_sweep(const Mesh& mesh, FieldState& state, const MaterialProps& props, std::span<const double> q,
                      double tau, const ReflectionOptions& options = {},
                      const std::function<void(FieldState&)>& pre_hook = {});

}  // namespace dscflow

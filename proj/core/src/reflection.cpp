#include "dscflow/reflection.hpp"

#include <cmath>
#include <string>

#include "dscflow/error.hpp"

namespace dscflow {

void MaterialProps::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("material.alpha must be finite and >= 0");
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw ConfigError("material.eta must be finite and >= 0");
  if (!(rho_inf > 0.0) || !std::isfinite(rho_inf)) throw ConfigError("material.rho_inf must be finite and > 0");
  if (!std::isfinite(beta)) throw ConfigError("material.beta must be finite");
  if (!std::isfinite(T_inf)) throw ConfigError("material.T_inf must be finite");
  if (!g.allFinite()) throw ConfigError("material.g must be finite");
}

Vec3 nodal_gradient(const HexCell& cell, const CellPorts& ports) {
  const Vec3 zb(ports[1] - ports[0], ports[3] - ports[2], ports[5] - ports[4]);
  return cell.gamma * zb;
}

CellPorts face_mass_fluxes(const HexCell& cell, const std::array<Vec3, 6>& port_velocity) {
  CellPorts F;
  for (int i = 0; i < 6; ++i) F[i] = port_velocity[i].dot(cell.face_vectors[i]);
  return F;
}

double update_temperature_node(const HexCell& cell, double T, const CellPorts& T_ports, const CellPorts& T_flux,
                               const CellPorts& mass_flux, const MaterialProps& props, double q, double tau) {
  double surface = 0.0;
  for (int i = 0; i < 6; ++i) surface += props.alpha * T_flux[i] - T_ports[i] * mass_flux[i];
  return T + (tau / cell.volume) * surface + tau * q;
}

Vec3 update_velocity_node(const HexCell& cell, const Vec3& u, double T, const std::array<Vec3, 6>& u_ports,
                          const std::array<Vec3, 6>& u_flux, const CellPorts& mass_flux, const Vec3& grad_p,
                          const MaterialProps& props, double tau) {
  const double nu = props.kinematic_viscosity();
  Vec3 surface = Vec3::Zero();
  for (int i = 0; i < 6; ++i) surface += nu * u_flux[i] - mass_flux[i] * u_ports[i];
  const Vec3 body = props.beta * (T - props.T_inf) * props.g - grad_p / props.rho_inf;
  return u + tau * body + (tau / cell.volume) * surface;
}

void reflection_sweep(const Mesh& mesh, FieldState& state, const MaterialProps& props, std::span<const double> q,
                      double tau, const ReflectionOptions& options, const std::function<void(FieldState&)>& pre_hook) {
  if (pre_hook) pre_hook(state);
  const std::size_t n = mesh.num_cells();
  for (std::size_t c = 0; c < n; ++c) {
    const HexCell& cell = mesh.cells[c];
    std::array<Vec3, 6> up;
    for (int i = 0; i < 6; ++i) up[i] = state.port_velocity(c, i);
    const CellPorts F = face_mass_fluxes(cell, up);
    const double T_old = state.node(Field::T, c);

    if (options.update_velocity) {
      std::array<Vec3, 6> uflux;
      for (int i = 0; i < 6; ++i) {
        for (int k = 0; k < 3; ++k) uflux[i](k) = state.flux(velocity_component(k), c, i);
      }
      const Vec3 grad_p = nodal_gradient(cell, state.cell_ports(Field::P, c));
      const Vec3 u_new = update_velocity_node(cell, state.velocity(c), T_old, up, uflux, F, grad_p, props, tau);
      if (!u_new.allFinite()) throw NonfiniteStateError("non-finite velocity in cell " + std::to_string(c));
      state.set_velocity(c, u_new);
    }
    if (options.update_temperature) {
      const double qc = q.empty() ? 0.0 : q[c];
      const double T_new = update_temperature_node(cell, T_old, state.cell_ports(Field::T, c),
                                                   state.cell_fluxes(Field::T, c), F, props, qc, tau);
      if (!std::isfinite(T_new)) throw NonfiniteStateError("non-finite temperature in cell " + std::to_string(c));
      state.node(Field::T, c) = T_new;
    }
  }
}

}  // namespace dscflow

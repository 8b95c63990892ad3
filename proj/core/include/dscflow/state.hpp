#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "dscflow/types.hpp"

namespace dscflow {

/// Nodal and port values of every field on a mesh. Nodal values are stamped
/// half a time step after the ports they were computed from.
///
/// Port storage is per (cell, local face); the two sides of an interior face
/// hold the same value after each connection sweep. `flux` holds the face
/// flux S = f . grad Z reconstructed during the last connection sweep.
class FieldState {
 public:
  FieldState() = default;
  explicit FieldState(std::size_t num_cells);

  std::size_t num_cells() const noexcept { return num_cells_; }

  std::span<double> node(Field f) { return nodes_[index(f)]; }
  std::span<const double> node(Field f) const { return nodes_[index(f)]; }
  std::span<double> port(Field f) { return ports_[index(f)]; }
  std::span<const double> port(Field f) const { return ports_[index(f)]; }
  std::span<double> flux(Field f) { return fluxes_[index(f)]; }
  std::span<const double> flux(Field f) const { return fluxes_[index(f)]; }

  double& node(Field f, std::size_t cell) { return nodes_[index(f)][cell]; }
  double node(Field f, std::size_t cell) const { return nodes_[index(f)][cell]; }
  double& port(Field f, std::size_t cell, int face) { return ports_[index(f)][slot(cell, face)]; }
  double port(Field f, std::size_t cell, int face) const { return ports_[index(f)][slot(cell, face)]; }
  double& flux(Field f, std::size_t cell, int face) { return fluxes_[index(f)][slot(cell, face)]; }
  double flux(Field f, std::size_t cell, int face) const { return fluxes_[index(f)][slot(cell, face)]; }

  /// The six port values of one cell.
  std::array<double, 6> cell_ports(Field f, std::size_t cell) const;
  std::array<double, 6> cell_fluxes(Field f, std::size_t cell) const;

  Vec3 velocity(std::size_t cell) const;
  void set_velocity(std::size_t cell, const Vec3& u);
  Vec3 port_velocity(std::size_t cell, int face) const;
  void set_port_velocity(std::size_t cell, int face, const Vec3& u);

  /// Sets nodes and ports of `f` to `value` everywhere; clears fluxes.
  void fill(Field f, double value);
  /// Copies every nodal value onto the six ports of its cell.
  void ports_from_nodes(FieldMask fields = FieldMask::all());

  double node_time() const noexcept { return node_time_; }
  double port_time() const noexcept { return port_time_; }
  /// Sets the clock so that nodes are at `t` and ports at t - tau/2.
  void set_clock(double t, double tau);
  void advance_ports(double tau) { port_time_ += tau; }
  void advance_nodes(double tau) { node_time_ += tau; }

  /// True when every nodal and port value is finite.
  bool finite() const;

  static std::size_t slot(std::size_t cell, int face) { return cell * 6 + static_cast<std::size_t>(face); }

 private:
  std::size_t num_cells_ = 0;
  std::array<std::vector<double>, kFieldCount> nodes_;
  std::array<std::vector<double>, kFieldCount> ports_;
  std::array<std::vector<double>, kFieldCount> fluxes_;
  double node_time_ = 0.0;
  double port_time_ = 0.0;
};

/// A single scattering channel: one port value and its nodal image.
struct Channel {
  double port = 0.0;
  double node = 0.0;
  bool operator==(const Channel&) const = default;
};

/// Swaps the port and node components. An involution.
constexpr Channel node_boundary_map(Channel c) noexcept { return Channel{c.node, c.port}; }

/// Applies node_boundary_map to every channel (cell, face, field) of a
/// state. Channels are laid out field-major, then cell, then face.
std::vector<Channel> channels_of(const FieldState& state, FieldMask fields = FieldMask::all());
std::vector<Channel> node_boundary_map(std::span<const Channel> channels);

enum class Quantity { Temperature, Velocity, Pressure };

/// Dense per-cell arrays in cell order: one column for T and p, three
/// (row-major) for velocity.
std::vector<double> snapshot(const FieldState& state, Quantity which);

}  // namespace dscflow

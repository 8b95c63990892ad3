#include "dscflow/state.hpp"

#include <algorithm>
#include <cmath>

namespace dscflow {

FieldState::FieldState(std::size_t num_cells) : num_cells_(num_cells) {
  for (std::size_t f = 0; f < kFieldCount; ++f) {
    nodes_[f].assign(num_cells, 0.0);
    ports_[f].assign(num_cells * 6, 0.0);
    fluxes_[f].assign(num_cells * 6, 0.0);
  }
}

std::array<double, 6> FieldState::cell_ports(Field f, std::size_t cell) const {
  std::array<double, 6> out;
  const double* p = ports_[index(f)].data() + cell * 6;
  std::copy(p, p + 6, out.begin());
  return out;
}

std::array<double, 6> FieldState::cell_fluxes(Field f, std::size_t cell) const {
  std::array<double, 6> out;
  const double* p = fluxes_[index(f)].data() + cell * 6;
  std::copy(p, p + 6, out.begin());
  return out;
}

Vec3 FieldState::velocity(std::size_t cell) const {
  return {nodes_[1][cell], nodes_[2][cell], nodes_[3][cell]};
}

void FieldState::set_velocity(std::size_t cell, const Vec3& u) {
  for (int k = 0; k < 3; ++k) nodes_[1 + k][cell] = u(k);
}

Vec3 FieldState::port_velocity(std::size_t cell, int face) const {
  const std::size_t s = slot(cell, face);
  return {ports_[1][s], ports_[2][s], ports_[3][s]};
}

void FieldState::set_port_velocity(std::size_t cell, int face, const Vec3& u) {
  const std::size_t s = slot(cell, face);
  for (int k = 0; k < 3; ++k) ports_[1 + k][s] = u(k);
}

void FieldState::fill(Field f, double value) {
  std::fill(nodes_[index(f)].begin(), nodes_[index(f)].end(), value);
  std::fill(ports_[index(f)].begin(), ports_[index(f)].end(), value);
  std::fill(fluxes_[index(f)].begin(), fluxes_[index(f)].end(), 0.0);
}

void FieldState::ports_from_nodes(FieldMask fields) {
  for (std::size_t fi = 0; fi < kFieldCount; ++fi) {
    if (!fields.contains(static_cast<Field>(fi))) continue;
    for (std::size_t c = 0; c < num_cells_; ++c) {
      std::fill_n(ports_[fi].begin() + static_cast<std::ptrdiff_t>(c * 6), 6, nodes_[fi][c]);
    }
  }
}

void FieldState::set_clock(double t, double tau) {
  node_time_ = t;
  port_time_ = t - 0.5 * tau;
}

bool FieldState::finite() const {
  auto ok = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  for (std::size_t f = 0; f < kFieldCount; ++f) {
    if (!ok(nodes_[f]) || !ok(ports_[f])) return false;
  }
  return true;
}

std::vector<Channel> channels_of(const FieldState& state, FieldMask fields) {
  std::vector<Channel> out;
  for (std::size_t fi = 0; fi < kFieldCount; ++fi) {
    const Field f = static_cast<Field>(fi);
    if (!fields.contains(f)) continue;
    const auto nodes = state.node(f);
    const auto ports = state.port(f);
    for (std::size_t c = 0; c < state.num_cells(); ++c) {
      for (int iota = 0; iota < 6; ++iota) out.push_back(Channel{ports[c * 6 + iota], nodes[c]});
    }
  }
  return out;
}

std::vector<Channel> node_boundary_map(std::span<const Channel> channels) {
  std::vector<Channel> out(channels.size());
  std::transform(channels.begin(), channels.end(), out.begin(), [](Channel c) { return node_boundary_map(c); });
  return out;
}

std::vector<double> snapshot(const FieldState& state, Quantity which) {
  const std::size_t n = state.num_cells();
  switch (which) {
    case Quantity::Temperature: {
      auto v = state.node(Field::T);
      return {v.begin(), v.end()};
    }
    case Quantity::Pressure: {
      auto v = state.node(Field::P);
      return {v.begin(), v.end()};
    }
    case Quantity::Velocity: {
      std::vector<double> out(3 * n);
      for (std::size_t c = 0; c < n; ++c) {
        for (int k = 0; k < 3; ++k) out[3 * c + k] = state.node(velocity_component(k), c);
      }
      return out;
    }
  }
  return {};
}

}  // namespace dscflow

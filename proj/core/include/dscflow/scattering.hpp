#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

#include "dscflow/state.hpp"

namespace dscflow {

/// Incident/outgoing decomposition of a recorded DSC process.
///
/// Ports are recorded at t = m*tau, nodes at t + tau/2. The decomposition
/// is defined recursively from a process at rest before t = 0:
///
///   z_in(t)          = z_p(t)          - nb(z_out(t - tau/2))
///   z_out(t + tau/2) = z_n(t + tau/2)  - nb(z_in(t))
///
/// Only the last `depth` instants are retained.
class ScatteringView {
 public:
  ScatteringView(std::size_t num_channels, double tau, std::size_t depth = 2);

  /// Port values at t. The first call must be at t = 0.
  void record_ports(double t, std::span<const double> port_values);
  /// Nodal images at t + tau/2 following the last recorded ports.
  void record_nodes(double t, std::span<const double> node_values);

  /// Records the ports and nodes of a state that has just completed a step
  /// (ports at port_time, nodes at port_time + tau/2).
  void record_step(const FieldState& state, FieldMask fields = FieldMask::all());

  std::size_t num_channels() const noexcept { return channels_; }
  std::size_t depth() const noexcept { return depth_; }
  /// Instants recorded so far (port records).
  std::size_t instants() const noexcept { return instants_; }

  /// lag = 0 is the most recent instant.
  std::span<const double> incident(std::size_t lag = 0) const;
  std::span<const double> outgoing(std::size_t lag = 0) const;

  struct Residuals {
    double port = 0.0;  // max |z_p(t) - nb(z_out(t - tau/2)) - z_in(t)|
    double node = 0.0;  // max |z_n(t + tau/2) - nb(z_in(t)) - z_out(t + tau/2)|
  };
  /// Reconstruction identities at the most recent complete instant, using
  /// the raw values last passed to record_ports/record_nodes.
  Residuals identities() const;

 private:
  std::size_t channels_;
  double tau_;
  std::size_t depth_;
  std::size_t instants_ = 0;
  bool awaiting_nodes_ = false;
  double last_port_time_ = 0.0;
  std::deque<std::vector<double>> incident_;
  std::deque<std::vector<double>> outgoing_;
  std::vector<double> last_ports_;
  std::vector<double> last_nodes_;
};

/// Port and nodal-image values of every channel of `state`, in the layout
/// of channels_of().
std::vector<double> channel_ports(const FieldState& state, FieldMask fields = FieldMask::all());
std::vector<double> channel_nodes(const FieldState& state, FieldMask fields = FieldMask::all());

}  // namespace dscflow

#include "dscflow/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dscflow/error.hpp"

namespace dscflow {

ScatteringView::ScatteringView(std::size_t num_channels, double tau, std::size_t depth)
    : channels_(num_channels), tau_(tau), depth_(std::max<std::size_t>(depth, 2)) {
  if (!(tau > 0.0)) throw HistoryError("scattering view needs tau > 0");
}

void ScatteringView::record_ports(double t, std::span<const double> port_values) {
  if (port_values.size() != channels_) throw HistoryError("port record has wrong channel count");
  const double tol = 1e-9 * tau_;
  if (instants_ == 0) {
    if (std::abs(t) > tol) {
      throw HistoryError("history does not start at rest: first port record at t = " + std::to_string(t) +
                         " instead of 0");
    }
  } else {
    if (awaiting_nodes_) throw HistoryError("port record without intervening node record");
    if (std::abs(t - (last_port_time_ + tau_)) > tol) throw HistoryError("port records are not consecutive");
  }

  std::vector<double> in(channels_);
  if (outgoing_.empty()) {
    std::copy(port_values.begin(), port_values.end(), in.begin());
  } else {
    const auto& out_prev = outgoing_.front();
    for (std::size_t i = 0; i < channels_; ++i) in[i] = port_values[i] - out_prev[i];
  }
  incident_.push_front(std::move(in));
  if (incident_.size() > depth_) incident_.pop_back();
  last_ports_.assign(port_values.begin(), port_values.end());
  last_port_time_ = t;
  awaiting_nodes_ = true;
  ++instants_;
}

void ScatteringView::record_nodes(double t, std::span<const double> node_values) {
  if (node_values.size() != channels_) throw HistoryError("node record has wrong channel count");
  if (!awaiting_nodes_) throw HistoryError("node record without preceding port record");
  if (std::abs(t - (last_port_time_ + 0.5 * tau_)) > 1e-9 * tau_) {
    throw HistoryError("node record is not half a step after the ports");
  }
  const auto& in = incident_.front();
  std::vector<double> out(channels_);
  for (std::size_t i = 0; i < channels_; ++i) out[i] = node_values[i] - in[i];
  outgoing_.push_front(std::move(out));
  if (outgoing_.size() > depth_) outgoing_.pop_back();
  last_nodes_.assign(node_values.begin(), node_values.end());
  awaiting_nodes_ = false;
}

void ScatteringView::record_step(const FieldState& state, FieldMask fields) {
  record_ports(state.port_time(), channel_ports(state, fields));
  record_nodes(state.node_time(), channel_nodes(state, fields));
}

std::span<const double> ScatteringView::incident(std::size_t lag) const {
  if (lag >= incident_.size()) throw HistoryError("incident lag beyond retained depth");
  return incident_[lag];
}

std::span<const double> ScatteringView::outgoing(std::size_t lag) const {
  if (lag >= outgoing_.size()) throw HistoryError("outgoing lag beyond retained depth");
  return outgoing_[lag];
}

ScatteringView::Residuals ScatteringView::identities() const {
  Residuals r;
  if (instants_ == 0 || awaiting_nodes_) throw HistoryError("no complete instant recorded");
  const auto& in = incident_.front();
  const auto& out = outgoing_.front();
  const std::vector<double>* out_prev = outgoing_.size() > 1 ? &outgoing_[1] : nullptr;
  for (std::size_t i = 0; i < channels_; ++i) {
    const double prev = out_prev ? (*out_prev)[i] : 0.0;
    r.port = std::max(r.port, std::abs(last_ports_[i] - (prev + in[i])));
    r.node = std::max(r.node, std::abs(last_nodes_[i] - (in[i] + out[i])));
  }
  return r;
}

std::vector<double> channel_ports(const FieldState& state, FieldMask fields) {
  std::vector<double> out;
  for (const Channel& c : channels_of(state, fields)) out.push_back(c.port);
  return out;
}

std::vector<double> channel_nodes(const FieldState& state, FieldMask fields) {
  std::vector<double> out;
  for (const Channel& c : channels_of(state, fields)) out.push_back(c.node);
  return out;
}

}  // namespace dscflow

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dscflow/hexmesh.hpp"
#include "dscflow/state.hpp"

namespace dscflow {

using FaceWeights = std::array<double, 6>;

enum class WeightScheme { FaceArea, Uniform, Custom };

/// Periodic cellular coarse-graining. Nodal values of the target fields are
/// replaced by a convex combination of the cell's six port values every
/// `period` steps; ports are left untouched.
struct CoarseningConfig {
  bool enabled = true;
  int period = 10;  // in full time steps
  WeightScheme scheme = WeightScheme::FaceArea;
  FaceWeights custom_weights{};  // used with WeightScheme::Custom, same for every cell
  FieldMask targets = FieldMask::velocity();
  double min_period_ratio = 10.0;  // period * tau must be at least this many tau

  /// Throws ConfigError: period < 1, period below min_period_ratio, invalid
  /// custom weights, or targets including pressure.
  void validate() const;
  bool due(std::int64_t step_index) const noexcept { return enabled && step_index % period == 0; }
  bool operator==(const CoarseningConfig&) const = default;
};

/// w_i = |f_i| / sum_k |f_k|.
FaceWeights face_area_weights(const HexCell& cell);

FaceWeights uniform_weights();

/// Throws ConfigError unless every w_i is in [0, 1] and they sum to 1.
void validate_weights(const FaceWeights& w);

/// sum_i w_i ports_i.
double coarsen_cell(const std::array<double, 6>& ports, const FaceWeights& weights);

/// Applies coarsen_cell to every cell and target field when
/// config.due(step_index); otherwise does nothing. Returns whether it ran.
bool coarsen_sweep(const Mesh& mesh, FieldState& state, const CoarseningConfig& config, std::int64_t step_index);

}  // namespace dscflow

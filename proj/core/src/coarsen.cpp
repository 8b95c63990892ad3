#include "dscflow/coarsen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dscflow/error.hpp"

namespace dscflow {

void validate_weights(const FaceWeights& w) {
  double sum = 0.0;
  for (double wi : w) {
    if (!(wi >= 0.0 && wi <= 1.0)) throw ConfigError("coarsening weights must lie in [0, 1]");
    sum += wi;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ConfigError("coarsening weights must sum to 1");
}

void CoarseningConfig::validate() const {
  if (period < 1) throw ConfigError("coarsening.period must be >= 1");
  if (enabled && static_cast<double>(period) < min_period_ratio) {
    throw ConfigError("coarsening.period must be at least coarsening.min_period_ratio (" +
                      std::to_string(min_period_ratio) + ") time steps");
  }
  if (scheme == WeightScheme::Custom) validate_weights(custom_weights);
  if (targets.contains(Field::P)) throw ConfigError("coarsening.targets may not include pressure");
}

FaceWeights face_area_weights(const HexCell& cell) {
  const double total = std::accumulate(cell.face_areas.begin(), cell.face_areas.end(), 0.0);
  FaceWeights w;
  for (int i = 0; i < 6; ++i) w[i] = cell.face_areas[i] / total;
  return w;
}

FaceWeights uniform_weights() {
  FaceWeights w;
  w.fill(1.0 / 6.0);
  return w;
}

double coarsen_cell(const std::array<double, 6>& ports, const FaceWeights& weights) {
  // Anchored at the smallest port and clamped: constants and the convex
  // hull survive rounding.
  const auto [lo, hi] = std::minmax_element(ports.begin(), ports.end());
  double v = 0.0;
  for (int i = 0; i < 6; ++i) v += weights[i] * (ports[i] - *lo);
  return std::clamp(*lo + v, *lo, *hi);
}

bool coarsen_sweep(const Mesh& mesh, FieldState& state, const CoarseningConfig& config, std::int64_t step_index) {
  if (!config.due(step_index)) return false;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    FaceWeights w;
    switch (config.scheme) {
      case WeightScheme::FaceArea: w = face_area_weights(mesh.cells[c]); break;
      case WeightScheme::Uniform: w = uniform_weights(); break;
      case WeightScheme::Custom: w = config.custom_weights; break;
    }
    for (std::size_t fi = 0; fi < kFieldCount; ++fi) {
      const Field f = static_cast<Field>(fi);
      if (!config.targets.contains(f)) continue;
      state.node(f, c) = coarsen_cell(state.cell_ports(f, c), w);
    }
  }
  return true;
}

}  // namespace dscflow

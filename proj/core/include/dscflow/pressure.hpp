#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "dscflow/connection.hpp"
#include "dscflow/hexmesh.hpp"
#include "dscflow/state.hpp"

namespace dscflow {

enum class CellOrdering { Natural, RedBlack };

/// How the per-cell equation treats the face pressures.
///  - Coupled: face pressures are eliminated through the interface relation,
///    so the cell equation is linear in the cell's own pressure and its
///    neighbors' pressures (tangential differences lagged one iteration).
///  - FrozenFaces: face pressures are held fixed (pressure_cell_solve).
enum class CellEquation { Coupled, FrozenFaces };

struct PressureSolverConfig {
  int max_iterations = 500;
  double tolerance = 1e-8;  // relative to rho_inf * max |u^p . f| or the fixed-pressure drive
  double relaxation = 1.0;  // SOR factor, 1 = Gauss-Seidel
  CellOrdering ordering = CellOrdering::Natural;
  CellEquation equation = CellEquation::Coupled;
  std::size_t reference_cell = 0;  // pinned to 0 when no face pressure is fixed

  void validate() const;
  bool operator==(const PressureSolverConfig&) const = default;
};

/// Per boundary face: nullopt for zero normal gradient, a value for a fixed
/// face pressure. Empty means zero normal gradient everywhere.
using PressureBoundary = std::vector<std::optional<double>>;

/// I = sum_i u^p_i . f_i.
double cell_divergence_integral(const HexCell& cell, const std::array<Vec3, 6>& u_ports);
double cell_divergence_integral(const FieldState& state, const HexCell& cell, std::size_t c);

/// The nodal pressure that makes tau sum_i S_i = rho_inf I hold for this
/// cell with the face pressures held fixed, blended with p_old by the
/// relaxation factor. Throws SingularCellError on a zero diagonal.
double pressure_cell_solve(const HexCell& cell, double divergence, const CellPorts& face_pressures, double p_old,
                           double tau, double rho_inf, double relaxation = 1.0);

/// Re-establishes face pressures from the nodal pressures with the interface
/// relation (zero normal gradient or fixed value on boundary faces) and
/// stores the resulting pressure fluxes.
void pressure_face_sweep(const Mesh& mesh, FieldState& state, const PressureBoundary& boundary = {});

/// Per-cell residual tau sum_i S_i - rho_inf I with the stored pressure fluxes.
std::vector<double> pressure_residuals(const Mesh& mesh, const FieldState& state, double tau, double rho_inf);

struct PressureResult {
  int iterations = 0;
  double residual = 0.0;   // final max cell residual
  double threshold = 0.0;  // tolerance * flux scale
  std::vector<double> history;  // max residual before the first and after each iteration
};

/// Alternates cell sweeps and face sweeps until max |residual| <= threshold.
/// Throws NonConvergenceError after max_iterations.
PressureResult pressure_iterate(const Mesh& mesh, FieldState& state, double tau, double rho_inf,
                                const PressureSolverConfig& config, const PressureBoundary& boundary = {});

/// Removes the pressure-gradient part of the face-normal port velocities:
/// u^p -= (tau / rho_inf) (S_p / |f|^2) f. After a converged pressure_iterate
/// every cell's divergence integral drops to residual / rho_inf.
void project_port_velocities(const Mesh& mesh, FieldState& state, double tau, double rho_inf);

/// Cells grouped so that no two neighbors share a color (2 colors on
/// bipartite meshes), concatenated in color order.
std::vector<std::size_t> red_black_order(const Mesh& mesh);

}  // namespace dscflow

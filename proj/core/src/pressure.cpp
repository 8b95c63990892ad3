#include "dscflow/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "dscflow/error.hpp"
#include "dscflow/reflection.hpp"

namespace dscflow {

void PressureSolverConfig::validate() const {
  if (max_iterations < 1) throw ConfigError("pressure.max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw ConfigError("pressure.tolerance must be > 0");
  if (!(relaxation > 0.0 && relaxation < 2.0)) throw ConfigError("pressure.omega must lie in (0, 2)");
}

double cell_divergence_integral(const HexCell& cell, const std::array<Vec3, 6>& u_ports) {
  double I = 0.0;
  for (int i = 0; i < 6; ++i) I += u_ports[i].dot(cell.face_vectors[i]);
  return I;
}

double cell_divergence_integral(const FieldState& state, const HexCell& cell, std::size_t c) {
  double I = 0.0;
  for (int i = 0; i < 6; ++i) I += state.port_velocity(c, i).dot(cell.face_vectors[i]);
  return I;
}

namespace {

// Tangential part of the face flux: s . z^n without the normal entry.
double tangential_part(const HexCell& cell, int face, const Vec3& differences) {
  const int axis = face_axis(face);
  double t = 0.0;
  for (int mu = 0; mu < 3; ++mu) {
    if (mu != axis) t += cell.s[face](mu) * differences(mu);
  }
  return t;
}

Vec3 opposite_differences(const CellPorts& p) { return {p[1] - p[0], p[3] - p[2], p[5] - p[4]}; }

bool has_fixed_pressure(const PressureBoundary& boundary) {
  return std::any_of(boundary.begin(), boundary.end(), [](const auto& v) { return v.has_value(); });
}

const std::optional<double>& boundary_value(const PressureBoundary& boundary, std::int32_t index) {
  static const std::optional<double> none;
  return boundary.empty() ? none : boundary[static_cast<std::size_t>(index)];
}

}  // namespace

double pressure_cell_solve(const HexCell& cell, double divergence, const CellPorts& face_pressures, double p_old,
                           double tau, double rho_inf, double relaxation) {
  const Vec3 d = opposite_differences(face_pressures);
  double diag = 0.0;
  double rest = 0.0;
  for (int i = 0; i < 6; ++i) {
    const double a = cell.normal_coefficient(i);
    diag += a;
    rest += tangential_part(cell, i, d) - a * face_pressures[i];
  }
  if (diag == 0.0) throw SingularCellError("pressure cell equation has zero diagonal");
  const double p_star = (rho_inf * divergence / tau - rest) / diag;
  return p_old + relaxation * (p_star - p_old);
}

void pressure_face_sweep(const Mesh& mesh, FieldState& state, const PressureBoundary& boundary) {
  const auto nodes = state.node(Field::P);
  std::vector<double> next(mesh.num_cells() * 6);
  for (const InteriorFace& f : mesh.interior_faces) {
    const InterfaceValue v = update_interface(mesh.cells[f.cell_a], f.face_a, nodes[f.cell_a],
                                              state.cell_ports(Field::P, f.cell_a), mesh.cells[f.cell_b], f.face_b,
                                              nodes[f.cell_b], state.cell_ports(Field::P, f.cell_b));
    next[FieldState::slot(f.cell_a, f.face_a)] = v.port;
    next[FieldState::slot(f.cell_b, f.face_b)] = v.port;
  }
  for (std::size_t bi = 0; bi < mesh.boundary_faces.size(); ++bi) {
    const BoundaryFace& bf = mesh.boundary_faces[bi];
    const CellPorts cp = state.cell_ports(Field::P, bf.cell);
    const auto& fixed = boundary_value(boundary, static_cast<std::int32_t>(bi));
    const InterfaceValue v = fixed ? boundary_fixed(mesh.cells[bf.cell], bf.face, nodes[bf.cell], cp, *fixed)
                                   : boundary_zero_gradient(mesh.cells[bf.cell], bf.face, nodes[bf.cell], cp);
    next[FieldState::slot(bf.cell, bf.face)] = v.port;
  }
  auto ports = state.port(Field::P);
  std::copy(next.begin(), next.end(), ports.begin());

  // Fluxes from the re-established face pressures; interior pairs keep the
  // antisymmetric part so they telescope exactly.
  auto flux = state.flux(Field::P);
  for (const InteriorFace& f : mesh.interior_faces) {
    const std::size_t sa = FieldState::slot(f.cell_a, f.face_a);
    const std::size_t sb = FieldState::slot(f.cell_b, f.face_b);
    const double fa = face_flux(mesh.cells[f.cell_a], f.face_a, nodes[f.cell_a], state.cell_ports(Field::P, f.cell_a),
                                ports[sa]);
    const double fb = face_flux(mesh.cells[f.cell_b], f.face_b, nodes[f.cell_b], state.cell_ports(Field::P, f.cell_b),
                                ports[sb]);
    flux[sa] = 0.5 * (fa - fb);
    flux[sb] = -flux[sa];
  }
  for (std::size_t bi = 0; bi < mesh.boundary_faces.size(); ++bi) {
    const BoundaryFace& bf = mesh.boundary_faces[bi];
    const std::size_t s = FieldState::slot(bf.cell, bf.face);
    const auto& fixed = boundary_value(boundary, static_cast<std::int32_t>(bi));
    flux[s] = fixed ? face_flux(mesh.cells[bf.cell], bf.face, nodes[bf.cell], state.cell_ports(Field::P, bf.cell),
                                ports[s])
                    : 0.0;
  }
}

std::vector<double> pressure_residuals(const Mesh& mesh, const FieldState& state, double tau, double rho_inf) {
  std::vector<double> r(mesh.num_cells());
  const auto flux = state.flux(Field::P);
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    double s = 0.0;
    for (int i = 0; i < 6; ++i) s += flux[c * 6 + i];
    r[c] = tau * s - rho_inf * cell_divergence_integral(state, mesh.cells[c], c);
  }
  return r;
}

std::vector<std::size_t> red_black_order(const Mesh& mesh) {
  const std::size_t n = mesh.num_cells();
  std::vector<int> color(n, -1);
  for (std::size_t start = 0; start < n; ++start) {
    if (color[start] >= 0) continue;
    std::deque<std::size_t> queue{start};
    color[start] = 0;
    while (!queue.empty()) {
      const std::size_t c = queue.front();
      queue.pop_front();
      for (int i = 0; i < 6; ++i) {
        const FaceLink& l = mesh.link(c, i);
        if (!l.interior()) continue;
        const auto nb = static_cast<std::size_t>(l.cell);
        if (color[nb] < 0) {
          color[nb] = 1 - std::min(color[c], 1);
          queue.push_back(nb);
        }
      }
    }
  }
  // Resolve odd cycles greedily with extra colors.
  for (std::size_t c = 0; c < n; ++c) {
    bool clash = false;
    for (int i = 0; i < 6; ++i) {
      const FaceLink& l = mesh.link(c, i);
      if (l.interior() && static_cast<std::size_t>(l.cell) < c && color[l.cell] == color[c]) clash = true;
    }
    if (!clash) continue;
    for (int k = 0;; ++k) {
      bool used = false;
      for (int i = 0; i < 6; ++i) {
        const FaceLink& l = mesh.link(c, i);
        if (l.interior() && color[l.cell] == k) used = true;
      }
      if (!used) {
        color[c] = k;
        break;
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return color[a] < color[b]; });
  return order;
}

PressureResult pressure_iterate(const Mesh& mesh, FieldState& state, double tau, double rho_inf,
                                const PressureSolverConfig& config, const PressureBoundary& boundary) {
  config.validate();
  const std::size_t n = mesh.num_cells();
  if (n == 0) return {};
  if (!boundary.empty() && boundary.size() != mesh.boundary_faces.size()) {
    throw BoundaryError("pressure boundary table does not match the mesh");
  }

  std::vector<double> divergence(n);
  double flux_scale = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    divergence[c] = cell_divergence_integral(state, mesh.cells[c], c);
    for (int i = 0; i < 6; ++i) {
      flux_scale = std::max(flux_scale, std::abs(state.port_velocity(c, i).dot(mesh.cells[c].face_vectors[i])));
    }
  }

  // Without a fixed face pressure the system is singular (constant
  // offset). It is iterated as is and shifted to p[ref] = 0 afterwards.
  const bool floating = !has_fixed_pressure(boundary);
  const std::size_t ref = std::min(config.reference_cell, n - 1);
  auto shift_to_reference = [&] {
    if (!floating) return;
    const double shift = state.node(Field::P, ref);
    if (shift == 0.0) return;
    for (auto& p : state.node(Field::P)) p -= shift;
    for (auto& p : state.port(Field::P)) p -= shift;
  };

  std::vector<std::size_t> order;
  if (config.ordering == CellOrdering::RedBlack) {
    order = red_black_order(mesh);
  } else {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
  }

  // Fixed face pressures drive the problem too, even without divergence.
  double drive = rho_inf * flux_scale;
  if (!floating) {
    for (std::size_t k = 0; k < mesh.boundary_faces.size(); ++k) {
      if (!boundary[k]) continue;
      const BoundaryFace& bf = mesh.boundary_faces[k];
      drive = std::max(drive, tau * std::abs(mesh.cells[bf.cell].normal_coefficient(bf.face) * *boundary[k]));
    }
  }

  PressureResult result;
  result.threshold = config.tolerance * std::max(drive, std::numeric_limits<double>::min());

  auto max_residual = [&] {
    double r = 0.0;
    for (double v : pressure_residuals(mesh, state, tau, rho_inf)) r = std::max(r, std::abs(v));
    return r;
  };

  pressure_face_sweep(mesh, state, boundary);
  result.residual = max_residual();
  result.history.push_back(result.residual);
  if (result.residual <= result.threshold) {
    shift_to_reference();
    return result;
  }

  auto p_nodes = state.node(Field::P);
  const double omega = config.relaxation;

  // Coupled cell equation in CSR form over interior neighbors:
  // sum_i S_i = diag p_c + sum_nb offdiag p_nb + fixed_term + tangential terms.
  std::vector<double> diag(n, 0.0);
  std::vector<double> fixed_term(n, 0.0);
  std::vector<std::size_t> row(n + 1, 0);
  std::vector<std::size_t> col;
  std::vector<double> offdiag;
  // Tangential weights per (cell, face): own slot and neighbor slot.
  std::vector<double> wa(n * 6, 0.0);
  std::vector<double> wb(n * 6, 0.0);
  std::vector<std::size_t> nbr_slot(n * 6, 0);
  col.reserve(n * 6);
  offdiag.reserve(n * 6);
  bool orthogonal = true;
  for (std::size_t c = 0; c < n; ++c) {
    const HexCell& cell = mesh.cells[c];
    for (int i = 0; i < 6; ++i) {
      const std::size_t k = c * 6 + static_cast<std::size_t>(i);
      for (int mu = 0; mu < 3; ++mu) {
        if (mu != face_axis(i) && cell.s[i](mu) != 0.0) orthogonal = false;
      }
      const double a = cell.normal_coefficient(i);
      const FaceLink& l = mesh.link(c, i);
      nbr_slot[k] = k;
      if (l.interior()) {
        const auto nb = static_cast<std::size_t>(l.cell);
        const double b = mesh.cells[nb].normal_coefficient(l.face);
        const double kk = a * b / (a + b);
        diag[c] += kk;
        col.push_back(nb);
        offdiag.push_back(-kk);
        wa[k] = b / (a + b);
        wb[k] = -a / (a + b);
        nbr_slot[k] = FieldState::slot(nb, l.face);
      } else if (const auto& fixed = boundary_value(boundary, l.boundary)) {
        diag[c] += a;
        fixed_term[c] -= a * *fixed;
        wa[k] = 1.0;
      }
    }
    row[c + 1] = col.size();
    if (diag[c] == 0.0) throw SingularCellError("pressure cell " + std::to_string(c) + " has zero diagonal");
  }

  std::vector<double> source(n);
  for (std::size_t c = 0; c < n; ++c) source[c] = rho_inf * divergence[c] / tau - fixed_term[c];
  std::vector<double> tangential(n * 6, 0.0);
  std::vector<double> tangential_term(n, 0.0);
  auto off_sum = [&](std::size_t c) {
    double rest = tangential_term[c];
    for (std::size_t k = row[c]; k < row[c + 1]; ++k) rest += offdiag[k] * p_nodes[col[k]];
    return rest;
  };
  // max |tau sum_i S_i - rho I| from the coupled equation.
  auto coupled_residual = [&] {
    double r = 0.0;
    for (std::size_t c = 0; c < n; ++c) r = std::max(r, std::abs(diag[c] * p_nodes[c] + off_sum(c) - source[c]));
    return tau * r;
  };

  for (int it = 1; it <= config.max_iterations; ++it) {
    result.iterations = it;
    if (config.equation == CellEquation::FrozenFaces) {
      for (std::size_t c : order) {
        p_nodes[c] = pressure_cell_solve(mesh.cells[c], divergence[c], state.cell_ports(Field::P, c), p_nodes[c], tau,
                                         rho_inf, omega);
      }
    } else {
      if (!orthogonal) {
        for (std::size_t c = 0; c < n; ++c) {
          const Vec3 d = opposite_differences(state.cell_ports(Field::P, c));
          for (int i = 0; i < 6; ++i) tangential[c * 6 + i] = tangential_part(mesh.cells[c], i, d);
        }
        for (std::size_t c = 0; c < n; ++c) {
          double t = 0.0;
          for (std::size_t k = c * 6; k < c * 6 + 6; ++k) t += wa[k] * tangential[k] + wb[k] * tangential[nbr_slot[k]];
          tangential_term[c] = t;
        }
      }
      // The residual of each cell just before its update is a cheap
      // running estimate; the exact check runs once it has converged.
      double sweep_residual = 0.0;
      for (std::size_t c : order) {
        const double gap = source[c] - off_sum(c) - diag[c] * p_nodes[c];
        sweep_residual = std::max(sweep_residual, std::abs(gap));
        p_nodes[c] += omega * gap / diag[c];
      }
      if (orthogonal) {
        sweep_residual *= tau;
        result.residual = sweep_residual;
        result.history.push_back(sweep_residual);
        if (!std::isfinite(sweep_residual)) break;
        if (sweep_residual > result.threshold) continue;
        // The face sweep reproduces this residual up to rounding.
        if (coupled_residual() > result.threshold) continue;
        pressure_face_sweep(mesh, state, boundary);
        result.residual = max_residual();
        result.history.back() = result.residual;
        if (result.residual <= result.threshold) {
          shift_to_reference();
          return result;
        }
        continue;
      }
    }
    pressure_face_sweep(mesh, state, boundary);
    result.residual = max_residual();
    result.history.push_back(result.residual);
    if (!std::isfinite(result.residual)) break;
    if (result.residual <= result.threshold) {
      shift_to_reference();
      return result;
    }
  }
  if (config.equation == CellEquation::Coupled && orthogonal) pressure_face_sweep(mesh, state, boundary);
  throw NonConvergenceError("pressure iteration did not converge: residual " + std::to_string(result.residual) +
                                " > " + std::to_string(result.threshold) + " after " +
                                std::to_string(result.iterations) + " iterations",
                            result.iterations, result.residual);
}

void project_port_velocities(const Mesh& mesh, FieldState& state, double tau, double rho_inf) {
  const auto flux = state.flux(Field::P);
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const HexCell& cell = mesh.cells[c];
    for (int i = 0; i < 6; ++i) {
      const double s = flux[c * 6 + i];
      if (s == 0.0) continue;
      const Vec3& f = cell.face_vectors[i];
      const Vec3 u = state.port_velocity(c, i) - (tau / rho_inf) * (s / f.squaredNorm()) * f;
      state.set_port_velocity(c, i, u);
    }
  }
}

}  // namespace dscflow

#include <doctest.h>

#include <random>
#include <set>

#include "dscflow/error.hpp"
#include "dscflow/pressure.hpp"
#include "meshes.hpp"
#include "oracles.hpp"

using namespace dscflow;

namespace {

// Random port velocities, continuous across interior faces and zero on the
// boundary so that the floating problem is consistent.
FieldState divergent_state(const Mesh& m, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FieldState s(m.num_cells());
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    for (int f = 0; f < 6; ++f) {
      const FaceLink& l = m.link(c, f);
      if (!l.interior() || static_cast<std::size_t>(l.cell) < c) continue;
      const Vec3 v(u(rng), u(rng), u(rng));
      s.set_port_velocity(c, f, v);
      s.set_port_velocity(static_cast<std::size_t>(l.cell), l.face, v);
    }
  }
  return s;
}

double max_divergence(const Mesh& m, const FieldState& s) {
  double r = 0.0;
  for (std::size_t c = 0; c < m.num_cells(); ++c) r = std::max(r, std::abs(cell_divergence_integral(s, m.cells[c], c)));
  return r;
}

}  // namespace

TEST_CASE("divergence integral of a uniform velocity vanishes") {
  const Mesh m = testmesh::sheared_box(1, 1, 1, 0.3, 0.0, 1);
  std::array<Vec3, 6> u;
  u.fill(Vec3(0.4, -1.0, 2.0));
  CHECK(std::abs(cell_divergence_integral(m.cells[0], u)) < 1e-14);
}

TEST_CASE("frozen-face cell solve on the unit cube") {
  // Unit cube: S_i = 2 (P_i - Z), so tau sum S = rho I gives
  // Z = (2 sum P - rho I / tau) / 12.
  const Mesh m = testmesh::box(1, 1, 1);
  const CellPorts P{1.0, 2.0, -0.5, 0.25, 3.0, 0.0};
  const double I = 0.3, tau = 0.1, rho = 2.0;
  const double expected = (2.0 * 5.75 - rho * I / tau) / 12.0;
  CHECK(pressure_cell_solve(m.cells[0], I, P, 0.0, tau, rho) == doctest::Approx(expected).epsilon(1e-14));
  // Over-relaxation blends with the old value.
  CHECK(pressure_cell_solve(m.cells[0], I, P, 1.0, tau, rho, 1.5) ==
        doctest::Approx(1.0 + 1.5 * (expected - 1.0)).epsilon(1e-14));
}

TEST_CASE("iteration converges and the projection removes the divergence") {
  const Mesh m = testmesh::box(8, 8, 1);
  FieldState s = divergent_state(m, 3);
  const double before = max_divergence(m, s);
  PressureSolverConfig cfg;
  cfg.max_iterations = 2000;
  cfg.relaxation = 1.6;
  const double tau = 0.05;
  const PressureResult r = pressure_iterate(m, s, tau, 1.0, cfg);
  CHECK(r.residual <= r.threshold);
  CHECK(r.history.back() < r.history.front());
  project_port_velocities(m, s, tau, 1.0);
  CHECK(max_divergence(m, s) <= r.residual * (1.0 + 1e-9) + 1e-14);
  CHECK(max_divergence(m, s) < 1e-6 * before);
  // The floating problem is shifted so the reference cell reads zero.
  CHECK(s.node(Field::P, cfg.reference_cell) == 0.0);
}

TEST_CASE("distorted mesh converges on the non-orthogonal path") {
  const Mesh m = testmesh::sheared_box(5, 5, 2, 0.3, 0.15, 7);
  FieldState s = divergent_state(m, 11);
  PressureSolverConfig cfg;
  cfg.max_iterations = 3000;
  cfg.relaxation = 1.4;
  cfg.tolerance = 1e-9;
  const PressureResult r = pressure_iterate(m, s, 0.1, 1.0, cfg);
  CHECK(r.residual <= r.threshold);
  project_port_velocities(m, s, 0.1, 1.0);
  CHECK(max_divergence(m, s) <= r.residual * (1.0 + 1e-6) + 1e-14);
}

TEST_CASE("red-black and natural orderings reach the same pressure") {
  const Mesh m = testmesh::box(6, 6, 1);
  FieldState a = divergent_state(m, 5);
  FieldState b = a;
  PressureSolverConfig cfg;
  cfg.max_iterations = 5000;
  cfg.tolerance = 1e-12;
  pressure_iterate(m, a, 0.1, 1.0, cfg);
  cfg.ordering = CellOrdering::RedBlack;
  pressure_iterate(m, b, 0.1, 1.0, cfg);
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    CHECK(a.node(Field::P, c) == doctest::Approx(b.node(Field::P, c)).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("frozen-face equation also converges") {
  const Mesh m = testmesh::box(4, 4, 1);
  FieldState s = divergent_state(m, 8);
  PressureSolverConfig cfg;
  cfg.equation = CellEquation::FrozenFaces;
  cfg.max_iterations = 20000;
  cfg.tolerance = 1e-8;
  const PressureResult r = pressure_iterate(m, s, 0.1, 1.0, cfg);
  CHECK(r.residual <= r.threshold);
}

TEST_CASE("fixed boundary pressure anchors the solution") {
  const Mesh m = testmesh::box(4, 1, 1);
  PressureBoundary bc(m.boundary_faces.size());
  for (std::size_t k = 0; k < m.boundary_faces.size(); ++k) {
    const auto& bf = m.boundary_faces[k];
    if (bf.cell == 3 && bf.face == 1) bc[k] = 5.0;
  }
  FieldState s(m.num_cells());
  PressureSolverConfig cfg;
  cfg.max_iterations = 2000;
  pressure_iterate(m, s, 0.1, 1.0, cfg, bc);
  // No divergence: the whole box sits at the fixed value.
  for (std::size_t c = 0; c < m.num_cells(); ++c) CHECK(s.node(Field::P, c) == doctest::Approx(5.0));
}

TEST_CASE("non-convergence is reported") {
  const Mesh m = testmesh::box(6, 6, 1);
  FieldState s = divergent_state(m, 1);
  PressureSolverConfig cfg;
  cfg.max_iterations = 1;
  CHECK_THROWS_AS(pressure_iterate(m, s, 0.1, 1.0, cfg), NonConvergenceError);
}

TEST_CASE("configuration validation") {
  PressureSolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.relaxation = 2.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.relaxation = 1.0;
  cfg.max_iterations = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.max_iterations = 10;
  cfg.tolerance = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("red-black order is a two-coloring on a box") {
  const int nx = 4, ny = 4, nz = 2;
  const Mesh m = testmesh::box(nx, ny, nz);
  const auto order = red_black_order(m);
  REQUIRE(order.size() == m.num_cells());
  CHECK(std::set<std::size_t>(order.begin(), order.end()).size() == m.num_cells());
  auto parity = [&](std::size_t c) {
    const int i = static_cast<int>(c) % nx, j = static_cast<int>(c) / nx % ny, k = static_cast<int>(c) / (nx * ny);
    return (i + j + k) % 2;
  };
  const int first = parity(order.front());
  for (std::size_t n = 0; n < order.size(); ++n) {
    CHECK(parity(order[n]) == (n < order.size() / 2 ? first : 1 - first));
  }
}

#include <doctest.h>

#include <random>

#include "dscflow/connection.hpp"
#include "dscflow/error.hpp"
#include "dscflow/reflection.hpp"
#include "meshes.hpp"
#include "oracles.hpp"

using namespace dscflow;

namespace {

const std::vector<double> kNoSource;

double total_heat(const Mesh& m, const FieldState& s) {
  double h = 0.0;
  for (std::size_t c = 0; c < m.num_cells(); ++c) h += m.cells[c].volume * s.node(Field::T, c);
  return h;
}

}  // namespace

TEST_CASE("pure diffusion is the seven-point explicit stencil") {
  const int nx = 4, ny = 3, nz = 2;
  const Vec3 h(1.0, 0.7, 1.3);
  const Mesh m = testmesh::box(nx, ny, nz, h);
  MaterialProps props;
  props.alpha = 0.02;
  const double tau = 0.5;
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  FieldState s(m.num_cells());
  for (auto& v : s.node(Field::T)) v = u(rng);
  s.ports_from_nodes();

  auto at = [&](int i, int j, int k) { return static_cast<std::size_t>((k * ny + j) * nx + i); };
  for (int step = 0; step < 5; ++step) {
    std::vector<double> expected(m.num_cells());
    for (int k = 0; k < nz; ++k) {
      for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
          const double T = s.node(Field::T, at(i, j, k));
          double lap = 0.0;
          auto add = [&](int a, int b, int c, double hh) {
            if (a < 0 || b < 0 || c < 0 || a >= nx || b >= ny || c >= nz) return;
            lap += (s.node(Field::T, at(a, b, c)) - T) / (hh * hh);
          };
          add(i - 1, j, k, h.x());
          add(i + 1, j, k, h.x());
          add(i, j - 1, k, h.y());
          add(i, j + 1, k, h.y());
          add(i, j, k - 1, h.z());
          add(i, j, k + 1, h.z());
          expected[at(i, j, k)] = T + props.alpha * tau * lap;
        }
      }
    }
    connection_sweep(m, s, FieldMask{Field::T});
    reflection_sweep(m, s, props, kNoSource, tau, {true, false});
    for (std::size_t c = 0; c < m.num_cells(); ++c) {
      CHECK(s.node(Field::T, c) == doctest::Approx(expected[c]).epsilon(1e-13).scale(10.0));
    }
  }
}

TEST_CASE("buoyancy alone") {
  const HexCell cell = HexCell::build({0, 1, 2, 3, 4, 5, 6, 7}, [] {
    HexVertices v;
    const auto c = oracle::unit_cube();
    for (int i = 0; i < 8; ++i) v[i] = c[i];
    return v;
  }());
  MaterialProps p;
  p.beta = -3.4e-3;
  p.T_inf = 300.0;
  p.g = Vec3(0.0, 0.0, -9.81);
  std::array<Vec3, 6> zero3;
  zero3.fill(Vec3::Zero());
  const CellPorts zero{};
  const Vec3 u = update_velocity_node(cell, Vec3(1, 2, 3), 310.0, zero3, zero3, zero, Vec3::Zero(), p, 0.01);
  const Vec3 expected = Vec3(1, 2, 3) + 0.01 * p.beta * 10.0 * p.g;
  CHECK((u - expected).norm() < 1e-15);
}

TEST_CASE("pressure gradient enters with 1/rho") {
  const auto cube = oracle::unit_cube();
  HexVertices v;
  for (int i = 0; i < 8; ++i) v[i] = cube[i];
  const HexCell cell = HexCell::build({0, 1, 2, 3, 4, 5, 6, 7}, v);
  MaterialProps p;
  p.rho_inf = 2.0;
  std::array<Vec3, 6> zero3;
  zero3.fill(Vec3::Zero());
  const CellPorts zero{};
  const Vec3 u = update_velocity_node(cell, Vec3::Zero(), 0.0, zero3, zero3, zero, Vec3(4, 0, -2), p, 0.5);
  CHECK((u - Vec3(-1.0, 0.0, 0.5)).norm() < 1e-15);
}

TEST_CASE("source term adds tau q") {
  const auto cube = oracle::unit_cube();
  HexVertices v;
  for (int i = 0; i < 8; ++i) v[i] = cube[i];
  const HexCell cell = HexCell::build({0, 1, 2, 3, 4, 5, 6, 7}, v);
  MaterialProps p;
  p.alpha = 1.0;
  const CellPorts zero{};
  CHECK(update_temperature_node(cell, 5.0, zero, zero, zero, p, 2.0, 0.25) == doctest::Approx(5.5));
}

TEST_CASE("uniform temperature in uniform flow stays put") {
  const Mesh m = testmesh::sheared_box(3, 3, 3, 0.3, 0.2, 4);
  MaterialProps props;
  props.alpha = 0.1;
  props.eta = 0.05;
  FieldState s(m.num_cells());
  s.fill(Field::T, 7.0);
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    s.set_velocity(c, Vec3(0.3, -0.2, 0.1));
    for (int f = 0; f < 6; ++f) s.set_port_velocity(c, f, Vec3(0.3, -0.2, 0.1));
  }
  reflection_sweep(m, s, props, kNoSource, 0.1);
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    // Closed surface: sum of F_i = u . sum f_i = 0.
    CHECK(s.node(Field::T, c) == doctest::Approx(7.0).epsilon(1e-13));
    CHECK((s.velocity(c) - Vec3(0.3, -0.2, 0.1)).norm() < 1e-13);
  }
}

TEST_CASE("heat is conserved on a closed distorted box") {
  const Mesh m = testmesh::sheared_box(5, 4, 3, 0.3, 0.25, 8);
  MaterialProps props;
  props.alpha = 0.05;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(280.0, 320.0);
  FieldState s(m.num_cells());
  for (auto& v : s.node(Field::T)) v = u(rng);
  s.ports_from_nodes();
  const double before = total_heat(m, s);
  for (int k = 0; k < 200; ++k) {
    connection_sweep(m, s, FieldMask{Field::T});
    reflection_sweep(m, s, props, kNoSource, 0.2, {true, false});
  }
  CHECK(std::abs(total_heat(m, s) - before) / before < 1e-12);
}

TEST_CASE("non-finite results are reported") {
  const Mesh m = testmesh::box(1, 1, 1);
  MaterialProps props;
  props.alpha = 1.0;
  FieldState s(1);
  s.flux(Field::T, 0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(reflection_sweep(m, s, props, kNoSource, 0.1), NonfiniteStateError);
}

TEST_CASE("material validation names the field") {
  MaterialProps p;
  p.alpha = -1.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("material.alpha"), ConfigError);
  p.alpha = 1.0;
  p.rho_inf = 0.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("material.rho_inf"), ConfigError);
}

TEST_CASE("pre-hook runs before the nodes are read") {
  const Mesh m = testmesh::box(1, 1, 1);
  MaterialProps props;
  FieldState s(1);
  reflection_sweep(m, s, props, kNoSource, 0.1, {}, [](FieldState& st) { st.node(Field::T, 0) = 42.0; });
  CHECK(s.node(Field::T, 0) == 42.0);
}

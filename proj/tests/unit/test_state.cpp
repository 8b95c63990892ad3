#include <doctest.h>

#include <cmath>
#include <limits>

#include "dscflow/state.hpp"

using namespace dscflow;

TEST_CASE("field state layout and accessors") {
  FieldState s(3);
  CHECK(s.num_cells() == 3);
  CHECK(s.port(Field::T).size() == 18);
  s.node(Field::T, 1) = 2.5;
  s.port(Field::Uy, 2, 4) = -1.0;
  CHECK(s.node(Field::T)[1] == 2.5);
  CHECK(s.port(Field::Uy)[2 * 6 + 4] == -1.0);
  s.set_velocity(0, Vec3(1, 2, 3));
  CHECK(s.node(Field::Uz, 0) == 3.0);
  CHECK(s.velocity(0) == Vec3(1, 2, 3));
  s.set_port_velocity(1, 5, Vec3(4, 5, 6));
  CHECK(s.port(Field::Ux, 1, 5) == 4.0);
  CHECK(s.port_velocity(1, 5) == Vec3(4, 5, 6));
}

TEST_CASE("ports_from_nodes copies each nodal value to its six ports") {
  FieldState s(2);
  s.node(Field::T, 0) = 1.0;
  s.node(Field::T, 1) = 2.0;
  s.node(Field::P, 1) = 7.0;
  s.ports_from_nodes(FieldMask{Field::T});
  for (int f = 0; f < 6; ++f) {
    CHECK(s.port(Field::T, 0, f) == 1.0);
    CHECK(s.port(Field::T, 1, f) == 2.0);
    CHECK(s.port(Field::P, 1, f) == 0.0);
  }
}

TEST_CASE("clock keeps nodes half a step after ports") {
  FieldState s(1);
  s.set_clock(-0.05, 0.1);
  CHECK(s.node_time() == doctest::Approx(-0.05));
  CHECK(s.port_time() == doctest::Approx(-0.1));
  s.advance_ports(0.1);
  s.advance_nodes(0.1);
  CHECK(s.port_time() == doctest::Approx(0.0));
  CHECK(s.node_time() == doctest::Approx(0.05));
}

TEST_CASE("node-boundary map is an involution") {
  FieldState s(2);
  for (std::size_t i = 0; i < 12; ++i) s.port(Field::T)[i] = 0.5 * static_cast<double>(i);
  s.node(Field::T, 0) = -1.0;
  s.node(Field::T, 1) = -2.0;
  const auto ch = channels_of(s, FieldMask{Field::T});
  REQUIRE(ch.size() == 12);
  CHECK(ch[7].port == 3.5);
  CHECK(ch[7].node == -2.0);
  const auto once = node_boundary_map(ch);
  CHECK(once[7].port == -2.0);
  CHECK(once[7].node == 3.5);
  CHECK(node_boundary_map(once) == ch);
  static_assert(node_boundary_map(node_boundary_map(Channel{1.0, 2.0})) == Channel{1.0, 2.0});
}

TEST_CASE("snapshot arrays") {
  FieldState s(2);
  s.set_velocity(1, Vec3(1, 2, 3));
  s.node(Field::P, 0) = 9.0;
  const auto u = snapshot(s, Quantity::Velocity);
  REQUIRE(u.size() == 6);
  CHECK(u[3] == 1.0);
  CHECK(u[5] == 3.0);
  CHECK(snapshot(s, Quantity::Pressure) == std::vector<double>{9.0, 0.0});
  CHECK(snapshot(s, Quantity::Temperature).size() == 2);
}

TEST_CASE("finite() spots NaN in nodes and ports") {
  FieldState s(1);
  CHECK(s.finite());
  s.port(Field::Ux, 0, 3) = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(s.finite());
  s.port(Field::Ux, 0, 3) = 0.0;
  s.node(Field::T, 0) = std::numeric_limits<double>::infinity();
  CHECK_FALSE(s.finite());
}

TEST_CASE("fill sets nodes and ports and clears fluxes") {
  FieldState s(2);
  s.flux(Field::T, 1, 2) = 4.0;
  s.fill(Field::T, 300.0);
  CHECK(s.node(Field::T, 1) == 300.0);
  CHECK(s.port(Field::T, 1, 5) == 300.0);
  CHECK(s.flux(Field::T, 1, 2) == 0.0);
}

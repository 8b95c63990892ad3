#include <doctest.h>

#include <random>

#include "dscflow/error.hpp"
#include "dscflow/scattering.hpp"

using namespace dscflow;

TEST_CASE("history must start at rest") {
  ScatteringView v(2, 0.1);
  const std::vector<double> x{1.0, 2.0};
  CHECK_THROWS_AS(v.record_ports(0.3, x), HistoryError);
  v.record_ports(0.0, x);
  CHECK_THROWS_AS(v.record_ports(0.1, x), HistoryError);  // nodes missing
  CHECK_THROWS_AS(v.record_nodes(0.1, x), HistoryError);  // wrong time
  v.record_nodes(0.05, x);
  CHECK_THROWS_AS(v.record_ports(0.3, x), HistoryError);  // gap
}

TEST_CASE("hand-computed decomposition of one channel") {
  // z_p: 1, 3 at t = 0, tau; z_n: 2, 5 at tau/2, 3 tau/2.
  ScatteringView v(1, 1.0);
  v.record_ports(0.0, std::vector<double>{1.0});
  CHECK(v.incident()[0] == 1.0);
  v.record_nodes(0.5, std::vector<double>{2.0});
  CHECK(v.outgoing()[0] == 1.0);  // 2 - 1
  v.record_ports(1.0, std::vector<double>{3.0});
  CHECK(v.incident()[0] == 2.0);  // 3 - 1
  v.record_nodes(1.5, std::vector<double>{5.0});
  CHECK(v.outgoing()[0] == 3.0);  // 5 - 2
  CHECK(v.incident(1)[0] == 1.0);
  CHECK(v.outgoing(1)[0] == 1.0);
  CHECK_THROWS_AS((void)v.outgoing(2), HistoryError);
}

TEST_CASE("reconstruction identities hold on a random process") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  const std::size_t n = 50;
  ScatteringView v(n, 0.25, 3);
  std::vector<double> p(n), z(n);
  for (int m = 0; m < 200; ++m) {
    for (auto& x : p) x = u(rng);
    for (auto& x : z) x = u(rng);
    v.record_ports(0.25 * m, p);
    v.record_nodes(0.25 * m + 0.125, z);
    const auto r = v.identities();
    CHECK(r.port <= 1e-12 * 200.0);
    CHECK(r.node <= 1e-12 * 200.0);
  }
  CHECK(v.instants() == 200);
}

TEST_CASE("record_step reads the state clock") {
  FieldState s(1);
  s.fill(Field::T, 1.0);
  s.set_clock(0.05, 0.1);  // ports at 0
  ScatteringView v(6, 0.1);
  v.record_step(s, FieldMask{Field::T});
  CHECK(v.instants() == 1);
  const auto r = v.identities();
  CHECK(r.port == 0.0);
  CHECK(r.node == 0.0);
}

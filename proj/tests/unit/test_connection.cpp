#include <doctest.h>

#include <random>

#include "dscflow/connection.hpp"
#include "dscflow/error.hpp"
#include "dscflow/reflection.hpp"
#include "meshes.hpp"
#include "oracles.hpp"

using namespace dscflow;

namespace {

HexCell build(const oracle::Hex& h) {
  HexVertices v;
  for (int i = 0; i < 8; ++i) v[i] = h[i];
  return HexCell::build({0, 1, 2, 3, 4, 5, 6, 7}, v);
}

struct Affine {
  Vec3 a;
  double c;
  double operator()(const Vec3& x) const { return a.dot(x) + c; }
};

CellPorts exact_ports(const oracle::Hex& h, const Affine& z) {
  const auto m = oracle::face_means(h);
  CellPorts p;
  for (int i = 0; i < 6; ++i) p[i] = z(m[i]);
  return p;
}

// A second hexahedron glued to the +x face of h.
oracle::Hex neighbor_plus_x(const oracle::Hex& h, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    oracle::Hex g;
    g[0] = h[1];
    g[3] = h[2];
    g[4] = h[5];
    g[7] = h[6];
    g[1] = 2.0 * h[1] - h[0] + 0.1 * Vec3(u(rng), u(rng), u(rng));
    g[2] = 2.0 * h[2] - h[3] + 0.1 * Vec3(u(rng), u(rng), u(rng));
    g[5] = 2.0 * h[5] - h[4] + 0.1 * Vec3(u(rng), u(rng), u(rng));
    g[6] = 2.0 * h[6] - h[7] + 0.1 * Vec3(u(rng), u(rng), u(rng));
    bool ok = true;
    for (double x : {0.0, 0.5, 1.0}) {
      for (double y : {0.0, 0.5, 1.0}) {
        for (double zz : {0.0, 0.5, 1.0}) ok = ok && oracle::trilinear_jacobian(g, Vec3(x, y, zz)).determinant() > 0;
      }
    }
    if (ok) return g;
  }
}

}  // namespace

TEST_CASE("affine fields: face gradient, nodal gradient and flux are exact") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = oracle::random_hex(rng, 0.2);
    const HexCell cell = build(h);
    const Affine z{Vec3(u(rng), u(rng), u(rng)), u(rng)};
    const CellPorts p = exact_ports(h, z);
    const double nodal = z(oracle::corner_mean(h));
    const double tol = 1e-12 * z.a.norm();
    CHECK((nodal_gradient(cell, p) - z.a).norm() <= tol);
    for (int f = 0; f < 6; ++f) {
      CHECK((face_gradient(cell, f, nodal, p) - z.a).norm() <= 10 * tol);
      CHECK(face_flux(cell, f, nodal, p, p[f]) ==
            doctest::Approx(z.a.dot(cell.face_vectors[f])).epsilon(1e-12).scale(z.a.norm() * cell.face_areas[f]));
    }
  }
}

TEST_CASE("face_nodal_components on the unit cube") {
  const CellPorts p{1, 2, 3, 5, 7, 11};
  const Vec3 z0 = face_nodal_components(0, 4.0, p);
  CHECK(z0 == Vec3(8.0, 2.0, 4.0));
  const Vec3 z3 = face_nodal_components(3, 4.0, p);
  CHECK(z3 == Vec3(1.0, -8.0, 4.0));
}

TEST_CASE("interface update recovers the exact face value of an affine field") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ha = oracle::random_hex(rng, 0.15);
    const auto hb = neighbor_plus_x(ha, rng);
    const HexCell a = build(ha);
    const HexCell b = build(hb);
    const Affine z{Vec3(u(rng), u(rng), u(rng)), u(rng)};
    // Stale values on the shared face must not matter.
    CellPorts pa = exact_ports(ha, z);
    CellPorts pb = exact_ports(hb, z);
    pa[1] = 1e3;
    pb[0] = -1e3;
    const InterfaceValue v =
        update_interface(a, 1, z(oracle::corner_mean(ha)), pa, b, 0, z(oracle::corner_mean(hb)), pb);
    const double exact = z(oracle::face_means(ha)[1]);
    CHECK(v.port == doctest::Approx(exact).epsilon(1e-12).scale(1.0 + z.a.norm()));
    CHECK(v.flux == doctest::Approx(z.a.dot(a.face_vectors[1])).epsilon(1e-11).scale(1.0 + z.a.norm()));
  }
}

TEST_CASE("interface update on two unit cubes is the nodal average") {
  const HexCell a = build(oracle::unit_cube());
  const CellPorts zero{};
  const InterfaceValue v = update_interface(a, 1, 2.0, zero, a, 0, 6.0, zero);
  CHECK(v.port == doctest::Approx(4.0));
  // Flux out of a through +x: |f|^2 (6 - 2) / spacing.
  CHECK(v.flux == doctest::Approx(4.0));
}

TEST_CASE("cancelling couplings raise SingularInterfaceError") {
  const HexCell a = build(oracle::unit_cube());
  HexCell b = a;
  b.s[0] = -b.s[0];
  const CellPorts zero{};
  CHECK_THROWS_AS(update_interface(a, 1, 1.0, zero, b, 0, 2.0, zero), SingularInterfaceError);
}

TEST_CASE("one-sided boundary rules") {
  const HexCell c = build(oracle::unit_cube());
  const CellPorts p{0.0, 1.0, 0.0, 0.0, 0.0, 0.0};
  // Zero gradient on +x of a cube: the port takes the nodal value.
  const InterfaceValue zg = boundary_zero_gradient(c, 1, 0.5, p);
  CHECK(zg.port == doctest::Approx(0.5));
  CHECK(zg.flux == 0.0);
  const InterfaceValue fx = boundary_fixed(c, 1, 0.5, p, 2.0);
  CHECK(fx.port == 2.0);
  CHECK(fx.flux == doctest::Approx(3.0));  // 2 (2 - 0.5) |f|^2
}

TEST_CASE("connection sweep reproduces affine port values on a distorted mesh") {
  const Mesh m = testmesh::box(4, 3, 3, Vec3(1.0, 0.7, 1.3), 0.2, 5);
  const Affine z{Vec3(0.3, -1.1, 2.0), 4.0};
  FieldState s(m.num_cells());
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    oracle::Hex h;
    for (int i = 0; i < 8; ++i) h[i] = m.vertices[m.cells[c].vertex_ids[i]];
    s.node(Field::T, c) = z(oracle::corner_mean(h));
    const auto means = oracle::face_means(h);
    for (int f = 0; f < 6; ++f) s.port(Field::T, c, f) = z(means[f]) + 0.25;  // perturbed normal entries
  }
  BoundaryTable table(m.boundary_faces.size());
  for (std::size_t bi = 0; bi < table.size(); ++bi) {
    const auto& bf = m.boundary_faces[bi];
    oracle::Hex h;
    for (int i = 0; i < 8; ++i) h[i] = m.vertices[m.cells[bf.cell].vertex_ids[i]];
    table[bi][index(Field::T)] = {BoundaryValue::Kind::Fixed, z(oracle::face_means(h)[bf.face])};
  }
  // A uniform offset keeps the opposite-port differences, so a single sweep
  // must land on the exact values.
  connection_sweep(m, s, FieldMask{Field::T}, table);
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    oracle::Hex h;
    for (int i = 0; i < 8; ++i) h[i] = m.vertices[m.cells[c].vertex_ids[i]];
    const auto means = oracle::face_means(h);
    for (int f = 0; f < 6; ++f) {
      CHECK(s.port(Field::T, c, f) == doctest::Approx(z(means[f])).epsilon(1e-10));
      CHECK(s.flux(Field::T, c, f) ==
            doctest::Approx(z.a.dot(m.cells[c].face_vectors[f])).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("interior fluxes are exactly antisymmetric") {
  const Mesh m = testmesh::sheared_box(3, 3, 2, 0.4, 0.25, 9);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FieldState s(m.num_cells());
  for (auto& v : s.node(Field::T)) v = u(rng);
  for (auto& v : s.port(Field::T)) v = u(rng);
  connection_sweep(m, s, FieldMask{Field::T});
  for (const auto& f : m.interior_faces) {
    CHECK(s.flux(Field::T, f.cell_a, f.face_a) == -s.flux(Field::T, f.cell_b, f.face_b));
    CHECK(s.port(Field::T, f.cell_a, f.face_a) == s.port(Field::T, f.cell_b, f.face_b));
  }
  for (const auto& b : m.boundary_faces) CHECK(s.flux(Field::T, b.cell, b.face) == 0.0);
}

TEST_CASE("connection sweep leaves unselected fields alone") {
  const Mesh m = testmesh::box(2, 2, 1);
  FieldState s(m.num_cells());
  s.node(Field::Ux, 0) = 3.0;
  connection_sweep(m, s, FieldMask{Field::T});
  for (int f = 0; f < 6; ++f) CHECK(s.port(Field::Ux, 0, f) == 0.0);
  connection_sweep(m, s, FieldMask::velocity());
  CHECK(s.port(Field::Ux, 0, 1) == doctest::Approx(1.5));
}

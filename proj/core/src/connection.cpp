#include "dscflow/connection.hpp"

#include <cmath>
#include <string>

#include "dscflow/error.hpp"

namespace dscflow {

Vec3 face_nodal_components(int face, double nodal, const CellPorts& ports) {
  Vec3 z;
  const int axis = face_axis(face);
  for (int mu = 0; mu < 3; ++mu) {
    z(mu) = (mu == axis) ? 2.0 * face_parity(face) * nodal : ports[2 * mu + 1] - ports[2 * mu];
  }
  return z;
}

namespace {

// s . z^n, i.e. the flux with the port term left out.
double nodal_part(const HexCell& cell, int face, double nodal, const CellPorts& ports) {
  return cell.s[face].dot(face_nodal_components(face, nodal, ports));
}

}  // namespace

double face_flux(const HexCell& cell, int face, double nodal, const CellPorts& ports, double port_value) {
  return nodal_part(cell, face, nodal, ports) - cell.normal_coefficient(face) * port_value;
}

Vec3 face_gradient(const HexCell& cell, int face, double nodal, const CellPorts& ports) {
  Vec3 zb = face_nodal_components(face, nodal, ports);
  zb(face_axis(face)) -= 2.0 * face_parity(face) * ports[face];
  return cell.gamma * zb;
}

Vec3 interface_gradient(const HexCell& a, int face_a, double nodal_a, const CellPorts& ports_a, const HexCell& b,
                        int face_b, double nodal_b, const CellPorts& ports_b) {
  return 0.5 * (face_gradient(a, face_a, nodal_a, ports_a) + face_gradient(b, face_b, nodal_b, ports_b));
}

InterfaceValue update_interface(const HexCell& a, int face_a, double nodal_a, const CellPorts& ports_a,
                                const HexCell& b, int face_b, double nodal_b, const CellPorts& ports_b) {
  const double na = nodal_part(a, face_a, nodal_a, ports_a);
  const double nb = nodal_part(b, face_b, nodal_b, ports_b);
  const double ca = a.normal_coefficient(face_a);
  const double cb = b.normal_coefficient(face_b);
  const double denom = ca + cb;
  const double scale = std::abs(ca) + std::abs(cb);
  if (!(std::abs(denom) > 1e-12 * scale)) {
    throw SingularInterfaceError("normal couplings cancel on interface (face " + std::to_string(face_a) + " / " +
                                 std::to_string(face_b) + ")");
  }
  const double port = (na + nb) / denom;
  // Evaluate both sides and keep the antisymmetric part so that the pair
  // sums to zero exactly.
  const double sa = na - ca * port;
  const double sb = nb - cb * port;
  return InterfaceValue{port, 0.5 * (sa - sb)};
}

InterfaceValue boundary_zero_gradient(const HexCell& cell, int face, double nodal, const CellPorts& ports) {
  const double n = nodal_part(cell, face, nodal, ports);
  return InterfaceValue{n / cell.normal_coefficient(face), 0.0};
}

InterfaceValue boundary_fixed(const HexCell& cell, int face, double nodal, const CellPorts& ports, double value) {
  return InterfaceValue{value, face_flux(cell, face, nodal, ports, value)};
}

void connection_sweep(const Mesh& mesh, FieldState& state, FieldMask fields, const BoundaryTable& boundary) {
  const std::size_t n = mesh.num_cells();
  std::vector<double> next(n * 6);
  for (std::size_t fi = 0; fi < kFieldCount; ++fi) {
    const Field f = static_cast<Field>(fi);
    if (!fields.contains(f)) continue;
    const auto nodes = state.node(f);
    const auto ports = state.port(f);
    auto flux = state.flux(f);

    for (const InteriorFace& face : mesh.interior_faces) {
      const InterfaceValue v =
          update_interface(mesh.cells[face.cell_a], face.face_a, nodes[face.cell_a], state.cell_ports(f, face.cell_a),
                           mesh.cells[face.cell_b], face.face_b, nodes[face.cell_b], state.cell_ports(f, face.cell_b));
      const std::size_t sa = FieldState::slot(face.cell_a, face.face_a);
      const std::size_t sb = FieldState::slot(face.cell_b, face.face_b);
      next[sa] = v.port;
      next[sb] = v.port;
      flux[sa] = v.flux;
      flux[sb] = -v.flux;
    }
    for (std::size_t bi = 0; bi < mesh.boundary_faces.size(); ++bi) {
      const BoundaryFace& bf = mesh.boundary_faces[bi];
      const HexCell& cell = mesh.cells[bf.cell];
      const CellPorts cp = state.cell_ports(f, bf.cell);
      InterfaceValue v;
      if (!boundary.empty() && boundary[bi][fi].kind == BoundaryValue::Kind::Fixed) {
        v = boundary_fixed(cell, bf.face, nodes[bf.cell], cp, boundary[bi][fi].value);
      } else {
        v = boundary_zero_gradient(cell, bf.face, nodes[bf.cell], cp);
      }
      const std::size_t s = FieldState::slot(bf.cell, bf.face);
      next[s] = v.port;
      flux[s] = v.flux;
    }
    std::copy(next.begin(), next.end(), ports.begin());
  }
}

Vec3 state_face_gradient(const Mesh& mesh, const FieldState& state, Field f, std::size_t cell, int face) {
  const FaceLink& l = mesh.link(cell, face);
  const HexCell& c = mesh.cells[cell];
  if (!l.interior()) return face_gradient(c, face, state.node(f, cell), state.cell_ports(f, cell));
  const auto other = static_cast<std::size_t>(l.cell);
  return interface_gradient(c, face, state.node(f, cell), state.cell_ports(f, cell), mesh.cells[other], l.face,
                            state.node(f, other), state.cell_ports(f, other));
}

}  // namespace dscflow

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "dscflow/hexmesh.hpp"
#include "dscflow/state.hpp"

namespace dscflow {

using CellPorts = std::array<double, 6>;

/// z^n_mu at face `face`: the normal entry (mu == axis(face)) is
/// 2 (-1)^face * nodal; tangential entries are the opposite-port differences
/// ports[2mu+1] - ports[2mu].
Vec3 face_nodal_components(int face, double nodal, const CellPorts& ports);

/// S = s^mu (z^n_mu - delta_mu^axis z^p_mu), with z^p_axis = 2 (-1)^face port.
double face_flux(const HexCell& cell, int face, double nodal, const CellPorts& ports, double port_value);

/// Gradient on face `face` from the cell's own data (gamma applied to the
/// B-basis differences whose contraction with s gives face_flux).
Vec3 face_gradient(const HexCell& cell, int face, double nodal, const CellPorts& ports);

/// Gradient on face `face` with the tangential mismatch between the two
/// adjacent cells removed by the arithmetic mean. Both one-sided gradients
/// have the same projection on the face vector, so the mean keeps the flux.
Vec3 interface_gradient(const HexCell& a, int face_a, double nodal_a, const CellPorts& ports_a, const HexCell& b,
                        int face_b, double nodal_b, const CellPorts& ports_b);

struct InterfaceValue {
  double port;  // shared port value
  double flux;  // flux on side a; side b carries -flux
};

/// Shared port value making the reconstructed fluxes on both sides equal and
/// opposite. Throws SingularInterfaceError when the normal couplings cancel.
InterfaceValue update_interface(const HexCell& a, int face_a, double nodal_a, const CellPorts& ports_a,
                                const HexCell& b, int face_b, double nodal_b, const CellPorts& ports_b);

/// Boundary face with zero normal gradient: the one-sided form of the
/// interface update with the missing neighbor dropped (flux 0).
InterfaceValue boundary_zero_gradient(const HexCell& cell, int face, double nodal, const CellPorts& ports);

/// Boundary face with a prescribed port value.
InterfaceValue boundary_fixed(const HexCell& cell, int face, double nodal, const CellPorts& ports, double value);

/// Per boundary face, per field rule used during a connection sweep.
struct BoundaryValue {
  enum class Kind : std::uint8_t { ZeroGradient, Fixed };
  Kind kind = Kind::ZeroGradient;
  double value = 0.0;
};
using BoundaryTable = std::vector<std::array<BoundaryValue, kFieldCount>>;

/// Updates every port of the selected fields from the nodal values (taken at
/// t + tau/2) and the previous ports (taken at t). Faces are independent:
/// all reads come from the previous ports. Boundary faces follow `boundary`
/// (indexed by Mesh::boundary_faces), or zero gradient when it is empty.
/// Fluxes are stored for both sides of every face.
void connection_sweep(const Mesh& mesh, FieldState& state, FieldMask fields, const BoundaryTable& boundary = {});

/// Face-gradient of field f on (cell, face) from the current state, with the
/// mean repair on interior faces.
Vec3 state_face_gradient(const Mesh& mesh, const FieldState& state, Field f, std::size_t cell, int face);

}  // namespace dscflow

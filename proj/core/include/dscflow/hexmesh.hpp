#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dscflow/types.hpp"

namespace dscflow {

// Vertex labeling (local coordinates in {0,1}^3):
//
//   0 (0,0,0)  1 (1,0,0)  2 (1,1,0)  3 (0,1,0)
//   4 (0,0,1)  5 (1,0,1)  6 (1,1,1)  7 (0,1,1)
//
// This is also the VTK_HEXAHEDRON ordering. Edges are grouped by node
// direction: 0..3 run along local x, 4..7 along local y, 8..11 along local z,
// each edge pointing from tail to head in the positive local direction. Within
// a group the four edges walk around the cross-section so that the cyclic
// index rule of the face-vector formula picks the edges bounding each face.

struct EdgeDef {
  int tail;
  int head;
  int group;
};

inline constexpr std::array<EdgeDef, 12> kEdgeTable{{
    {0, 1, 0}, {3, 2, 0}, {7, 6, 0}, {4, 5, 0},
    {0, 3, 1}, {4, 7, 1}, {5, 6, 1}, {1, 2, 1},
    {0, 4, 2}, {1, 5, 2}, {2, 6, 2}, {3, 7, 2},
}};

/// Face quadrilaterals, ordered counter-clockwise seen from outside.
inline constexpr std::array<std::array<int, 4>, 6> kFaceVertices{{
    {0, 4, 7, 3},  // 0: -x
    {1, 2, 6, 5},  // 1: +x
    {0, 1, 5, 4},  // 2: -y
    {3, 7, 6, 2},  // 3: +y
    {0, 3, 2, 1},  // 4: -z
    {4, 5, 6, 7},  // 5: +z
}};

using HexVertices = std::array<Vec3, 8>;
using EdgeVectors = std::array<Vec3, 12>;
using NodeVectors = std::array<Vec3, 3>;
using FaceVectors = std::array<Vec3, 6>;

inline constexpr double kDefaultMaxCondition = 1e8;

EdgeVectors compute_edge_vectors(const HexVertices& vertices);

/// b_mu = 1/4 sum of the four edges in group mu.
NodeVectors compute_node_vectors(const EdgeVectors& edges);

/// Outward face vectors; magnitude is the vector area of the (possibly
/// non-planar) quadrilateral.
FaceVectors compute_face_vectors(const EdgeVectors& edges);

/// Exact volume of the trilinear hexahedron, (1/3) sum_i c_i . f_i.
double compute_volume(const HexVertices& vertices);

/// gamma = (B^T)^{-1} with B the matrix whose columns are the node vectors,
/// so that gamma * (b_mu . a)_mu == a.
Mat3 compute_gamma(const NodeVectors& nodes, double max_condition = kDefaultMaxCondition);

/// s[face][mu] = sum_nu f[face][nu] gamma(nu, mu).
std::array<Vec3, 6> compute_s_coeffs(const FaceVectors& faces, const Mat3& gamma);

/// Precomputed geometry of one hexahedral cell. Immutable after build().
struct HexCell {
  std::array<std::size_t, 8> vertex_ids{};
  EdgeVectors edges;
  NodeVectors node_vectors;
  FaceVectors face_vectors;
  std::array<Vec3, 6> face_centers;
  std::array<double, 6> face_areas{};
  std::array<Vec3, 6> s;  // s[face](mu)
  Mat3 gamma;
  Vec3 centroid;
  double volume = 0.0;
  double min_spacing = 0.0;  // min_mu |b_mu|

  /// a = 2 (-1)^face s[face][axis(face)], the coefficient of the normal
  /// port/node pair in the face flux.
  double normal_coefficient(int face) const { return 2.0 * face_parity(face) * s[face](face_axis(face)); }

  static HexCell build(const std::array<std::size_t, 8>& ids, const HexVertices& vertices,
                       double max_condition = kDefaultMaxCondition);
};

/// Link of a local face to its neighbor (interior) or its boundary entry.
struct FaceLink {
  std::int32_t cell = -1;      // neighbor cell, -1 on the boundary
  std::int32_t face = -1;      // neighbor's local face
  std::int32_t boundary = -1;  // index into Mesh::boundary_faces
  bool interior() const noexcept { return cell >= 0; }
};

struct InteriorFace {
  std::size_t cell_a;
  int face_a;
  std::size_t cell_b;
  int face_b;
};

struct BoundaryFace {
  std::size_t cell;
  int face;
  std::size_t tag;  // index into Mesh::tags
};

/// Boundary entry as supplied to build_mesh.
struct BoundarySpec {
  std::size_t cell;
  int face;
  std::string tag;
};

class Mesh {
 public:
  std::vector<Vec3> vertices;
  std::vector<HexCell> cells;
  std::vector<InteriorFace> interior_faces;
  std::vector<BoundaryFace> boundary_faces;
  std::vector<std::string> tags;

  std::size_t num_cells() const noexcept { return cells.size(); }
  const FaceLink& link(std::size_t cell, int face) const { return links_[cell * 6 + static_cast<std::size_t>(face)]; }
  const std::string& tag_of(const BoundaryFace& bf) const { return tags[bf.tag]; }
  /// Index of tag in tags, or -1.
  int find_tag(const std::string& tag) const;

  friend Mesh build_mesh(std::vector<Vec3> vertices, const std::vector<std::array<std::size_t, 8>>& hexes,
                         const std::vector<BoundarySpec>& boundary, double max_condition);

 private:
  std::vector<FaceLink> links_;
};

/// Matches interior faces by sorted vertex quadruple and validates all
/// cells. Every face must be either matched or listed in `boundary`.
Mesh build_mesh(std::vector<Vec3> vertices, const std::vector<std::array<std::size_t, 8>>& hexes,
                const std::vector<BoundarySpec>& boundary, double max_condition = kDefaultMaxCondition);

/// Cell containing `point`, or -1. Uses the face half-space test, exact for
/// planar faces.
std::int64_t locate_cell(const Mesh& mesh, const Vec3& point);

}  // namespace dscflow

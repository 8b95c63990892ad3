#include "dscflow/hexmesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "dscflow/error.hpp"

namespace dscflow {

std::string_view field_name(Field f) noexcept {
  switch (f) {
    case Field::T: return "T";
    case Field::Ux: return "ux";
    case Field::Uy: return "uy";
    case Field::Uz: return "uz";
    case Field::P: return "p";
  }
  return "?";
}

EdgeVectors compute_edge_vectors(const HexVertices& vertices) {
  double scale = 0.0;
  for (const auto& v : vertices) scale = std::max(scale, v.cwiseAbs().maxCoeff());
  const double eps = 1e-14 * std::max(scale, 1e-300);
  for (int i = 0; i < 8; ++i) {
    if (!vertices[i].allFinite()) throw DegenerateCellError("non-finite vertex coordinate");
    for (int j = i + 1; j < 8; ++j) {
      if ((vertices[i] - vertices[j]).norm() <= eps) {
        std::ostringstream os;
        os << "coincident vertices " << i << " and " << j;
        throw DegenerateCellError(os.str());
      }
    }
  }
  EdgeVectors edges;
  for (std::size_t nu = 0; nu < 12; ++nu) {
    edges[nu] = vertices[kEdgeTable[nu].head] - vertices[kEdgeTable[nu].tail];
  }
  return edges;
}

NodeVectors compute_node_vectors(const EdgeVectors& edges) {
  NodeVectors b;
  for (int mu = 0; mu < 3; ++mu) {
    b[mu] = 0.25 * (edges[4 * mu] + edges[4 * mu + 1] + edges[4 * mu + 2] + edges[4 * mu + 3]);
  }
  return b;
}

FaceVectors compute_face_vectors(const EdgeVectors& edges) {
  auto e = [&](int i) -> const Vec3& { return edges[static_cast<std::size_t>(((i % 12) + 12) % 12)]; };
  FaceVectors f;
  double scale = 0.0;
  for (const auto& edge : edges) scale = std::max(scale, edge.squaredNorm());
  for (int iota = 0; iota < 6; ++iota) {
    const double parity = face_parity(iota);
    const int second = 9 + 2 * (iota + static_cast<int>(parity));
    const Vec3 a = e(8 + 2 * iota) + e(second);
    const Vec3 c = e(4 + 2 * iota) + e(5 + 2 * iota);
    f[iota] = (parity / 4.0) * a.cross(c);
    if (!(f[iota].norm() > 1e-14 * scale)) {
      throw DegenerateCellError("zero-area face " + std::to_string(iota));
    }
  }
  return f;
}

namespace {

std::array<Vec3, 6> face_centers_of(const HexVertices& v) {
  std::array<Vec3, 6> c;
  for (int iota = 0; iota < 6; ++iota) {
    const auto& q = kFaceVertices[iota];
    c[iota] = 0.25 * (v[q[0]] + v[q[1]] + v[q[2]] + v[q[3]]);
  }
  return c;
}

}  // namespace

double compute_volume(const HexVertices& vertices) {
  const auto faces = compute_face_vectors(compute_edge_vectors(vertices));
  const auto centers = face_centers_of(vertices);
  // Shift to the first vertex so large coordinates do not cancel.
  double v = 0.0;
  for (int iota = 0; iota < 6; ++iota) v += (centers[iota] - vertices[0]).dot(faces[iota]);
  v /= 3.0;
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << "non-positive cell volume " << v;
    throw InvertedCellError(os.str());
  }
  return v;
}

Mat3 compute_gamma(const NodeVectors& nodes, double max_condition) {
  Mat3 beta;
  for (int mu = 0; mu < 3; ++mu) beta.col(mu) = nodes[mu];
  Eigen::JacobiSVD<Mat3> svd(beta);
  const auto& sv = svd.singularValues();
  const double cond = sv(2) > 0.0 ? sv(0) / sv(2) : std::numeric_limits<double>::infinity();
  if (!(cond <= max_condition)) {
    std::ostringstream os;
    os << "node vectors nearly dependent (condition number " << cond << ")";
    throw DegenerateCellError(os.str());
  }
  return beta.transpose().inverse();
}

std::array<Vec3, 6> compute_s_coeffs(const FaceVectors& faces, const Mat3& gamma) {
  std::array<Vec3, 6> s;
  for (int iota = 0; iota < 6; ++iota) s[iota] = gamma.transpose() * faces[iota];
  return s;
}

HexCell HexCell::build(const std::array<std::size_t, 8>& ids, const HexVertices& vertices, double max_condition) {
  HexCell cell;
  cell.vertex_ids = ids;
  cell.edges = compute_edge_vectors(vertices);
  cell.node_vectors = compute_node_vectors(cell.edges);
  cell.face_vectors = compute_face_vectors(cell.edges);
  cell.face_centers = face_centers_of(vertices);
  for (int iota = 0; iota < 6; ++iota) cell.face_areas[iota] = cell.face_vectors[iota].norm();
  cell.volume = compute_volume(vertices);
  cell.gamma = compute_gamma(cell.node_vectors, max_condition);
  cell.s = compute_s_coeffs(cell.face_vectors, cell.gamma);
  cell.centroid = Vec3::Zero();
  for (const auto& v : vertices) cell.centroid += v;
  cell.centroid /= 8.0;
  cell.min_spacing = std::min({cell.node_vectors[0].norm(), cell.node_vectors[1].norm(), cell.node_vectors[2].norm()});
  for (int iota = 0; iota < 6; ++iota) {
    if (cell.normal_coefficient(iota) == 0.0) {
      throw DegenerateCellError("face " + std::to_string(iota) + " has no normal gradient coupling");
    }
  }
  return cell;
}

int Mesh::find_tag(const std::string& tag) const {
  auto it = std::find(tags.begin(), tags.end(), tag);
  return it == tags.end() ? -1 : static_cast<int>(it - tags.begin());
}

Mesh build_mesh(std::vector<Vec3> vertices, const std::vector<std::array<std::size_t, 8>>& hexes,
                const std::vector<BoundarySpec>& boundary, double max_condition) {
  Mesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.cells.reserve(hexes.size());
  for (std::size_t c = 0; c < hexes.size(); ++c) {
    HexVertices hv;
    for (int k = 0; k < 8; ++k) {
      if (hexes[c][k] >= mesh.vertices.size()) {
        throw MeshTopologyError("cell " + std::to_string(c) + " references vertex " + std::to_string(hexes[c][k]) +
                                " out of range");
      }
      hv[k] = mesh.vertices[hexes[c][k]];
    }
    try {
      mesh.cells.push_back(HexCell::build(hexes[c], hv, max_condition));
    } catch (const DegenerateCellError& e) {
      throw DegenerateCellError("cell " + std::to_string(c) + ": " + e.what());
    } catch (const InvertedCellError& e) {
      throw InvertedCellError("cell " + std::to_string(c) + ": " + e.what());
    }
  }

  const std::size_t n = mesh.cells.size();
  mesh.links_.assign(n * 6, FaceLink{});

  using Key = std::array<std::size_t, 4>;
  std::map<Key, std::pair<std::size_t, int>> open;
  for (std::size_t c = 0; c < n; ++c) {
    for (int iota = 0; iota < 6; ++iota) {
      Key key;
      for (int k = 0; k < 4; ++k) key[k] = hexes[c][kFaceVertices[iota][k]];
      std::sort(key.begin(), key.end());
      if (std::adjacent_find(key.begin(), key.end()) != key.end()) {
        throw DegenerateCellError("cell " + std::to_string(c) + " face " + std::to_string(iota) +
                                  " repeats a vertex index");
      }
      auto [it, inserted] = open.try_emplace(key, c, iota);
      if (inserted) continue;
      const auto [other, other_face] = it->second;
      if (other == std::size_t(-1)) {
        throw MeshTopologyError("face shared by more than two cells (cell " + std::to_string(c) + " face " +
                                std::to_string(iota) + ")");
      }
      const Vec3& fa = mesh.cells[other].face_vectors[other_face];
      const Vec3& fb = mesh.cells[c].face_vectors[iota];
      if (!(fa.dot(fb) < 0.0)) {
        throw MeshTopologyError("inconsistent orientation between cell " + std::to_string(other) + " and cell " +
                                std::to_string(c));
      }
      mesh.links_[other * 6 + other_face] = FaceLink{static_cast<std::int32_t>(c), iota, -1};
      mesh.links_[c * 6 + iota] = FaceLink{static_cast<std::int32_t>(other), other_face, -1};
      mesh.interior_faces.push_back(InteriorFace{other, other_face, c, iota});
      it->second = {std::size_t(-1), -1};
    }
  }

  for (const auto& b : boundary) {
    if (b.cell >= n || b.face < 0 || b.face > 5) {
      throw MeshTopologyError("boundary entry (" + std::to_string(b.cell) + ", " + std::to_string(b.face) +
                              ") out of range");
    }
    FaceLink& l = mesh.links_[b.cell * 6 + static_cast<std::size_t>(b.face)];
    if (l.interior() || l.boundary >= 0) {
      throw MeshTopologyError("boundary entry (" + std::to_string(b.cell) + ", " + std::to_string(b.face) +
                              ") is already " + (l.interior() ? "an interior face" : "a boundary face"));
    }
    int tag = mesh.find_tag(b.tag);
    if (tag < 0) {
      mesh.tags.push_back(b.tag);
      tag = static_cast<int>(mesh.tags.size() - 1);
    }
    l.boundary = static_cast<std::int32_t>(mesh.boundary_faces.size());
    mesh.boundary_faces.push_back(BoundaryFace{b.cell, b.face, static_cast<std::size_t>(tag)});
  }

  for (std::size_t c = 0; c < n; ++c) {
    for (int iota = 0; iota < 6; ++iota) {
      const FaceLink& l = mesh.links_[c * 6 + iota];
      if (!l.interior() && l.boundary < 0) {
        throw MeshTopologyError("unmatched face: cell " + std::to_string(c) + " face " + std::to_string(iota) +
                                " has no neighbor and no boundary entry");
      }
    }
  }
  return mesh;
}

std::int64_t locate_cell(const Mesh& mesh, const Vec3& point) {
  for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
    const HexCell& cell = mesh.cells[c];
    const double tol = 1e-12 * cell.min_spacing;
    bool inside = true;
    for (int iota = 0; iota < 6 && inside; ++iota) {
      const Vec3& f = cell.face_vectors[iota];
      inside = (point - cell.face_centers[iota]).dot(f) <= tol * f.norm();
    }
    if (inside) return static_cast<std::int64_t>(c);
  }
  return -1;
}

}  // namespace dscflow

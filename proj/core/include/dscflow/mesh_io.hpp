#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dscflow/hexmesh.hpp"

namespace dscflow {

/// Raw contents of a mesh file, before validation.
struct MeshData {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::size_t, 8>> hexes;
  std::vector<BoundarySpec> boundary;
};

/// Plain-text mesh format (see docs/formats.md):
///
///   <n_vertices> <n_cells> <n_boundary>
///   x y z                      (n_vertices lines)
///   v0 v1 v2 v3 v4 v5 v6 v7    (n_cells lines)
///   cell face tag              (n_boundary lines)
///
/// Lines starting with '#' and blank lines are ignored.
MeshData read_mesh_data(std::istream& in);
MeshData read_mesh_data(const std::filesystem::path& path);
void write_mesh_data(std::ostream& out, const MeshData& data);
void write_mesh_data(const std::filesystem::path& path, const MeshData& data);

Mesh read_mesh(const std::filesystem::path& path);
MeshData to_mesh_data(const Mesh& mesh);

}  // namespace dscflow

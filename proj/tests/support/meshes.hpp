#pragma once

#include <random>
#include <string>
#include <vector>

#include "dscflow/hexmesh.hpp"

namespace testmesh {

/// nx*ny*nz lattice with spacing h; interior lattice points moved by up to
/// `jitter` (fraction of the smallest spacing). Every boundary face is
/// tagged "wall".
inline dscflow::Mesh box(int nx, int ny, int nz, const dscflow::Vec3& h = dscflow::Vec3(1, 1, 1),
                         double jitter = 0.0, unsigned seed = 1) {
  using dscflow::Vec3;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double hmin = h.minCoeff();
  auto id = [&](int i, int j, int k) { return static_cast<std::size_t>((k * (ny + 1) + j) * (nx + 1) + i); };
  std::vector<Vec3> v;
  for (int k = 0; k <= nz; ++k) {
    for (int j = 0; j <= ny; ++j) {
      for (int i = 0; i <= nx; ++i) {
        Vec3 p(i * h.x(), j * h.y(), k * h.z());
        // Only fully interior lattice points move so that the box stays a box.
        if (i > 0 && i < nx && j > 0 && j < ny && k > 0 && k < nz) p += jitter * hmin * Vec3(u(rng), u(rng), u(rng));
        v.push_back(p);
      }
    }
  }
  std::vector<std::array<std::size_t, 8>> hexes;
  std::vector<dscflow::BoundarySpec> boundary;
  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::size_t c = hexes.size();
        hexes.push_back({id(i, j, k), id(i + 1, j, k), id(i + 1, j + 1, k), id(i, j + 1, k), id(i, j, k + 1),
                         id(i + 1, j, k + 1), id(i + 1, j + 1, k + 1), id(i, j + 1, k + 1)});
        if (i == 0) boundary.push_back({c, 0, "wall"});
        if (i == nx - 1) boundary.push_back({c, 1, "wall"});
        if (j == 0) boundary.push_back({c, 2, "wall"});
        if (j == ny - 1) boundary.push_back({c, 3, "wall"});
        if (k == 0) boundary.push_back({c, 4, "wall"});
        if (k == nz - 1) boundary.push_back({c, 5, "wall"});
      }
    }
  }
  return dscflow::build_mesh(v, hexes, boundary);
}

/// Same lattice with the whole point set additionally sheared, so that
/// boundary cells are non-orthogonal too.
inline dscflow::Mesh sheared_box(int nx, int ny, int nz, double shear, double jitter, unsigned seed) {
  dscflow::Mesh m = box(nx, ny, nz, dscflow::Vec3(1, 1, 1), jitter, seed);
  std::vector<dscflow::Vec3> v = m.vertices;
  for (auto& p : v) p.x() += shear * p.y() + 0.5 * shear * p.z();
  std::vector<std::array<std::size_t, 8>> hexes;
  for (const auto& c : m.cells) hexes.push_back(c.vertex_ids);
  std::vector<dscflow::BoundarySpec> boundary;
  for (const auto& b : m.boundary_faces) boundary.push_back({b.cell, b.face, m.tags[b.tag]});
  return dscflow::build_mesh(v, hexes, boundary);
}

}  // namespace testmesh

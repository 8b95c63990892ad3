#include "dscflow/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dscflow/error.hpp"

namespace dscflow {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line; throws at end of input.
  std::istringstream next(const char* what) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return std::istringstream(line);
    }
    throw IoError("mesh file: unexpected end of input while reading " + std::string(what));
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw IoError("mesh file line " + std::to_string(line_no_) + ": " + msg);
  }

  std::size_t line() const { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

MeshData read_mesh_data(std::istream& in) {
  LineReader reader(in);
  MeshData data;
  std::size_t nv = 0, nc = 0, nb = 0;
  {
    auto ls = reader.next("header");
    if (!(ls >> nv >> nc >> nb)) reader.fail("expected header '<n_vertices> <n_cells> <n_boundary>'");
  }
  data.vertices.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    auto ls = reader.next("vertex");
    double x, y, z;
    if (!(ls >> x >> y >> z)) reader.fail("expected three vertex coordinates");
    data.vertices.emplace_back(x, y, z);
  }
  data.hexes.reserve(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    auto ls = reader.next("hexahedron");
    std::array<std::size_t, 8> ids{};
    for (auto& id : ids) {
      if (!(ls >> id)) reader.fail("expected eight vertex indices");
      if (id >= nv) reader.fail("vertex index " + std::to_string(id) + " out of range");
    }
    data.hexes.push_back(ids);
  }
  data.boundary.reserve(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    auto ls = reader.next("boundary entry");
    BoundarySpec b;
    if (!(ls >> b.cell >> b.face >> b.tag)) reader.fail("expected '<cell> <face> <tag>'");
    if (b.cell >= nc) reader.fail("cell index out of range");
    if (b.face < 0 || b.face > 5) reader.fail("local face must be in 0..5");
    data.boundary.push_back(std::move(b));
  }
  return data;
}

MeshData read_mesh_data(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file " + path.string());
  return read_mesh_data(in);
}

void write_mesh_data(std::ostream& out, const MeshData& data) {
  out << data.vertices.size() << ' ' << data.hexes.size() << ' ' << data.boundary.size() << '\n';
  for (const auto& v : data.vertices) {
    out << format_double(v.x()) << ' ' << format_double(v.y()) << ' ' << format_double(v.z()) << '\n';
  }
  for (const auto& h : data.hexes) {
    for (int k = 0; k < 8; ++k) out << h[k] << (k == 7 ? '\n' : ' ');
  }
  for (const auto& b : data.boundary) out << b.cell << ' ' << b.face << ' ' << b.tag << '\n';
}

void write_mesh_data(const std::filesystem::path& path, const MeshData& data) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write mesh file " + path.string());
  write_mesh_data(out, data);
  if (!out) throw IoError("write failed for " + path.string());
}

Mesh read_mesh(const std::filesystem::path& path) {
  MeshData d = read_mesh_data(path);
  return build_mesh(std::move(d.vertices), d.hexes, d.boundary);
}

MeshData to_mesh_data(const Mesh& mesh) {
  MeshData d;
  d.vertices = mesh.vertices;
  d.hexes.reserve(mesh.cells.size());
  for (const auto& c : mesh.cells) d.hexes.push_back(c.vertex_ids);
  for (const auto& bf : mesh.boundary_faces) d.boundary.push_back(BoundarySpec{bf.cell, bf.face, mesh.tag_of(bf)});
  return d;
}

}  // namespace dscflow

#include "dscflow/output.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "dscflow/error.hpp"

namespace dscflow {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_snapshot_csv(std::ostream& out, const Mesh& mesh, const FieldState& state) {
  out << "cell,x,y,z,T,ux,uy,uz,p,umag\n";
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const Vec3& x = mesh.cells[c].centroid;
    const Vec3 u = state.velocity(c);
    out << c << ',' << num(x.x()) << ',' << num(x.y()) << ',' << num(x.z()) << ',' << num(state.node(Field::T, c))
        << ',' << num(u.x()) << ',' << num(u.y()) << ',' << num(u.z()) << ',' << num(state.node(Field::P, c)) << ','
        << num(u.norm()) << '\n';
  }
}

void write_snapshot_vtk(std::ostream& out, const Mesh& mesh, const FieldState& state, const std::string& title) {
  const std::size_t n = mesh.num_cells();
  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.vertices.size() << " double\n";
  for (const Vec3& v : mesh.vertices) out << num(v.x()) << ' ' << num(v.y()) << ' ' << num(v.z()) << '\n';
  out << "CELLS " << n << ' ' << n * 9 << '\n';
  for (const auto& cell : mesh.cells) {
    out << 8;
    for (std::size_t id : cell.vertex_ids) out << ' ' << id;
    out << '\n';
  }
  out << "CELL_TYPES " << n << '\n';
  for (std::size_t c = 0; c < n; ++c) out << "12\n";
  out << "CELL_DATA " << n << '\n';
  out << "SCALARS T double 1\nLOOKUP_TABLE default\n";
  for (std::size_t c = 0; c < n; ++c) out << num(state.node(Field::T, c)) << '\n';
  out << "SCALARS p double 1\nLOOKUP_TABLE default\n";
  for (std::size_t c = 0; c < n; ++c) out << num(state.node(Field::P, c)) << '\n';
  out << "VECTORS u double\n";
  for (std::size_t c = 0; c < n; ++c) {
    const Vec3 u = state.velocity(c);
    out << num(u.x()) << ' ' << num(u.y()) << ' ' << num(u.z()) << '\n';
  }
}

std::vector<std::filesystem::path> write_snapshot(const std::filesystem::path& dir, const std::string& stem,
                                                  const Mesh& mesh, const FieldState& state, OutputFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  auto open = [&](const std::string& ext) {
    const auto path = dir / (stem + ext);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write '" + path.string() + "'");
    written.push_back(path);
    return f;
  };
  if (format != OutputFormat::Vtk) {
    auto f = open(".csv");
    write_snapshot_csv(f, mesh, state);
    if (!f) throw IoError("write failed for '" + written.back().string() + "'");
  }
  if (format != OutputFormat::Csv) {
    auto f = open(".vtk");
    write_snapshot_vtk(f, mesh, state, stem);
    if (!f) throw IoError("write failed for '" + written.back().string() + "'");
  }
  return written;
}

void write_probes_csv(std::ostream& out, const std::vector<Probe>& probes) {
  out << "time,probe,field,value\n";
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const auto& fields = probes[p].fields();
    for (const auto& s : probes[p].samples()) {
      for (std::size_t k = 0; k < fields.size(); ++k) {
        out << num(s.time) << ',' << p << ',' << probe_field_name(fields[k]) << ',' << num(s.values[k]) << '\n';
      }
    }
  }
}

}  // namespace dscflow

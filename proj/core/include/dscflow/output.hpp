#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dscflow/config.hpp"
#include "dscflow/hexmesh.hpp"
#include "dscflow/sim.hpp"
#include "dscflow/state.hpp"

namespace dscflow {

/// Header "cell,x,y,z,T,ux,uy,uz,p,umag", one row per cell, values printed
/// with 17 significant digits.
void write_snapshot_csv(std::ostream& out, const Mesh& mesh, const FieldState& state);

/// Legacy VTK ASCII 3.0 unstructured grid of hexahedra with cell data
/// T, p (scalars) and u (vectors).
void write_snapshot_vtk(std::ostream& out, const Mesh& mesh, const FieldState& state,
                        const std::string& title = "dscflow snapshot");

/// Writes snapshot file(s) named <stem>.csv and/or <stem>.vtk into `dir`,
/// creating it if needed.
/// Returns the paths written. Throws IoError.
std::vector<std::filesystem::path> write_snapshot(const std::filesystem::path& dir, const std::string& stem,
                                                  const Mesh& mesh, const FieldState& state, OutputFormat format);

/// Tidy table "time,probe,field,value", one row per sample and field.
void write_probes_csv(std::ostream& out, const std::vector<Probe>& probes);

}  // namespace dscflow

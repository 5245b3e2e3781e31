#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chimhd/fespace.hpp"

namespace chimhd {

/// Legacy ASCII VTK (2.0) snapshot of one state: point data for the P1
/// fields and the vertex part of the velocity, cell data for the P0 fields
/// and the per-cell average of the RT0 current.
struct VtkSnapshot {
  std::vector<std::pair<std::string, DenseVector>> point_scalars;  // size V each
  std::vector<std::pair<std::string, DenseVector>> cell_scalars;   // size T each
  std::vector<std::pair<std::string, std::vector<Vec2>>> point_vectors;
  std::vector<std::pair<std::string, std::vector<Vec2>>> cell_vectors;
};

void write_legacy_vtk(const std::string& path, const Mesh& mesh, const VtkSnapshot& snap);

}  // namespace chimhd

#include "chimhd/vtk.hpp"

#include <cstdio>
#include <stdexcept>

namespace chimhd {

namespace {
void put(FILE* f, const char* fmt, double v) { std::fprintf(f, fmt, v); }
}  // namespace

void write_legacy_vtk(const std::string& path, const Mesh& mesh, const VtkSnapshot& snap) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");

  std::fprintf(f, "# vtk DataFile Version 2.0\n");
  std::fprintf(f, "chimhd fields\n");
  std::fprintf(f, "ASCII\n");
  std::fprintf(f, "DATASET UNSTRUCTURED_GRID\n");

  const int V = mesh.num_vertices();
  const int T = mesh.num_cells();
  std::fprintf(f, "POINTS %d double\n", V);
  for (const Vec2& p : mesh.vertices) {
    put(f, "%.17g ", p.x());
    put(f, "%.17g ", p.y());
    std::fprintf(f, "0\n");
  }
  std::fprintf(f, "CELLS %d %d\n", T, 4 * T);
  for (const auto& c : mesh.cells) std::fprintf(f, "3 %d %d %d\n", c[0], c[1], c[2]);
  std::fprintf(f, "CELL_TYPES %d\n", T);
  for (int t = 0; t < T; ++t) std::fprintf(f, "5\n");

  if (!snap.point_scalars.empty() || !snap.point_vectors.empty()) {
    std::fprintf(f, "POINT_DATA %d\n", V);
    for (const auto& [name, data] : snap.point_scalars) {
      std::fprintf(f, "SCALARS %s double 1\nLOOKUP_TABLE default\n", name.c_str());
      for (int i = 0; i < V; ++i) {
        put(f, "%.17g", data[i]);
        std::fprintf(f, "\n");
      }
    }
    for (const auto& [name, data] : snap.point_vectors) {
      std::fprintf(f, "VECTORS %s double\n", name.c_str());
      for (int i = 0; i < V; ++i) {
        put(f, "%.17g ", data[i].x());
        put(f, "%.17g ", data[i].y());
        std::fprintf(f, "0\n");
      }
    }
  }
  if (!snap.cell_scalars.empty() || !snap.cell_vectors.empty()) {
    std::fprintf(f, "CELL_DATA %d\n", T);
    for (const auto& [name, data] : snap.cell_scalars) {
      std::fprintf(f, "SCALARS %s double 1\nLOOKUP_TABLE default\n", name.c_str());
      for (int i = 0; i < T; ++i) {
        put(f, "%.17g", data[i]);
        std::fprintf(f, "\n");
      }
    }
    for (const auto& [name, data] : snap.cell_vectors) {
      std::fprintf(f, "VECTORS %s double\n", name.c_str());
      for (int i = 0; i < T; ++i) {
        put(f, "%.17g ", data[i].x());
        put(f, "%.17g ", data[i].y());
        std::fprintf(f, "0\n");
      }
    }
  }
  std::fclose(f);
}

}  // namespace chimhd

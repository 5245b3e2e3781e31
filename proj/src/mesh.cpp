#include "chimhd/mesh.hpp"

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace chimhd {

BoundaryMarker marker_from_name(const std::string& name) {
  if (name == "left") return BoundaryMarker::Left;
  if (name == "right") return BoundaryMarker::Right;
  if (name == "bottom") return BoundaryMarker::Bottom;
  if (name == "top") return BoundaryMarker::Top;
  throw std::invalid_argument("unknown boundary marker: " + name);
}

CellGeometry cell_geometry(const Mesh& mesh, int cell) {
  CellGeometry g;
  const auto& c = mesh.cells[cell];
  for (int k = 0; k < 3; ++k) g.x[k] = mesh.vertices[c[k]];
  const Vec2 e1 = g.x[1] - g.x[0];
  const Vec2 e2 = g.x[2] - g.x[0];
  const double det = e1.x() * e2.y() - e1.y() * e2.x();
  g.area = 0.5 * det;
  for (int k = 0; k < 3; ++k) {
    const Vec2 e = g.x[(k + 2) % 3] - g.x[(k + 1) % 3];  // edge opposite vertex k
    g.grad_lambda[k] = Vec2(-e.y(), e.x()) / det;
    g.edge_len[k] = e.norm();
    g.normal[k] = Vec2(e.y(), -e.x()) / g.edge_len[k];
  }
  return g;
}

Vec2 facet_normal(const Mesh& mesh, int facet) {
  const auto& f = mesh.facets[facet];
  const Vec2 t = mesh.vertices[f[1]] - mesh.vertices[f[0]];
  return Vec2(t.y(), -t.x()) / t.norm();
}

double facet_length(const Mesh& mesh, int facet) {
  const auto& f = mesh.facets[facet];
  return (mesh.vertices[f[1]] - mesh.vertices[f[0]]).norm();
}

Vec2 facet_midpoint(const Mesh& mesh, int facet) {
  const auto& f = mesh.facets[facet];
  return 0.5 * (mesh.vertices[f[0]] + mesh.vertices[f[1]]);
}

MeshSize mesh_size(const Mesh& mesh) {
  MeshSize s;
  s.h_min = std::numeric_limits<double>::max();
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const auto& c = mesh.cells[t];
    for (int k = 0; k < 3; ++k) {
      const double d = (mesh.vertices[c[k]] - mesh.vertices[c[(k + 1) % 3]]).norm();
      s.h_max = std::max(s.h_max, d);
      s.h_min = std::min(s.h_min, d);
    }
  }
  return s;
}

void finalize_connectivity(Mesh& mesh,
                           const std::function<BoundaryMarker(int, int)>& boundary_marker_of) {
  mesh.facets.clear();
  mesh.cell_facets.assign(mesh.num_cells(), {-1, -1, -1});
  mesh.cell_signs.assign(mesh.num_cells(), {0, 0, 0});
  mesh.facet_cells.clear();
  mesh.facet_marker.clear();

  std::map<std::pair<int, int>, int> index;
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const auto& c = mesh.cells[t];
    for (int k = 0; k < 3; ++k) {
      const int a = c[(k + 1) % 3];
      const int b = c[(k + 2) % 3];
      const auto key = std::minmax(a, b);
      auto it = index.find(key);
      int f;
      if (it == index.end()) {
        f = mesh.num_facets();
        index.emplace(key, f);
        mesh.facets.push_back({key.first, key.second});
        mesh.facet_cells.push_back({-1, -1});
      } else {
        f = it->second;
      }
      mesh.cell_facets[t][k] = f;
      if (mesh.facet_cells[f][0] < 0)
        mesh.facet_cells[f][0] = t;
      else if (mesh.facet_cells[f][1] < 0)
        mesh.facet_cells[f][1] = t;
      else
        throw std::runtime_error("facet incident to more than two cells");
    }
  }

  // Orientation signs: +1 when the global facet normal is outward for the cell.
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    if (g.area <= 0.0) throw std::runtime_error("cell with non-positive area");
    for (int k = 0; k < 3; ++k) {
      const int f = mesh.cell_facets[t][k];
      const Vec2 n = facet_normal(mesh, f);
      mesh.cell_signs[t][k] = n.dot(g.normal[k]) > 0.0 ? 1 : -1;
    }
  }

  mesh.facet_marker.assign(mesh.num_facets(), BoundaryMarker::Interior);
  for (int f = 0; f < mesh.num_facets(); ++f) {
    if (mesh.facet_cells[f][1] < 0) {
      mesh.facet_marker[f] = boundary_marker_of(mesh.facets[f][0], mesh.facets[f][1]);
      if (mesh.facet_marker[f] == BoundaryMarker::Interior)
        throw std::runtime_error("boundary facet without marker");
    }
  }
}

Mesh structured_rect_mesh(int nx, int ny, std::pair<double, double> x_range,
                          std::pair<double, double> y_range) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("structured_rect_mesh: need nx, ny >= 1");
  if (!(x_range.second > x_range.first) || !(y_range.second > y_range.first))
    throw std::invalid_argument("structured_rect_mesh: empty range");

  Mesh mesh;
  const double hx = (x_range.second - x_range.first) / nx;
  const double hy = (y_range.second - y_range.first) / ny;
  mesh.vertices.reserve((nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      const double x = (i == nx) ? x_range.second : x_range.first + i * hx;
      const double y = (j == ny) ? y_range.second : y_range.first + j * hy;
      mesh.vertices.emplace_back(x, y);
    }

  auto vid = [&](int i, int j) { return j * (nx + 1) + i; };
  mesh.cells.reserve(2 * nx * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j);
      const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      mesh.cells.push_back({v00, v10, v11});
      mesh.cells.push_back({v00, v11, v01});
    }

  auto lattice_marker = [&](int a, int b) {
    const int ia = a % (nx + 1), ja = a / (nx + 1);
    const int ib = b % (nx + 1), jb = b / (nx + 1);
    if (ia == 0 && ib == 0) return BoundaryMarker::Left;
    if (ia == nx && ib == nx) return BoundaryMarker::Right;
    if (ja == 0 && jb == 0) return BoundaryMarker::Bottom;
    if (ja == ny && jb == ny) return BoundaryMarker::Top;
    return BoundaryMarker::Interior;
  };
  finalize_connectivity(mesh, lattice_marker);
  return mesh;
}

std::vector<int> boundary_facets(const Mesh& mesh, const std::string& marker) {
  const bool all = (marker == "all");
  const BoundaryMarker want = all ? BoundaryMarker::Interior : marker_from_name(marker);
  std::vector<int> out;
  for (int f = 0; f < mesh.num_facets(); ++f) {
    if (mesh.facet_cells[f][1] >= 0) continue;
    if (all || mesh.facet_marker[f] == want) out.push_back(f);
  }
  return out;
}

std::vector<int> boundary_vertices(const Mesh& mesh) {
  std::set<int> verts;
  for (int f = 0; f < mesh.num_facets(); ++f)
    if (mesh.facet_cells[f][1] < 0) {
      verts.insert(mesh.facets[f][0]);
      verts.insert(mesh.facets[f][1]);
    }
  return {verts.begin(), verts.end()};
}

void validate(const Mesh& mesh) {
  for (int t = 0; t < mesh.num_cells(); ++t)
    if (cell_geometry(mesh, t).area <= 0.0)
      throw std::runtime_error("validate: non-positive cell area");

  int boundary_count = 0;
  for (int f = 0; f < mesh.num_facets(); ++f) {
    const auto& fc = mesh.facet_cells[f];
    const bool interior = fc[1] >= 0;
    int sign_sum = 0, incidences = 0;
    for (int side = 0; side < 2; ++side) {
      const int t = fc[side];
      if (t < 0) continue;
      for (int k = 0; k < 3; ++k)
        if (mesh.cell_facets[t][k] == f) {
          sign_sum += mesh.cell_signs[t][k];
          ++incidences;
        }
    }
    if (interior) {
      if (incidences != 2 || sign_sum != 0)
        throw std::runtime_error("validate: interior facet signs do not cancel");
      if (mesh.facet_marker[f] != BoundaryMarker::Interior)
        throw std::runtime_error("validate: interior facet carries a marker");
    } else {
      if (incidences != 1) throw std::runtime_error("validate: dangling facet");
      if (mesh.facet_marker[f] == BoundaryMarker::Interior)
        throw std::runtime_error("validate: unmarked boundary facet");
      ++boundary_count;
    }
  }
  if (boundary_count == 0) throw std::runtime_error("validate: no boundary");

  // Euler relation of a simply connected planar triangulation.
  if (mesh.num_vertices() - mesh.num_facets() + mesh.num_cells() != 1)
    throw std::runtime_error("validate: Euler relation violated");
}

std::pair<int, std::array<double, 3>> locate_point(const Mesh& mesh, const Vec2& p) {
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    std::array<double, 3> lam;
    bool inside = true;
    for (int k = 0; k < 3; ++k) {
      lam[k] = 1.0 / 3.0 + g.grad_lambda[k].dot(p - (g.x[0] + g.x[1] + g.x[2]) / 3.0);
      if (lam[k] < -1e-12) inside = false;
    }
    if (inside) return {t, lam};
  }
  return {-1, {0.0, 0.0, 0.0}};
}

}  // namespace chimhd

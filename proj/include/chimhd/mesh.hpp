#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace chimhd {

using Vec2 = Eigen::Vector2d;

enum class BoundaryMarker : int { Interior = -1, Left = 0, Right = 1, Bottom = 2, Top = 3 };

/// Parses "left", "right", "bottom", "top"; throws on anything else.
BoundaryMarker marker_from_name(const std::string& name);

/// Conforming triangulation with globally oriented facets.
///
/// Facets store their endpoints lower vertex index first; the global unit
/// normal is the right-rotated tangent of that ordering, so the normal is a
/// single fixed vector shared by both incident cells. cell_signs records
/// whether that normal is outward (+1) or inward (-1) for each cell, which
/// makes RT0 normal-flux continuity automatic.
struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> cells;        // counter-clockwise vertex triples
  std::vector<std::array<int, 2>> facets;       // endpoints, lower index first
  std::vector<std::array<int, 3>> cell_facets;  // facet opposite local vertex k
  std::vector<std::array<int, 3>> cell_signs;   // +1 iff global normal is outward
  std::vector<std::array<int, 2>> facet_cells;  // incident cells, -1 when absent
  std::vector<BoundaryMarker> facet_marker;     // Interior for interior facets

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_cells() const { return static_cast<int>(cells.size()); }
  int num_facets() const { return static_cast<int>(facets.size()); }
};

/// Per-cell geometry used by basis evaluation and assembly.
struct CellGeometry {
  std::array<Vec2, 3> x;            // vertex coordinates
  double area;                      // positive for CCW cells
  std::array<Vec2, 3> grad_lambda;  // barycentric gradients (constant)
  std::array<Vec2, 3> normal;       // outward unit normal of facet opposite vertex k
  std::array<double, 3> edge_len;   // length of facet opposite vertex k

  Vec2 point(const std::array<double, 3>& lam) const {
    return lam[0] * x[0] + lam[1] * x[1] + lam[2] * x[2];
  }
};

CellGeometry cell_geometry(const Mesh& mesh, int cell);

Vec2 facet_normal(const Mesh& mesh, int facet);  // the fixed global unit normal
double facet_length(const Mesh& mesh, int facet);
Vec2 facet_midpoint(const Mesh& mesh, int facet);

struct MeshSize {
  double h_max = 0.0;
  double h_min = 0.0;
};

MeshSize mesh_size(const Mesh& mesh);

/// Uniform triangulation of [x0,x1]x[y0,y1]: nx*ny squares, each split along
/// the lower-left to upper-right diagonal. Facets are enumerated in
/// first-encounter order over cells, which is deterministic.
Mesh structured_rect_mesh(int nx, int ny, std::pair<double, double> x_range,
                          std::pair<double, double> y_range);

/// Facets with exactly one incident cell, optionally filtered by marker name
/// ("left", "right", "bottom", "top", or "all").
std::vector<int> boundary_facets(const Mesh& mesh, const std::string& marker);

/// Derives facets, incidence, signs and markers from vertices+cells already
/// stored in the mesh. boundary_marker_of(v0, v1) classifies a boundary facet
/// by its endpoints.
void finalize_connectivity(Mesh& mesh,
                           const std::function<BoundaryMarker(int, int)>& boundary_marker_of);

/// Checks every structural invariant (positive areas, facet incidence and
/// signs, Euler relation, marker consistency); throws on violation.
void validate(const Mesh& mesh);

/// Vertices lying on at least one boundary facet, ascending.
std::vector<int> boundary_vertices(const Mesh& mesh);

/// Locates the cell containing a point (small meshes only; linear scan).
/// Returns {cell, barycentric coords}; cell = -1 if outside.
std::pair<int, std::array<double, 3>> locate_point(const Mesh& mesh, const Vec2& p);

}  // namespace chimhd

#include "chimhd/fespace.hpp"

#include <stdexcept>

namespace chimhd {

FESpace build_space(const Mesh& mesh, SpaceKind kind, MeanConstraint constraint) {
  FESpace s;
  s.kind = kind;
  s.mesh = &mesh;
  s.constraint = constraint;
  const int V = mesh.num_vertices();
  const int T = mesh.num_cells();

  switch (kind) {
    case SpaceKind::P1Scalar:
      s.ndofs = V;
      s.dofs_per_cell = 3;
      s.cell_dofs.resize(static_cast<size_t>(T) * 3);
      for (int t = 0; t < T; ++t)
        for (int k = 0; k < 3; ++k) s.cell_dofs[t * 3 + k] = mesh.cells[t][k];
      break;
    case SpaceKind::MiniVector:
      s.ndofs = 2 * (V + T);
      s.dofs_per_cell = 8;
      s.cell_dofs.resize(static_cast<size_t>(T) * 8);
      for (int t = 0; t < T; ++t)
        for (int comp = 0; comp < 2; ++comp) {
          for (int k = 0; k < 3; ++k)
            s.cell_dofs[t * 8 + 4 * comp + k] = 2 * mesh.cells[t][k] + comp;
          s.cell_dofs[t * 8 + 4 * comp + 3] = 2 * V + 2 * t + comp;
        }
      break;
    case SpaceKind::P0Scalar:
      s.ndofs = T;
      s.dofs_per_cell = 1;
      s.cell_dofs.resize(T);
      for (int t = 0; t < T; ++t) s.cell_dofs[t] = t;
      break;
    case SpaceKind::RT0:
      s.ndofs = mesh.num_facets();
      s.dofs_per_cell = 3;
      s.cell_dofs.resize(static_cast<size_t>(T) * 3);
      for (int t = 0; t < T; ++t)
        for (int k = 0; k < 3; ++k) s.cell_dofs[t * 3 + k] = mesh.cell_facets[t][k];
      break;
  }

  if (constraint == MeanConstraint::ZeroMean) {
    s.mean_weights = DenseVector::Zero(s.ndofs);
    for (int t = 0; t < T; ++t) {
      const double area = cell_geometry(mesh, t).area;
      if (kind == SpaceKind::P0Scalar) {
        s.mean_weights[t] = area;
      } else if (kind == SpaceKind::P1Scalar) {
        for (int k = 0; k < 3; ++k) s.mean_weights[mesh.cells[t][k]] += area / 3.0;
      } else {
        throw std::invalid_argument("zero-mean constraint is limited to scalar spaces");
      }
    }
  }
  return s;
}

QuadratureRule default_quadrature(SpaceKind, SpaceKind) { return default_volume_rule(); }

DenseVector interpolate(const FESpace& space, const ScalarFn& fn, double time) {
  const Mesh& mesh = *space.mesh;
  DenseVector c = DenseVector::Zero(space.ndofs);
  switch (space.kind) {
    case SpaceKind::P1Scalar:
      for (int v = 0; v < mesh.num_vertices(); ++v) c[v] = fn(mesh.vertices[v], time);
      break;
    case SpaceKind::P0Scalar:
      for (int t = 0; t < mesh.num_cells(); ++t) {
        const auto& cl = mesh.cells[t];
        const Vec2 mid = (mesh.vertices[cl[0]] + mesh.vertices[cl[1]] + mesh.vertices[cl[2]]) / 3.0;
        c[t] = fn(mid, time);
      }
      break;
    default:
      throw std::invalid_argument("interpolate(scalar): vector space");
  }
  return c;
}

DenseVector interpolate(const FESpace& space, const VectorFn& fn, double time) {
  const Mesh& mesh = *space.mesh;
  DenseVector c = DenseVector::Zero(space.ndofs);
  switch (space.kind) {
    case SpaceKind::MiniVector:
      for (int v = 0; v < mesh.num_vertices(); ++v) {
        const Vec2 val = fn(mesh.vertices[v], time);
        c[2 * v] = val.x();
        c[2 * v + 1] = val.y();
      }
      break;
    case SpaceKind::RT0:
      for (int f = 0; f < mesh.num_facets(); ++f)
        c[f] = facet_flux_dof(mesh, f, fn, time, 1);
      break;
    default:
      throw std::invalid_argument("interpolate(vector): scalar space");
  }
  return c;
}

double facet_flux_dof(const Mesh& mesh, int facet, const VectorFn& fn, double time, int npts) {
  const Vec2 n = facet_normal(mesh, facet);
  const double len = facet_length(mesh, facet);
  const Vec2 a = mesh.vertices[mesh.facets[facet][0]];
  const Vec2 b = mesh.vertices[mesh.facets[facet][1]];
  if (npts == 1) return fn(0.5 * (a + b), time).dot(n) * len;
  const SegmentRule rule = segment_rule(npts);
  double flux = 0.0;
  for (int q = 0; q < npts; ++q) {
    const Vec2 x = a + rule.points[q] * (b - a);
    flux += rule.weights[q] * fn(x, time).dot(n);
  }
  return flux * len;
}

double weighted_mean(const FESpace& space, const DenseVector& coeffs) {
  if (space.constraint != MeanConstraint::ZeroMean)
    throw std::invalid_argument("weighted_mean: space has no mean functional");
  return space.mean_weights.dot(coeffs) / space.mean_weights.sum();
}

void subtract_mean(const FESpace& space, DenseVector& coeffs) {
  coeffs.array() -= weighted_mean(space, coeffs);
}

ScalarBasis p1_basis(const CellGeometry& g, const std::array<double, 3>& lam) {
  ScalarBasis b;
  b.n = 3;
  for (int k = 0; k < 3; ++k) {
    b.value[k] = lam[k];
    b.grad[k] = g.grad_lambda[k];
  }
  return b;
}

ScalarBasis mini_scalar_basis(const CellGeometry& g, const std::array<double, 3>& lam) {
  ScalarBasis b = p1_basis(g, lam);
  b.n = 4;
  b.value[3] = 27.0 * lam[0] * lam[1] * lam[2];
  b.grad[3] = 27.0 * (lam[1] * lam[2] * g.grad_lambda[0] + lam[0] * lam[2] * g.grad_lambda[1] +
                      lam[0] * lam[1] * g.grad_lambda[2]);
  return b;
}

RT0Basis rt0_basis(const Mesh& mesh, int cell, const CellGeometry& g, const Vec2& x) {
  if (g.area <= 0.0) throw std::invalid_argument("rt0_basis: degenerate cell");
  RT0Basis b;
  for (int k = 0; k < 3; ++k) {
    const double s = mesh.cell_signs[cell][k];
    b.value[k] = s * (x - g.x[k]) / (2.0 * g.area);
    b.div[k] = s / g.area;
  }
  return b;
}

double eval_p1(const FESpace& s, const DenseVector& c, int cell, const std::array<double, 3>& lam) {
  const int* d = s.dofs(cell);
  return lam[0] * c[d[0]] + lam[1] * c[d[1]] + lam[2] * c[d[2]];
}

Vec2 grad_p1(const FESpace& s, const DenseVector& c, int cell, const CellGeometry& g) {
  const int* d = s.dofs(cell);
  return c[d[0]] * g.grad_lambda[0] + c[d[1]] * g.grad_lambda[1] + c[d[2]] * g.grad_lambda[2];
}

double eval_p0(const FESpace& s, const DenseVector& c, int cell) { return c[s.dofs(cell)[0]]; }

Vec2 eval_mini(const FESpace& s, const DenseVector& c, int cell, const CellGeometry& g,
               const std::array<double, 3>& lam) {
  const ScalarBasis sb = mini_scalar_basis(g, lam);
  const int* d = s.dofs(cell);
  Vec2 val = Vec2::Zero();
  for (int comp = 0; comp < 2; ++comp)
    for (int k = 0; k < 4; ++k) val[comp] += c[d[4 * comp + k]] * sb.value[k];
  return val;
}

Eigen::Matrix2d grad_mini(const FESpace& s, const DenseVector& c, int cell, const CellGeometry& g,
                          const std::array<double, 3>& lam) {
  const ScalarBasis sb = mini_scalar_basis(g, lam);
  const int* d = s.dofs(cell);
  Eigen::Matrix2d grad = Eigen::Matrix2d::Zero();  // grad(i,j) = d u_i / d x_j
  for (int comp = 0; comp < 2; ++comp)
    for (int k = 0; k < 4; ++k) grad.row(comp) += c[d[4 * comp + k]] * sb.grad[k].transpose();
  return grad;
}

Vec2 eval_rt0(const FESpace& s, const DenseVector& c, int cell, const CellGeometry& g,
              const Vec2& x) {
  const RT0Basis rb = rt0_basis(*s.mesh, cell, g, x);
  const int* d = s.dofs(cell);
  return c[d[0]] * rb.value[0] + c[d[1]] * rb.value[1] + c[d[2]] * rb.value[2];
}

double div_rt0(const FESpace& s, const DenseVector& c, int cell, const CellGeometry& g) {
  const RT0Basis rb = rt0_basis(*s.mesh, cell, g, g.x[0]);
  const int* d = s.dofs(cell);
  return c[d[0]] * rb.div[0] + c[d[1]] * rb.div[1] + c[d[2]] * rb.div[2];
}

double evaluate_scalar_field(const FESpace& s, const DenseVector& c, const Vec2& p) {
  const auto [cell, lam] = locate_point(*s.mesh, p);
  if (cell < 0) throw std::invalid_argument("evaluate_scalar_field: point outside mesh");
  if (s.kind == SpaceKind::P0Scalar) return eval_p0(s, c, cell);
  return eval_p1(s, c, cell, lam);
}

Vec2 evaluate_vector_field(const FESpace& s, const DenseVector& c, const Vec2& p) {
  const auto [cell, lam] = locate_point(*s.mesh, p);
  if (cell < 0) throw std::invalid_argument("evaluate_vector_field: point outside mesh");
  const CellGeometry g = cell_geometry(*s.mesh, cell);
  if (s.kind == SpaceKind::RT0) return eval_rt0(s, c, cell, g, g.point(lam));
  return eval_mini(s, c, cell, g, lam);
}

}  // namespace chimhd

#pragma once

#include <functional>

#include <Eigen/Dense>

#include "chimhd/mesh.hpp"
#include "chimhd/quadrature.hpp"

namespace chimhd {

using DenseVector = Eigen::VectorXd;

enum class SpaceKind { P1Scalar, MiniVector, P0Scalar, RT0 };
enum class MeanConstraint { None, ZeroMean };

/// Discrete space over a mesh with a deterministic cell -> global DOF table.
///
/// DOF layouts:
///   P1Scalar   - one DOF per vertex (index = vertex index).
///   MiniVector - vertex v carries (2v, 2v+1); the per-cell bubble carries
///                (2V+2t, 2V+2t+1). Local order: x at vertices 0..2, x bubble,
///                then the y counterparts.
///   P0Scalar   - one DOF per cell.
///   RT0        - one DOF per facet: the integrated flux across the facet in
///                the direction of the global facet normal.
struct FESpace {
  SpaceKind kind;
  const Mesh* mesh = nullptr;
  int ndofs = 0;
  int dofs_per_cell = 0;
  MeanConstraint constraint = MeanConstraint::None;
  std::vector<int> cell_dofs;  // num_cells * dofs_per_cell
  DenseVector mean_weights;    // exact integral functional when ZeroMean

  const int* dofs(int cell) const { return &cell_dofs[static_cast<size_t>(cell) * dofs_per_cell]; }
};

FESpace build_space(const Mesh& mesh, SpaceKind kind,
                    MeanConstraint constraint = MeanConstraint::None);

/// The volume rule shared by all assembled terms (degree 6, covering the
/// bubble x bubble x gradient products of the Mini element).
QuadratureRule default_quadrature(SpaceKind a, SpaceKind b);

using ScalarFn = std::function<double(const Vec2&, double)>;
using VectorFn = std::function<Vec2(const Vec2&, double)>;

/// Nodal interpolation: P1/Mini take vertex values (bubbles zero), P0 the
/// centroid value, RT0 the midpoint-rule flux (fn . global normal) * length.
DenseVector interpolate(const FESpace& space, const ScalarFn& fn, double time);
DenseVector interpolate(const FESpace& space, const VectorFn& fn, double time);

/// Integrated normal flux of fn across one facet with an n-point Gauss rule
/// (n = 1 is the midpoint rule used by interpolate).
double facet_flux_dof(const Mesh& mesh, int facet, const VectorFn& fn, double time, int npts);

/// Subtracts the weighted mean so that mean_weights . coeffs = 0 afterwards.
void subtract_mean(const FESpace& space, DenseVector& coeffs);
double weighted_mean(const FESpace& space, const DenseVector& coeffs);

// --- reference basis evaluation ------------------------------------------

/// Scalar basis on one cell at one barycentric point: P1 hat functions and,
/// for the Mini component space, the cubic bubble 27*l0*l1*l2.
struct ScalarBasis {
  int n = 0;
  std::array<double, 4> value{};
  std::array<Vec2, 4> grad{};
};
ScalarBasis p1_basis(const CellGeometry& g, const std::array<double, 3>& lam);
ScalarBasis mini_scalar_basis(const CellGeometry& g, const std::array<double, 3>& lam);

/// RT0 basis on one cell at a physical point: N_k = s_k (x - p_k)/(2|K|) with
/// s_k the incidence sign and p_k the vertex opposite facet k; div N_k = s_k/|K|.
struct RT0Basis {
  std::array<Vec2, 3> value{};
  std::array<double, 3> div{};
};
RT0Basis rt0_basis(const Mesh& mesh, int cell, const CellGeometry& g, const Vec2& x);

// --- discrete field evaluation -------------------------------------------

double eval_p1(const FESpace& s, const DenseVector& c, int cell, const std::array<double, 3>& lam);
Vec2 grad_p1(const FESpace& s, const DenseVector& c, int cell, const CellGeometry& g);
double eval_p0(const FESpace& s, const DenseVector& c, int cell);
Vec2 eval_mini(const FESpace& s, const DenseVector& c, int cell, const CellGeometry& g,
               const std::array<double, 3>& lam);
Eigen::Matrix2d grad_mini(const FESpace& s, const DenseVector& c, int cell, const CellGeometry& g,
                          const std::array<double, 3>& lam);
Vec2 eval_rt0(const FESpace& s, const DenseVector& c, int cell, const CellGeometry& g,
              const Vec2& x);
double div_rt0(const FESpace& s, const DenseVector& c, int cell, const CellGeometry& g);

/// Point evaluation with cell search; scalar spaces only (test helper).
double evaluate_scalar_field(const FESpace& s, const DenseVector& c, const Vec2& p);
/// Point evaluation for MiniVector / RT0 fields.
Vec2 evaluate_vector_field(const FESpace& s, const DenseVector& c, const Vec2& p);

}  // namespace chimhd

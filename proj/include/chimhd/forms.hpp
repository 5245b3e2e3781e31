#pragma once

#include <functional>

#include "chimhd/fespace.hpp"
#include "chimhd/linalg.hpp"

namespace chimhd {

// --- truncated double-well potential ---------------------------------------

/// Quartic well on [-1,1] continued quadratically, minima at +-1, |F''| <= 2.
double F_eval(double s);
/// f = F', continuous across +-1.
double f_eval(double s);

/// Clamped linear blend between the per-phase values: value(phi) =
/// ((1+clamp(phi))*v1 + (1-clamp(phi))*v2)/2, which realizes the two-sided
/// bounds min(v1,v2) <= value <= max(v1,v2).
double phase_blend(double phi, double v1, double v2);

/// Regularized Heaviside 1/(1+exp(-phi/eps)) used by the gravity forcing.
double heaviside_reg(double phi, double eps);

// --- coefficient fields -----------------------------------------------------

/// A scalar weight evaluated at quadrature points: a constant, an analytic
/// function of (position, time), or a P1 field composed with a pointwise map
/// (identity by default).
class Coefficient {
 public:
  static Coefficient constant(double c);
  static Coefficient analytic(std::function<double(const Vec2&, double)> fn, double time);
  static Coefficient p1_field(const FESpace& space, const DenseVector& coeffs);
  static Coefficient p1_mapped(const FESpace& space, const DenseVector& coeffs,
                               std::function<double(double)> map);

  double eval(int cell, const std::array<double, 3>& lam, const Vec2& x) const;
  bool is_constant() const { return tag_ == Tag::Constant; }
  double constant_value() const { return value_; }

 private:
  enum class Tag { Constant, Analytic, P1 };
  Tag tag_ = Tag::Constant;
  double value_ = 0.0;
  std::function<double(const Vec2&, double)> fn_;
  double time_ = 0.0;
  const FESpace* space_ = nullptr;
  const DenseVector* coeffs_ = nullptr;
  std::function<double(double)> map_;
};

Coefficient viscosity_coefficient(const FESpace& p1, const DenseVector& phi, double eta1,
                                  double eta2);
Coefficient conductivity_inv_coefficient(const FESpace& p1, const DenseVector& phi, double sigma1,
                                         double sigma2);

// --- bilinear forms ---------------------------------------------------------
// Every assembler adds scale * (form) into `out` at the given block offsets.

/// (c w, v) on P1 or P0.
void assemble_mass(const FESpace& s, const Coefficient& c, const QuadratureRule& q,
                   TripletList& out, int ro = 0, int co = 0, double scale = 1.0);

/// (c grad w, grad v) on P1.
void assemble_stiffness(const FESpace& s, const Coefficient& c, const QuadratureRule& q,
                        TripletList& out, int ro = 0, int co = 0, double scale = 1.0);

/// (c J, K) on RT0.
void assemble_rt0_mass(const FESpace& s, const Coefficient& c, const QuadratureRule& q,
                       TripletList& out, int ro = 0, int co = 0, double scale = 1.0);

/// Vector mass (c u, v) on the Mini space.
void assemble_mini_mass(const FESpace& s, const Coefficient& c, const QuadratureRule& q,
                        TripletList& out, int ro = 0, int co = 0, double scale = 1.0);

/// 2 (eta D(u), D(v)) on the Mini space.
void assemble_sym_grad(const FESpace& mini, const Coefficient& eta, const QuadratureRule& q,
                       TripletList& out, int ro = 0, int co = 0, double scale = 1.0);

/// Full-gradient Gram (grad u, grad v) on the Mini space (inf-sup diagnostics).
void assemble_grad_gram(const FESpace& mini, const QuadratureRule& q, TripletList& out, int ro = 0,
                        int co = 0, double scale = 1.0);

/// (q, div v): rows from the P1 pressure space, columns from the Mini space.
void assemble_div_velocity(const FESpace& mini, const FESpace& pressure, const QuadratureRule& q,
                           TripletList& out, int ro = 0, int co = 0, double scale = 1.0);

/// (theta, div K): rows from P0, columns from RT0. Exact (entries are the
/// cell/facet incidence signs, no quadrature).
void assemble_div_rt0(const FESpace& rt0, const FESpace& p0, TripletList& out, int ro = 0,
                      int co = 0, double scale = 1.0);

/// Skew form O(w; u, v) = ((w.grad u, v) - (w.grad v, u))/2 on the Mini space,
/// antisymmetrized per cell so the matrix is skew to the last bit.
void assemble_convection(const FESpace& mini, const DenseVector& w, const QuadratureRule& q,
                         TripletList& out, int ro = 0, int co = 0, double scale = 1.0);

/// (a x B, c) with B = (0,0,b): entry = int b (a2 c1 - a1 c2) for trial a and
/// test c; either operand may live in the Mini or RT0 space.
void assemble_cross_b(const FESpace& test, const FESpace& trial, const Coefficient& b,
                      const QuadratureRule& q, TripletList& out, int ro = 0, int co = 0,
                      double scale = 1.0);

/// tau (J x B, K x B) = tau (b^2 J, K): weighted RT0 mass.
void assemble_jb_stabilization(const FESpace& rt0, const Coefficient& b, double tau,
                               const QuadratureRule& q, TripletList& out, int ro = 0, int co = 0,
                               double scale = 1.0);

/// tau (phi grad mu, phi grad psi): stiffness weighted by phi^2 at quadrature
/// points.
void assemble_phase_grad_stabilization(const FESpace& p1, const DenseVector& phi, double tau,
                                       const QuadratureRule& q, TripletList& out, int ro = 0,
                                       int co = 0, double scale = 1.0);

// Convenience wrappers returning the finalized matrix (offset 0, scale 1).
SparseMatrix mass_matrix(const FESpace& s, const Coefficient& c, const QuadratureRule& q);
SparseMatrix stiffness_matrix(const FESpace& s, const Coefficient& c, const QuadratureRule& q);
SparseMatrix rt0_mass_matrix(const FESpace& s, const Coefficient& c, const QuadratureRule& q);
SparseMatrix mini_mass_matrix(const FESpace& s, const Coefficient& c, const QuadratureRule& q);
SparseMatrix sym_grad_matrix(const FESpace& mini, const Coefficient& eta, const QuadratureRule& q);
SparseMatrix div_coupling_velocity(const FESpace& mini, const FESpace& pressure,
                                   const QuadratureRule& q);
SparseMatrix div_coupling_rt0(const FESpace& rt0, const FESpace& p0);
SparseMatrix convection_matrix(const FESpace& mini, const DenseVector& w, const QuadratureRule& q);
SparseMatrix cross_b_coupling(const FESpace& test, const FESpace& trial, const Coefficient& b,
                              const QuadratureRule& q);
SparseMatrix jb_stabilization(const FESpace& rt0, const Coefficient& b, double tau,
                              const QuadratureRule& q);
SparseMatrix phase_grad_stabilization(const FESpace& p1, const DenseVector& phi, double tau,
                                      const QuadratureRule& q);

// --- load vectors -----------------------------------------------------------

/// (f, psi) for a scalar space.
DenseVector load_scalar(const FESpace& s, const ScalarFn& fn, double time,
                        const QuadratureRule& q);

/// (f, v) for the Mini or RT0 space.
DenseVector load_vector2(const FESpace& s, const VectorFn& fn, double time,
                         const QuadratureRule& q);

/// (phi u, grad psi): phi a P1 field, u a Mini field, psi in the P1 space.
DenseVector load_phi_u_grad(const FESpace& p1, const DenseVector& phi, const FESpace& mini,
                            const DenseVector& u, const QuadratureRule& q);

/// (f(phi), chi) with the double-well derivative evaluated at quadrature
/// points of the P1 field phi.
DenseVector load_f_potential(const FESpace& p1, const DenseVector& phi, const QuadratureRule& q);

/// (phi grad mu, v) for Mini test functions.
DenseVector load_phi_grad_mu(const FESpace& mini, const FESpace& p1, const DenseVector& phi,
                             const DenseVector& mu, const QuadratureRule& q);

/// (phi grad mu, K x B) for RT0 test functions.
DenseVector load_phi_grad_mu_cross_b(const FESpace& rt0, const FESpace& p1, const DenseVector& phi,
                                     const DenseVector& mu, const Coefficient& b,
                                     const QuadratureRule& q);

/// (g (H(phi)+1)/2, v): gravity body force with the regularized Heaviside.
DenseVector load_gravity(const FESpace& mini, const FESpace& p1, const DenseVector& phi,
                         const Vec2& g, double eps, const QuadratureRule& q);

/// Boundary load int_facets g(x, n, t) psi ds over the given facets (P1 test
/// space), with an npts-point Gauss rule per facet.
DenseVector load_boundary_scalar(const FESpace& p1,
                                 const std::function<double(const Vec2&, const Vec2&, double)>& g,
                                 double time, const std::vector<int>& facets, int npts = 4);

}  // namespace chimhd

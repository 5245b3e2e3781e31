#pragma once

#include <optional>
#include <string>

#include "chimhd/fespace.hpp"

namespace chimhd {

/// Analytic solution of a manufactured test, with the gradients needed to
/// build nonhomogeneous boundary data for the phase/potential equations.
struct ExactSolutionSet {
  VectorFn u;
  ScalarFn p;
  VectorFn J;
  ScalarFn phi_pot;
  ScalarFn phi;
  ScalarFn mu;
  VectorFn grad_phi;
  VectorFn grad_mu;
  ScalarFn div_J;  // analytic divergence of J (zero for the shipped cases)
};

/// Volume sources that make the exact solutions satisfy the model equations.
struct ForcingSet {
  VectorFn f_u;    // momentum equation
  VectorFn f_j;    // Ohm's law
  ScalarFn f_phi;  // phase transport
  ScalarFn f_mu;   // chemical potential relation
};

/// Which time level multiplies grad(mu^{n+1}) in the explicit coupling terms
/// of steps 2-3. The energy proof uses phi^n; phi^{n+1} is kept for study.
enum class CouplingIndex { PhiN, PhiNp1 };

struct SchemeParams {
  double tau = 0.01;
  double T = 1.0;
  double lambda = 1.0;    // surface tension (gamma)
  double epsilon = 1.0;   // interface thickness
  double mobility = 1.0;  // M
  double eta1 = 1.0, eta2 = 1.0;
  double sigma1 = 1.0, sigma2 = 1.0;
  double b = 0.0;  // out-of-plane magnetic field component
  Vec2 gravity = Vec2::Zero();
  bool use_gravity = false;
  CouplingIndex coupling = CouplingIndex::PhiN;

  int num_steps() const;  // N with N*tau = T; throws when T/tau is not integral
};

/// A fully specified simulation: domain, mesh resolution, parameters,
/// initial/boundary data and (for manufactured tests) exact solutions plus
/// residual-verified forcing.
struct ProblemCase {
  std::string name;
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  int nx = 16, ny = 16;
  SchemeParams params;
  ScalarFn phi0;
  VectorFn u0;
  VectorFn u_dirichlet;      // null: u = 0 on the boundary
  VectorFn j_flux_field;     // null: J.n = 0; else essential fluxes from this field
  bool phase_boundary_flux = false;  // step-1 boundary data from `exact`
  std::optional<ExactSolutionSet> exact;
  std::optional<ForcingSet> forcing;
};

}  // namespace chimhd

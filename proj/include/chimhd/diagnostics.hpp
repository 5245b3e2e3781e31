#pragma once

#include <string>

#include "chimhd/fespace.hpp"
#include "chimhd/problem.hpp"

namespace chimhd {

/// References to the discrete spaces and coefficient vectors of one state.
struct FieldSet {
  const FESpace* Vh = nullptr;
  const FESpace* Qh = nullptr;
  const FESpace* Dh = nullptr;
  const FESpace* Sh = nullptr;
  const FESpace* Xh = nullptr;
  const DenseVector* u = nullptr;
  const DenseVector* p = nullptr;
  const DenseVector* J = nullptr;
  const DenseVector* phi_pot = nullptr;
  const DenseVector* phi = nullptr;
  const DenseVector* mu = nullptr;
};

/// E = |u|^2/2 + (lambda eps/2)|grad phi|^2 + (lambda/eps) int F(phi).
double total_energy(const FESpace& Vh, const DenseVector& u, const FESpace& Xh,
                    const DenseVector& phi, const SchemeParams& p, const QuadratureRule& q);

/// P = M |grad mu|^2 + 2 |sqrt(eta(phi)) D(u)|^2 + |sqrt(1/sigma(phi)) J|^2.
double dissipation(const FESpace& Vh, const DenseVector& u, const FESpace& Xh,
                   const DenseVector& mu, const DenseVector& phi, const FESpace& Dh,
                   const DenseVector& J, const SchemeParams& p, const QuadratureRule& q);

/// Exact integral of a P1 field.
double mass(const FESpace& Xh, const DenseVector& phi);

/// sqrt(sum_K |K| (div J|_K)^2), exact for RT0.
double div_j_norm(const FESpace& Dh, const DenseVector& J);

/// Per-variable error norms at one time against analytic solutions. p and
/// phi_pot are shifted to zero mean (both computed and exact) before the norm.
struct ErrorReport {
  double u_l2 = 0, u_h1 = 0, p_l2 = 0, j_div = 0, phipot_l2 = 0;
  double phi_l2 = 0, phi_h1 = 0, mu_l2 = 0, mu_h1 = 0;
};

ErrorReport error_norms(const FieldSet& f, const ExactSolutionSet& exact, double time,
                        const QuadratureRule& q);

/// log2(e_coarse / e_fine) for a halved step.
double observed_order(double e_coarse, double e_fine);

enum class InfSupPair { VelocityPressure, CurrentPotential };

/// Smallest nonzero generalized singular value of the scaled div coupling on
/// a coarse mesh (dense eigensolve; guarded at 2000 DOFs).
double infsup_estimate(InfSupPair pair, const Mesh& mesh);

}  // namespace chimhd

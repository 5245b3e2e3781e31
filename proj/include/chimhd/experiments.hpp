#pragma once

#include <array>
#include <string>
#include <vector>

#include "chimhd/diagnostics.hpp"
#include "chimhd/problem.hpp"

namespace chimhd {

// Manufactured convergence tests on (0,1)^2 (fixed-mesh temporal set and the
// h=2*tau space-time set), with analytic forcing derived from the strong
// equations.
ProblemCase temporal_case();
ProblemCase spatial_case();

// Physical benchmarks.
ProblemCase square_bubble_case();
ProblemCase kissing_bubbles_case();
ProblemCase kelvin_helmholtz_case();
ProblemCase gravity_case(double gamma);

// Quiescent case: phi = +1 everywhere, no flow; every diagnostic stays zero.
ProblemCase zero_smoke_case();

/// Case lookup for the CLI ("temporal", "spatial", "square-bubble",
/// "kissing-bubbles", "kelvin-helmholtz", "gravity", "zero-smoke").
ProblemCase case_by_name(const std::string& name, double gravity_gamma = 0.01);

/// Independent strong-form residual check of a manufactured case: evaluates
/// the six model equations (with the case forcing) at random interior points
/// and times, using central finite differences for every derivative.
struct ForcingReport {
  std::array<double, 6> max_residual{};  // indexed by equation 1..6 (0-based)
  double worst = 0.0;
  int worst_equation = 0;  // 1-based equation number
  bool pass = false;
  std::string summary() const;
};

ForcingReport verify_forcing(const ProblemCase& pc, int npoints = 200, int ntimes = 20,
                             unsigned seed = 1234);

/// Name of equation k (1..6) as reported by verify_forcing.
std::string equation_name(int k);

// Convergence sweeps in the reference-table layout. levels <= 6 rows;
// entries run independently on up to `jobs` threads.
struct SweepRow {
  double tau = 0.0;
  double h = 0.0;
  ErrorReport err;
  double div_j_final = 0.0;
  double div_j_max = 0.0;  // over all steps of the entry
};

std::vector<SweepRow> run_temporal_sweep(int levels = 6, int jobs = 1);
std::vector<SweepRow> run_spatial_sweep(int levels = 6, int jobs = 1);

/// Condensed structural checks (matrix symmetry/skewness, algebraic
/// identities, quadrature exactness, mesh invariants) used by `chimhd check`.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<CheckResult> run_invariant_suite(unsigned seed = 1234);

}  // namespace chimhd

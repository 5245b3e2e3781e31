#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "chimhd/diagnostics.hpp"
#include "chimhd/forms.hpp"
#include "chimhd/linalg.hpp"
#include "chimhd/problem.hpp"

namespace chimhd {

/// Discrete fields at one time level.
struct State {
  int n = 0;
  double time = 0.0;
  DenseVector u;        // Mini velocity
  DenseVector p;        // P1 pressure, zero mean
  DenseVector J;        // RT0 current density
  DenseVector phi_pot;  // P0 electric potential, zero mean
  DenseVector phi;      // P1 phase field
  DenseVector mu;       // P1 chemical potential
};

/// One diagnostics record per time level.
struct DiagnosticsRow {
  int n = 0;
  double t = 0.0;
  double energy = 0.0;
  double dissipation = 0.0;
  double mass = 0.0;
  double div_j_norm = 0.0;
  double res_ch = 0.0, res_j = 0.0, res_ns = 0.0;
};

/// The decoupled three-step integrator. Spaces and every matrix that does not
/// depend on the evolving fields are assembled once; the step-2 factorization
/// is reused across steps when the conductivity is phase-independent.
class Stepper {
 public:
  explicit Stepper(const ProblemCase& pc);
  Stepper(const Stepper&) = delete;             // spaces point into mesh_
  Stepper& operator=(const Stepper&) = delete;

  State initial_state() const;

  /// Executes steps 1-3 and replaces the state by the n+1 level.
  DiagnosticsRow advance(State& state);

  /// Diagnostics of a state as-is (used for the initial row).
  DiagnosticsRow diagnostics(const State& state) const;

  const Mesh& mesh() const { return mesh_; }
  const FESpace& velocity_space() const { return Vh_; }
  const FESpace& pressure_space() const { return Qh_; }
  const FESpace& current_space() const { return Dh_; }
  const FESpace& potential_space() const { return Sh_; }
  const FESpace& phase_space() const { return Xh_; }
  const QuadratureRule& quadrature() const { return quad_; }
  const ProblemCase& problem() const { return case_; }

  // Individual steps, exposed for targeted tests.
  void step_cahn_hilliard(const State& state, DenseVector& phi_next, DenseVector& mu_next,
                          double& residual);
  void step_current(const State& state, const DenseVector& phi_next, const DenseVector& mu_next,
                    DenseVector& j_next, DenseVector& phi_pot_next, double& residual);
  void step_navier_stokes(const State& state, const DenseVector& phi_next,
                          const DenseVector& mu_next, const DenseVector& j_next,
                          DenseVector& u_next, DenseVector& p_next, double& residual);

 private:
  ProblemCase case_;
  SchemeParams p_;
  Mesh mesh_;
  FESpace Vh_, Qh_, Dh_, Sh_, Xh_;
  QuadratureRule quad_;
  Coefficient b_;
  SparseMatrix Mp_, Kp_;    // P1 mass / stiffness
  SparseMatrix Mu_;         // Mini vector mass
  SparseMatrix G_;          // (q, div v)
  SparseMatrix D_;          // (theta, div K)
  SparseMatrix JB_;         // (J x B, K x B), unscaled by tau
  SparseMatrix XBru_;       // (a x B, K): RT0 test, Mini trial
  SparseMatrix XBur_;       // (J x B, v): Mini test, RT0 trial (= -XBru^T)
  std::vector<int> bdry_facets_;
  std::vector<int> bdry_vertices_;
  std::vector<int> ess_u_dofs_;
  std::unique_ptr<DirectSolver> solver2_;  // cached when sigma1 == sigma2
};

/// View of one state's spaces and coefficient vectors for diagnostics.
FieldSet field_set(const Stepper& stepper, const State& state);

using RowCallback = std::function<void(const DiagnosticsRow&)>;
using SnapshotCallback = std::function<void(const State&)>;

/// Runs the full time loop; emits the initial row, then one row per step.
/// Callbacks fire as rows/states are produced, so partial logs survive a
/// failed solve (the exception propagates afterwards).
std::vector<DiagnosticsRow> run(Stepper& stepper, State& state, const RowCallback& on_row = {},
                                const SnapshotCallback& on_state = {});

}  // namespace chimhd

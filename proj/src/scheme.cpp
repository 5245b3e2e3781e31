#include "chimhd/scheme.hpp"

#include <cmath>
#include <stdexcept>

#include "chimhd/diagnostics.hpp"

namespace chimhd {

int SchemeParams::num_steps() const {
  if (!(tau > 0.0)) throw std::invalid_argument("SchemeParams: tau must be positive");
  const int n = static_cast<int>(std::llround(T / tau));
  if (n < 1 || std::abs(n * tau - T) > 1e-12 * std::max(1.0, std::abs(T)))
    throw std::invalid_argument("SchemeParams: T is not an integer multiple of tau");
  return n;
}

Stepper::Stepper(const ProblemCase& pc)
    : case_(pc),
      p_(pc.params),
      mesh_(structured_rect_mesh(pc.nx, pc.ny, {pc.x0, pc.x1}, {pc.y0, pc.y1})),
      Vh_(build_space(mesh_, SpaceKind::MiniVector)),
      Qh_(build_space(mesh_, SpaceKind::P1Scalar, MeanConstraint::ZeroMean)),
      Dh_(build_space(mesh_, SpaceKind::RT0)),
      Sh_(build_space(mesh_, SpaceKind::P0Scalar, MeanConstraint::ZeroMean)),
      Xh_(build_space(mesh_, SpaceKind::P1Scalar)),
      quad_(default_volume_rule()),
      b_(Coefficient::constant(pc.params.b)) {
  p_.num_steps();  // validates tau/T

  const Coefficient one = Coefficient::constant(1.0);
  Mp_ = mass_matrix(Xh_, one, quad_);
  Kp_ = stiffness_matrix(Xh_, one, quad_);
  Mu_ = mini_mass_matrix(Vh_, one, quad_);
  G_ = div_coupling_velocity(Vh_, Qh_, quad_);
  D_ = div_coupling_rt0(Dh_, Sh_);
  JB_ = jb_stabilization(Dh_, b_, 1.0, quad_);
  XBru_ = cross_b_coupling(Dh_, Vh_, b_, quad_);
  XBur_ = SparseMatrix((-XBru_).transpose());  // (a x B, c) = -(c x B, a)

  bdry_facets_ = boundary_facets(mesh_, "all");
  bdry_vertices_ = boundary_vertices(mesh_);
  for (int v : bdry_vertices_) {
    ess_u_dofs_.push_back(2 * v);
    ess_u_dofs_.push_back(2 * v + 1);
  }
}

State Stepper::initial_state() const {
  State s;
  s.n = 0;
  s.time = 0.0;
  s.phi = case_.phi0 ? interpolate(Xh_, case_.phi0, 0.0) : DenseVector::Zero(Xh_.ndofs);
  s.u = case_.u0 ? interpolate(Vh_, case_.u0, 0.0) : DenseVector::Zero(Vh_.ndofs);
  s.p = DenseVector::Zero(Qh_.ndofs);
  s.J = DenseVector::Zero(Dh_.ndofs);
  s.phi_pot = DenseVector::Zero(Sh_.ndofs);
  s.mu = DenseVector::Zero(Xh_.ndofs);
  return s;
}

void Stepper::step_cahn_hilliard(const State& s, DenseVector& phi_next, DenseVector& mu_next,
                                 double& residual) {
  const int V = Xh_.ndofs;
  const double tau = p_.tau;
  const double t1 = (s.n + 1) * tau;

  TripletList A(2 * V, 2 * V);
  append_block(A, Mp_, 0, 0, 1.0 / tau);
  append_block(A, Kp_, 0, V, p_.mobility);
  assemble_phase_grad_stabilization(Xh_, s.phi, tau, quad_, A, 0, V, 1.0);
  append_block(A, Kp_, V, 0, p_.lambda * p_.epsilon);
  append_block(A, Mp_, V, 0, p_.lambda / p_.epsilon);
  append_block(A, Mp_, V, V, -1.0);

  DenseVector rhs(2 * V);
  rhs.head(V) = (1.0 / tau) * (Mp_ * s.phi) + load_phi_u_grad(Xh_, s.phi, Vh_, s.u, quad_);
  rhs.tail(V) =
      (p_.lambda / p_.epsilon) * (Mp_ * s.phi - load_f_potential(Xh_, s.phi, quad_));

  // Volume sources are sampled at the step start, matching the explicit
  // treatment of every coupling datum; boundary values of the unknowns are
  // imposed at their own level t_{n+1}.
  if (case_.forcing) {
    rhs.head(V) += load_scalar(Xh_, case_.forcing->f_phi, s.time, quad_);
    rhs.tail(V) += load_scalar(Xh_, case_.forcing->f_mu, s.time, quad_);
  }
  if (case_.phase_boundary_flux) {
    const ExactSolutionSet& ex = *case_.exact;
    const double M = p_.mobility;
    auto g1 = [&](const Vec2& x, const Vec2& n, double t) {
      return M * ex.grad_mu(x, t).dot(n) - ex.phi(x, t) * ex.u(x, t).dot(n);
    };
    auto g2 = [&](const Vec2& x, const Vec2& n, double t) {
      return p_.lambda * p_.epsilon * ex.grad_phi(x, t).dot(n);
    };
    rhs.head(V) += load_boundary_scalar(Xh_, g1, t1, bdry_facets_);
    rhs.tail(V) += load_boundary_scalar(Xh_, g2, t1, bdry_facets_);
  }

  DirectSolver solver(A, {}, {}, "cahn-hilliard step");
  const SolveResult res = solver.solve(rhs, DenseVector());
  phi_next = res.x.head(V);
  mu_next = res.x.tail(V);
  residual = res.relative_residual;
}

void Stepper::step_current(const State& s, const DenseVector& phi_next, const DenseVector& mu_next,
                           DenseVector& j_next, DenseVector& phi_pot_next, double& residual) {
  const int E = Dh_.ndofs;
  const int T = Sh_.ndofs;
  const double tau = p_.tau;
  const double t1 = (s.n + 1) * tau;
  const bool sigma_constant = (p_.sigma1 == p_.sigma2);

  if (!solver2_ || !sigma_constant) {
    TripletList A(E + T, E + T);
    if (sigma_constant) {
      append_block(A, rt0_mass_matrix(Dh_, Coefficient::constant(1.0 / p_.sigma1), quad_), 0, 0,
                   1.0);
    } else {
      assemble_rt0_mass(Dh_, conductivity_inv_coefficient(Xh_, phi_next, p_.sigma1, p_.sigma2),
                        quad_, A, 0, 0, 1.0);
    }
    append_block(A, JB_, 0, 0, tau);
    append_block_transposed(A, D_, 0, E, -1.0);
    append_block(A, D_, E, 0, -1.0);
    solver2_ = std::make_unique<DirectSolver>(A, bdry_facets_,
                                              std::vector<MeanConstraintSpec>{{E, Sh_.mean_weights}},
                                              "current step");
  }

  const DenseVector& phi_star = (p_.coupling == CouplingIndex::PhiN) ? s.phi : phi_next;
  DenseVector rhs = DenseVector::Zero(E + T);
  rhs.head(E) = XBru_ * s.u +
                tau * load_phi_grad_mu_cross_b(Dh_, Xh_, phi_star, mu_next, b_, quad_);
  if (case_.forcing) rhs.head(E) += load_vector2(Dh_, case_.forcing->f_j, s.time, quad_);

  DenseVector flux = DenseVector::Zero(static_cast<Eigen::Index>(bdry_facets_.size()));
  if (case_.j_flux_field)
    for (size_t i = 0; i < bdry_facets_.size(); ++i)
      flux[static_cast<Eigen::Index>(i)] =
          facet_flux_dof(mesh_, bdry_facets_[i], case_.j_flux_field, t1, 4);

  const SolveResult res = solver2_->solve(rhs, flux);
  j_next = res.x.head(E);
  phi_pot_next = res.x.tail(T);
  residual = res.relative_residual;
}

void Stepper::step_navier_stokes(const State& s, const DenseVector& phi_next,
                                 const DenseVector& mu_next, const DenseVector& j_next,
                                 DenseVector& u_next, DenseVector& p_next, double& residual) {
  const int nu = Vh_.ndofs;
  const int np = Qh_.ndofs;
  const double tau = p_.tau;
  const double t1 = (s.n + 1) * tau;

  TripletList A(nu + np, nu + np);
  append_block(A, Mu_, 0, 0, 1.0 / tau);
  assemble_convection(Vh_, s.u, quad_, A, 0, 0, 1.0);
  if (p_.eta1 == p_.eta2) {
    assemble_sym_grad(Vh_, Coefficient::constant(p_.eta1), quad_, A, 0, 0, 1.0);
  } else {
    assemble_sym_grad(Vh_, viscosity_coefficient(Xh_, phi_next, p_.eta1, p_.eta2), quad_, A, 0, 0,
                      1.0);
  }
  append_block_transposed(A, G_, 0, nu, -1.0);
  append_block(A, G_, nu, 0, -1.0);

  const DenseVector& phi_star = (p_.coupling == CouplingIndex::PhiN) ? s.phi : phi_next;
  DenseVector rhs = DenseVector::Zero(nu + np);
  rhs.head(nu) = (1.0 / tau) * (Mu_ * s.u) + XBur_ * j_next -
                 load_phi_grad_mu(Vh_, Xh_, phi_star, mu_next, quad_);
  if (p_.use_gravity)
    rhs.head(nu) += load_gravity(Vh_, Xh_, phi_next, p_.gravity, p_.epsilon, quad_);
  if (case_.forcing) rhs.head(nu) += load_vector2(Vh_, case_.forcing->f_u, s.time, quad_);

  DenseVector ess(static_cast<Eigen::Index>(ess_u_dofs_.size()));
  ess.setZero();
  if (case_.u_dirichlet)
    for (size_t i = 0; i < bdry_vertices_.size(); ++i) {
      const Vec2 val = case_.u_dirichlet(mesh_.vertices[bdry_vertices_[i]], t1);
      ess[static_cast<Eigen::Index>(2 * i)] = val.x();
      ess[static_cast<Eigen::Index>(2 * i + 1)] = val.y();
    }

  DirectSolver solver(A, ess_u_dofs_, {{nu, Qh_.mean_weights}}, "navier-stokes step");
  const SolveResult res = solver.solve(rhs, ess);
  u_next = res.x.head(nu);
  p_next = res.x.tail(np);
  residual = res.relative_residual;
}

DiagnosticsRow Stepper::diagnostics(const State& s) const {
  DiagnosticsRow row;
  row.n = s.n;
  row.t = s.time;
  row.energy = total_energy(Vh_, s.u, Xh_, s.phi, p_, quad_);
  row.dissipation = dissipation(Vh_, s.u, Xh_, s.mu, s.phi, Dh_, s.J, p_, quad_);
  row.mass = mass(Xh_, s.phi);
  row.div_j_norm = div_j_norm(Dh_, s.J);
  return row;
}

DiagnosticsRow Stepper::advance(State& s) {
  DenseVector phi_next, mu_next, j_next, phi_pot_next, u_next, p_next;
  double res_ch = 0.0, res_j = 0.0, res_ns = 0.0;
  step_cahn_hilliard(s, phi_next, mu_next, res_ch);
  step_current(s, phi_next, mu_next, j_next, phi_pot_next, res_j);
  step_navier_stokes(s, phi_next, mu_next, j_next, u_next, p_next, res_ns);

  s.n += 1;
  s.time = s.n * p_.tau;
  s.phi = std::move(phi_next);
  s.mu = std::move(mu_next);
  s.J = std::move(j_next);
  s.phi_pot = std::move(phi_pot_next);
  s.u = std::move(u_next);
  s.p = std::move(p_next);

  DiagnosticsRow row = diagnostics(s);
  row.res_ch = res_ch;
  row.res_j = res_j;
  row.res_ns = res_ns;
  return row;
}

FieldSet field_set(const Stepper& st, const State& s) {
  return FieldSet{&st.velocity_space(), &st.pressure_space(), &st.current_space(),
                  &st.potential_space(), &st.phase_space(),   &s.u,
                  &s.p,                  &s.J,                &s.phi_pot,
                  &s.phi,                &s.mu};
}

std::vector<DiagnosticsRow> run(Stepper& stepper, State& state, const RowCallback& on_row,
                                const SnapshotCallback& on_state) {
  const int N = stepper.problem().params.num_steps();
  std::vector<DiagnosticsRow> rows;
  rows.reserve(N + 1);
  rows.push_back(stepper.diagnostics(state));
  if (on_row) on_row(rows.back());
  if (on_state) on_state(state);
  for (int n = 0; n < N; ++n) {
    rows.push_back(stepper.advance(state));
    if (on_row) on_row(rows.back());
    if (on_state) on_state(state);
  }
  return rows;
}

}  // namespace chimhd

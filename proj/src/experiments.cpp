#include "chimhd/experiments.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "chimhd/forms.hpp"
#include "chimhd/scheme.hpp"

namespace chimhd {

namespace {

SchemeParams unit_params() {
  SchemeParams p;
  p.tau = 0.00625;
  p.T = 1.0;
  p.lambda = p.epsilon = p.mobility = 1.0;
  p.eta1 = p.eta2 = p.sigma1 = p.sigma2 = 1.0;
  p.b = 1.0;
  return p;
}

}  // namespace

ProblemCase temporal_case() {
  ProblemCase pc;
  pc.name = "temporal";
  pc.nx = pc.ny = 10;
  pc.params = unit_params();

  ExactSolutionSet ex;
  ex.u = [](const Vec2& x, double t) { return Vec2(x.y() * std::exp(-t), x.x() * std::cos(t)); };
  ex.p = [](const Vec2&, double t) { return std::sin(t); };
  ex.J = [](const Vec2&, double t) { return Vec2(std::sin(t), std::cos(t)); };
  ex.phi_pot = [](const Vec2&, double) { return 1.0; };
  ex.phi = [](const Vec2& x, double t) { return (x.x() + x.y()) * std::exp(-t); };
  ex.mu = [](const Vec2& x, double t) { return x.x() * std::cos(t); };
  ex.grad_phi = [](const Vec2&, double t) { return Vec2(std::exp(-t), std::exp(-t)); };
  ex.grad_mu = [](const Vec2&, double t) { return Vec2(std::cos(t), 0.0); };
  ex.div_J = [](const Vec2&, double) { return 0.0; };

  ForcingSet fs;
  fs.f_u = [](const Vec2& x, double t) {
    const double et = std::exp(-t), ct = std::cos(t), st = std::sin(t);
    return Vec2(-x.y() * et + x.x() * ct * et + (x.x() + x.y()) * et * ct - ct,
                -x.x() * st + x.y() * et * ct + st);
  };
  fs.f_j = [](const Vec2& x, double t) {
    const double et = std::exp(-t), ct = std::cos(t), st = std::sin(t);
    return Vec2(st - x.x() * ct, ct + x.y() * et);
  };
  fs.f_phi = [](const Vec2& x, double t) {
    const double et = std::exp(-t), ct = std::cos(t);
    return -(x.x() + x.y()) * et + x.y() * et * et + x.x() * et * ct;
  };
  fs.f_mu = [](const Vec2& x, double t) {
    return f_eval((x.x() + x.y()) * std::exp(-t)) - x.x() * std::cos(t);
  };

  pc.exact = ex;
  pc.forcing = fs;
  pc.phi0 = [ex](const Vec2& x, double) { return ex.phi(x, 0.0); };
  pc.u0 = [ex](const Vec2& x, double) { return ex.u(x, 0.0); };
  pc.u_dirichlet = ex.u;
  pc.j_flux_field = ex.J;
  pc.phase_boundary_flux = true;
  return pc;
}

ProblemCase spatial_case() {
  ProblemCase pc;
  pc.name = "spatial";
  pc.nx = pc.ny = 64;
  pc.params = unit_params();
  pc.params.tau = 1.0 / 128.0;

  ExactSolutionSet ex;
  ex.u = [](const Vec2& x, double t) {
    return Vec2(std::sin(x.y()) * std::exp(-t), x.x() * x.x() * std::cos(t));
  };
  ex.p = [](const Vec2& x, double t) { return x.y() * std::sin(t); };
  ex.J = [](const Vec2& x, double t) {
    return Vec2(x.y() * x.y() * std::sin(t), std::sin(x.x()) * std::cos(t));
  };
  ex.phi_pot = [](const Vec2& x, double t) { return x.x() * std::exp(-t); };
  ex.phi = [](const Vec2& x, double t) { return std::sin(x.x()) * std::exp(-t); };
  ex.mu = [](const Vec2& x, double t) { return std::cos(x.y()) * std::cos(t); };
  ex.grad_phi = [](const Vec2& x, double t) { return Vec2(std::cos(x.x()) * std::exp(-t), 0.0); };
  ex.grad_mu = [](const Vec2& x, double t) { return Vec2(0.0, -std::sin(x.y()) * std::cos(t)); };
  ex.div_J = [](const Vec2&, double) { return 0.0; };

  ForcingSet fs;
  fs.f_u = [](const Vec2& x, double t) {
    const double et = std::exp(-t), ct = std::cos(t), st = std::sin(t);
    const double xx = x.x(), yy = x.y();
    return Vec2(xx * xx * ct * std::cos(yy) * et - std::sin(xx) * ct,
                -xx * xx * st + 2.0 * xx * std::sin(yy) * et * ct - 2.0 * ct + st -
                    std::sin(xx) * std::sin(yy) * et * ct + yy * yy * st);
  };
  fs.f_j = [](const Vec2& x, double t) {
    const double et = std::exp(-t), ct = std::cos(t), st = std::sin(t);
    return Vec2(x.y() * x.y() * st + et - x.x() * x.x() * ct,
                std::sin(x.x()) * ct + std::sin(x.y()) * et);
  };
  fs.f_phi = [](const Vec2& x, double t) {
    const double et = std::exp(-t), ct = std::cos(t);
    return -std::sin(x.x()) * et + std::cos(x.x()) * std::sin(x.y()) * et * et +
           std::cos(x.y()) * ct;
  };
  fs.f_mu = [](const Vec2& x, double t) {
    const double et = std::exp(-t);
    return std::sin(x.x()) * et + f_eval(std::sin(x.x()) * et) -
           std::cos(x.y()) * std::cos(t);
  };

  pc.exact = ex;
  pc.forcing = fs;
  pc.phi0 = [ex](const Vec2& x, double) { return ex.phi(x, 0.0); };
  pc.u0 = [ex](const Vec2& x, double) { return ex.u(x, 0.0); };
  pc.u_dirichlet = ex.u;
  pc.j_flux_field = ex.J;
  pc.phase_boundary_flux = true;
  return pc;
}

ProblemCase square_bubble_case() {
  ProblemCase pc;
  pc.name = "square-bubble";
  pc.nx = pc.ny = 64;
  pc.params.tau = 0.01;
  pc.params.T = 1.0;
  pc.params.eta1 = pc.params.eta2 = 1.0;
  pc.params.sigma1 = pc.params.sigma2 = 1.0;
  pc.params.epsilon = 0.01;
  pc.params.lambda = 0.1;
  pc.params.mobility = 0.1;
  pc.params.b = 1.0;
  const double eps = pc.params.epsilon;
  pc.phi0 = [eps](const Vec2& x, double) {
    const double d = std::abs(x.x() + x.y() - 1.0) + std::abs(x.x() - x.y()) - 0.4;
    return std::tanh(d / (std::sqrt(2.0) * eps));
  };
  return pc;
}

ProblemCase kissing_bubbles_case() {
  ProblemCase pc = square_bubble_case();
  pc.name = "kissing-bubbles";
  pc.params.T = 15.0;
  const double eps = pc.params.epsilon;
  pc.phi0 = [eps](const Vec2& x, double) {
    const Vec2 o1(0.3, 0.5), o2(0.7, 0.5);
    const double r = 0.2, s = std::sqrt(2.0) * eps;
    return 1.0 - std::tanh(((x - o1).norm() - r) / s) - std::tanh(((x - o2).norm() - r) / s);
  };
  return pc;
}

ProblemCase kelvin_helmholtz_case() {
  ProblemCase pc;
  pc.name = "kelvin-helmholtz";
  pc.x1 = 0.5;
  pc.nx = 64;
  pc.ny = 128;
  pc.params.tau = 0.01;
  pc.params.T = 2.0;
  pc.params.eta1 = pc.params.eta2 = 0.0002;
  pc.params.sigma1 = pc.params.sigma2 = 1.0;
  pc.params.epsilon = 0.01;
  pc.params.mobility = 0.01;
  pc.params.lambda = 0.001;
  pc.params.b = 1.0;
  const double eps = pc.params.epsilon;
  auto yc = [](double x) { return 0.5 + 0.005 * std::sin(4.0 * M_PI * x); };
  pc.phi0 = [eps, yc](const Vec2& x, double) {
    return std::tanh(6.0 * (x.y() - yc(x.x())) / (std::sqrt(2.0) * eps));
  };
  auto shear = [yc](const Vec2& x, double) {
    return Vec2(std::tanh(50.0 * (x.y() - yc(x.x()))), 0.0);
  };
  pc.u0 = shear;
  pc.u_dirichlet = shear;  // +-(1,0) at the walls, the shear profile laterally
  return pc;
}

ProblemCase gravity_case(double gamma) {
  ProblemCase pc;
  pc.name = "gravity";
  pc.nx = pc.ny = 100;
  pc.params.tau = 0.005;
  pc.params.T = 2.5;
  pc.params.eta1 = pc.params.eta2 = 0.01;
  pc.params.sigma1 = pc.params.sigma2 = 100.0;
  pc.params.epsilon = 0.01;
  pc.params.mobility = 0.001;
  pc.params.lambda = gamma;
  pc.params.b = 1.0;
  pc.params.gravity = Vec2(0.0, 10.0);
  pc.params.use_gravity = true;
  const double eps = pc.params.epsilon;
  pc.phi0 = [eps](const Vec2& x, double) {
    const Vec2 o(0.5, 0.8);
    return -std::tanh(((x - o).norm() - 0.1) / (std::sqrt(2.0) * eps));
  };
  return pc;
}

ProblemCase zero_smoke_case() {
  ProblemCase pc;
  pc.name = "zero-smoke";
  pc.nx = pc.ny = 8;
  pc.params = unit_params();
  pc.params.tau = 0.1;
  pc.params.T = 0.3;
  pc.phi0 = [](const Vec2&, double) { return 1.0; };
  return pc;
}

ProblemCase case_by_name(const std::string& name, double gravity_gamma) {
  if (name == "temporal") return temporal_case();
  if (name == "spatial") return spatial_case();
  if (name == "square-bubble") return square_bubble_case();
  if (name == "kissing-bubbles") return kissing_bubbles_case();
  if (name == "kelvin-helmholtz") return kelvin_helmholtz_case();
  if (name == "gravity") return gravity_case(gravity_gamma);
  if (name == "zero-smoke") return zero_smoke_case();
  throw std::invalid_argument("unknown case: " + name);
}

std::string equation_name(int k) {
  switch (k) {
    case 1: return "momentum (1)";
    case 2: return "velocity divergence (2)";
    case 3: return "Ohm's law (3)";
    case 4: return "current divergence (4)";
    case 5: return "phase transport (5)";
    case 6: return "chemical potential (6)";
  }
  return "unknown";
}

std::string ForcingReport::summary() const {
  std::ostringstream os;
  os << (pass ? "pass" : "FAIL") << "; worst residual " << worst << " in equation "
     << equation_name(worst_equation);
  return os.str();
}

ForcingReport verify_forcing(const ProblemCase& pc, int npoints, int ntimes, unsigned seed) {
  if (!pc.exact || !pc.forcing)
    throw std::invalid_argument("verify_forcing: case has no exact solution / forcing");
  const ExactSolutionSet& ex = *pc.exact;
  const ForcingSet& fs = *pc.forcing;
  const SchemeParams& p = pc.params;
  const double d = 1e-5;
  const double d2 = 3e-5;  // second differences: keeps roundoff ~ eps/d2^2 well under 1e-5

  auto ddt_vec = [&](const VectorFn& f, const Vec2& x, double t) {
    return ((f(x, t + d) - f(x, t - d)) / (2 * d)).eval();
  };
  auto ddt = [&](const ScalarFn& f, const Vec2& x, double t) {
    return (f(x, t + d) - f(x, t - d)) / (2 * d);
  };
  auto grad = [&](const ScalarFn& f, const Vec2& x, double t) {
    return Vec2((f(x + Vec2(d, 0), t) - f(x - Vec2(d, 0), t)) / (2 * d),
                (f(x + Vec2(0, d), t) - f(x - Vec2(0, d), t)) / (2 * d));
  };
  auto div_vec = [&](const VectorFn& f, const Vec2& x, double t) {
    return (f(x + Vec2(d, 0), t).x() - f(x - Vec2(d, 0), t).x() + f(x + Vec2(0, d), t).y() -
            f(x - Vec2(0, d), t).y()) /
           (2 * d);
  };
  auto laplace = [&](const ScalarFn& f, const Vec2& x, double t) {
    return (f(x + Vec2(d2, 0), t) + f(x - Vec2(d2, 0), t) + f(x + Vec2(0, d2), t) +
            f(x - Vec2(0, d2), t) - 4.0 * f(x, t)) /
           (d2 * d2);
  };
  auto jacobian = [&](const VectorFn& f, const Vec2& x, double t) {
    Eigen::Matrix2d m;
    m.col(0) = (f(x + Vec2(d, 0), t) - f(x - Vec2(d, 0), t)) / (2 * d);
    m.col(1) = (f(x + Vec2(0, d), t) - f(x - Vec2(0, d), t)) / (2 * d);
    return m;
  };
  // 2 eta(phi) D(u) as a function of position, for the nested divergence.
  auto stress = [&](const Vec2& x, double t) {
    const Eigen::Matrix2d gu = jacobian(ex.u, x, t);
    const double eta = phase_blend(ex.phi(x, t), p.eta1, p.eta2);
    return (eta * (gu + gu.transpose())).eval();
  };
  auto div_stress = [&](const Vec2& x, double t) {
    const Eigen::Matrix2d tp = stress(x + Vec2(d, 0), t), tm = stress(x - Vec2(d, 0), t);
    const Eigen::Matrix2d sp = stress(x + Vec2(0, d), t), sm = stress(x - Vec2(0, d), t);
    return Vec2((tp(0, 0) - tm(0, 0) + sp(0, 1) - sm(0, 1)) / (2 * d),
                (tp(1, 0) - tm(1, 0) + sp(1, 1) - sm(1, 1)) / (2 * d));
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(pc.x0 + 1e-3, pc.x1 - 1e-3);
  std::uniform_real_distribution<double> uy(pc.y0 + 1e-3, pc.y1 - 1e-3);
  std::uniform_real_distribution<double> ut(1e-3, p.T - 1e-3);

  std::vector<Vec2> pts(npoints);
  for (auto& q : pts) q = Vec2(ux(rng), uy(rng));
  std::vector<double> times(ntimes);
  for (auto& t : times) t = ut(rng);

  ForcingReport rep;
  for (double t : times)
    for (const Vec2& x : pts) {
      const Vec2 u = ex.u(x, t);
      const Vec2 J = ex.J(x, t);
      const double b = p.b;
      const Vec2 jxb(J.y() * b, -J.x() * b);
      const Vec2 uxb(u.y() * b, -u.x() * b);
      const Eigen::Matrix2d gu = jacobian(ex.u, x, t);

      const Vec2 r1 = ddt_vec(ex.u, x, t) + gu * u - div_stress(x, t) + grad(ex.p, x, t) +
                      ex.phi(x, t) * grad(ex.mu, x, t) - jxb - fs.f_u(x, t);
      const double r2 = div_vec(ex.u, x, t);
      const Vec2 r3 = J / phase_blend(ex.phi(x, t), p.sigma1, p.sigma2) +
                      grad(ex.phi_pot, x, t) - uxb - fs.f_j(x, t);
      const double r4 = div_vec(ex.J, x, t) - ex.div_J(x, t);
      const double r5 = ddt(ex.phi, x, t) +
                        div_vec([&](const Vec2& y, double s) { return (ex.phi(y, s) * ex.u(y, s)).eval(); },
                                x, t) -
                        p.mobility * laplace(ex.mu, x, t) - fs.f_phi(x, t);
      const double r6 = -p.lambda * p.epsilon * laplace(ex.phi, x, t) +
                        (p.lambda / p.epsilon) * f_eval(ex.phi(x, t)) - ex.mu(x, t) -
                        fs.f_mu(x, t);

      const double rs[6] = {r1.cwiseAbs().maxCoeff(), std::abs(r2), r3.cwiseAbs().maxCoeff(),
                            std::abs(r4), std::abs(r5), std::abs(r6)};
      for (int k = 0; k < 6; ++k) rep.max_residual[k] = std::max(rep.max_residual[k], rs[k]);
    }

  rep.worst = 0.0;
  for (int k = 0; k < 6; ++k)
    if (rep.max_residual[k] > rep.worst) {
      rep.worst = rep.max_residual[k];
      rep.worst_equation = k + 1;
    }
  rep.pass = rep.worst <= 1e-5;
  return rep;
}

namespace {

SweepRow run_entry(ProblemCase pc) {
  Stepper stepper(pc);
  State state = stepper.initial_state();
  const auto rows = run(stepper, state);
  const FieldSet f = field_set(stepper, state);
  SweepRow row;
  row.tau = pc.params.tau;
  row.h = (pc.x1 - pc.x0) / pc.nx;
  row.err = error_norms(f, *pc.exact, state.time, stepper.quadrature());
  row.div_j_final = rows.back().div_j_norm;
  for (const auto& r : rows) row.div_j_max = std::max(row.div_j_max, r.div_j_norm);
  return row;
}

std::vector<SweepRow> run_sweep(const std::vector<ProblemCase>& cases, int jobs) {
  std::vector<SweepRow> out(cases.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < cases.size(); ++i) out[i] = run_entry(cases[i]);
    return out;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j)
    pool.emplace_back([&]() {
      for (size_t i = next.fetch_add(1); i < cases.size(); i = next.fetch_add(1))
        out[i] = run_entry(cases[i]);
    });
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace

std::vector<SweepRow> run_temporal_sweep(int levels, int jobs) {
  std::vector<ProblemCase> cases;
  for (int k = 0; k < levels; ++k) {
    ProblemCase pc = temporal_case();
    pc.params.tau = 0.2 / std::pow(2.0, k);
    cases.push_back(pc);
  }
  return run_sweep(cases, jobs);
}

std::vector<SweepRow> run_spatial_sweep(int levels, int jobs) {
  std::vector<ProblemCase> cases;
  for (int k = 0; k < levels; ++k) {
    ProblemCase pc = spatial_case();
    pc.params.tau = 0.25 / std::pow(2.0, k);
    pc.nx = pc.ny = 2 << k;  // h = 2 tau
    cases.push_back(pc);
  }
  return run_sweep(cases, jobs);
}

std::vector<CheckResult> run_invariant_suite(unsigned seed) {
  std::vector<CheckResult> out;
  auto check = [&out](const std::string& name, bool pass, const std::string& detail = "") {
    out.push_back({name, pass, detail});
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  // Mesh structure.
  const Mesh mesh = structured_rect_mesh(8, 8, {0.0, 1.0}, {0.0, 1.0});
  try {
    validate(mesh);
    check("mesh invariants (8x8)", true);
  } catch (const std::exception& e) {
    check("mesh invariants (8x8)", false, e.what());
  }
  check("mesh size h_max = sqrt(2)/8",
        std::abs(mesh_size(mesh).h_max - std::sqrt(2.0) / 8.0) < 1e-14);

  // Quadrature exactness: l1^3 l2^3 integrates to 3!3!/8! on the reference cell.
  {
    const QuadratureRule q = default_volume_rule();
    double val = 0.0;
    for (int i = 0; i < q.size(); ++i)
      val += q.weights[i] * std::pow(q.points[i][1], 3) * std::pow(q.points[i][2], 3);
    check("degree-6 quadrature exact on l1^3 l2^3", std::abs(val - 1.0 / 1120.0) < 1e-16);
  }

  const QuadratureRule q = default_volume_rule();
  const FESpace Xh = build_space(mesh, SpaceKind::P1Scalar);
  const FESpace Vh = build_space(mesh, SpaceKind::MiniVector);
  const FESpace Dh = build_space(mesh, SpaceKind::RT0);
  const FESpace Sh = build_space(mesh, SpaceKind::P0Scalar);
  const Coefficient one = Coefficient::constant(1.0);

  auto max_abs = [](const SparseMatrix& m) {
    double v = 0.0;
    for (int r = 0; r < m.outerSize(); ++r)
      for (SparseMatrix::InnerIterator it(m, r); it; ++it) v = std::max(v, std::abs(it.value()));
    return v;
  };

  {
    const SparseMatrix M = mass_matrix(Xh, one, q);
    const SparseMatrix K = stiffness_matrix(Xh, one, q);
    const SparseMatrix Ms = SparseMatrix(M - SparseMatrix(M.transpose()));
    const SparseMatrix Ks = SparseMatrix(K - SparseMatrix(K.transpose()));
    check("mass symmetric", max_abs(Ms) <= 1e-12 * max_abs(M));
    check("stiffness symmetric", max_abs(Ks) <= 1e-12 * max_abs(K));
    DenseVector ones = DenseVector::Ones(Xh.ndofs);
    check("stiffness kernel contains constants", (K * ones).cwiseAbs().maxCoeff() < 1e-13);
    check("mass total = |domain|", std::abs(ones.dot(M * ones) - 1.0) < 1e-13);
  }

  {
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      DenseVector w(Vh.ndofs), v(Vh.ndofs);
      for (int i = 0; i < Vh.ndofs; ++i) {
        w[i] = unif(rng);
        v[i] = unif(rng);
      }
      const SparseMatrix N = convection_matrix(Vh, w, q);
      const double bound = 1e-12 * max_abs(N) * v.squaredNorm();
      const double val = std::abs(v.dot(N * v));
      worst = std::max(worst, val / std::max(bound, 1e-300));
      if (val > bound) ok = false;
    }
    check("convection skew symmetry (50 random fields)", ok);
  }

  {
    const Coefficient b = Coefficient::constant(1.7);
    const SparseMatrix S = jb_stabilization(Dh, b, 0.3, q);
    const SparseMatrix M = rt0_mass_matrix(Dh, one, q);
    const SparseMatrix diff = SparseMatrix(S - SparseMatrix(0.3 * 1.7 * 1.7 * M));
    check("jb stabilization = tau b^2 mass (constant b)", max_abs(diff) <= 1e-13 * max_abs(S));
  }

  {
    const SparseMatrix D = div_coupling_rt0(Dh, Sh);
    bool ok = true;
    for (int r = 0; r < D.outerSize(); ++r)
      for (SparseMatrix::InnerIterator it(D, r); it; ++it)
        if (std::abs(std::abs(it.value()) - 1.0) > 0.0) ok = false;
    check("RT0/P0 div coupling entries in {-1,0,+1}", ok);
  }

  {
    const Coefficient b = Coefficient::constant(1.0);
    const SparseMatrix A = cross_b_coupling(Dh, Vh, b, q);
    const SparseMatrix B = cross_b_coupling(Vh, Dh, b, q);
    const SparseMatrix diff = SparseMatrix(A + SparseMatrix(B.transpose()));
    check("cross product antisymmetry (a x B, K) = -(K x B, a)",
          max_abs(diff) <= 1e-12 * max_abs(A));
  }

  {
    double worst = 0.0;
    for (double s = -3.0; s <= 3.0; s += 1e-3) {
      const double fpp = (f_eval(s + 1e-4) - f_eval(s - 1e-4)) / 2e-4;
      worst = std::max(worst, std::abs(fpp));
    }
    check("|F''| <= 2 sampled", worst <= 2.0 + 1e-6);
  }

  {
    const Mesh m4 = structured_rect_mesh(4, 4, {0.0, 1.0}, {0.0, 1.0});
    const Mesh m8 = structured_rect_mesh(8, 8, {0.0, 1.0}, {0.0, 1.0});
    const double s4 = infsup_estimate(InfSupPair::VelocityPressure, m4);
    const double s8 = infsup_estimate(InfSupPair::VelocityPressure, m8);
    const double m4v = infsup_estimate(InfSupPair::CurrentPotential, m4);
    const double m8v = infsup_estimate(InfSupPair::CurrentPotential, m8);
    std::ostringstream os;
    os << "beta_s(1/4)=" << s4 << " beta_s(1/8)=" << s8 << " beta_m(1/4)=" << m4v
       << " beta_m(1/8)=" << m8v;
    check("inf-sup estimates positive and stable within 20%",
          s4 > 0 && s8 > 0 && m4v > 0 && m8v > 0 && std::abs(s8 - s4) <= 0.2 * std::max(s4, s8) &&
              std::abs(m8v - m4v) <= 0.2 * std::max(m4v, m8v),
          os.str());
  }

  return out;
}

}  // namespace chimhd

#include "chimhd/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "chimhd/forms.hpp"
#include "chimhd/linalg.hpp"

namespace chimhd {

double total_energy(const FESpace& Vh, const DenseVector& u, const FESpace& Xh,
                    const DenseVector& phi, const SchemeParams& p, const QuadratureRule& q) {
  const Mesh& mesh = *Xh.mesh;
  double kinetic = 0.0, grad = 0.0, well = 0.0;
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    const Vec2 gphi = grad_p1(Xh, phi, t, g);
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const double w = 2.0 * g.area * q.weights[qp];
      kinetic += w * eval_mini(Vh, u, t, g, lam).squaredNorm();
      well += w * F_eval(eval_p1(Xh, phi, t, lam));
    }
    grad += g.area * gphi.squaredNorm();
  }
  return 0.5 * kinetic + 0.5 * p.lambda * p.epsilon * grad + (p.lambda / p.epsilon) * well;
}

double dissipation(const FESpace& Vh, const DenseVector& u, const FESpace& Xh,
                   const DenseVector& mu, const DenseVector& phi, const FESpace& Dh,
                   const DenseVector& J, const SchemeParams& p, const QuadratureRule& q) {
  const Mesh& mesh = *Xh.mesh;
  double diff = 0.0, visc = 0.0, ohmic = 0.0;
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    diff += g.area * grad_p1(Xh, mu, t, g).squaredNorm();
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const Vec2 x = g.point(lam);
      const double w = 2.0 * g.area * q.weights[qp];
      const double ph = eval_p1(Xh, phi, t, lam);
      const Eigen::Matrix2d gu = grad_mini(Vh, u, t, g, lam);
      const Eigen::Matrix2d d = 0.5 * (gu + gu.transpose());
      visc += w * 2.0 * phase_blend(ph, p.eta1, p.eta2) * d.squaredNorm();
      ohmic += w * eval_rt0(Dh, J, t, g, x).squaredNorm() / phase_blend(ph, p.sigma1, p.sigma2);
    }
  }
  return p.mobility * diff + visc + ohmic;
}

double mass(const FESpace& Xh, const DenseVector& phi) {
  const Mesh& mesh = *Xh.mesh;
  double m = 0.0;
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    const int* d = Xh.dofs(t);
    m += g.area / 3.0 * (phi[d[0]] + phi[d[1]] + phi[d[2]]);
  }
  return m;
}

double div_j_norm(const FESpace& Dh, const DenseVector& J) {
  const Mesh& mesh = *Dh.mesh;
  double s = 0.0;
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    const double d = div_rt0(Dh, J, t, g);
    s += g.area * d * d;
  }
  return std::sqrt(s);
}

ErrorReport error_norms(const FieldSet& f, const ExactSolutionSet& exact, double time,
                        const QuadratureRule& q) {
  if (!exact.u || !exact.p || !exact.J || !exact.phi_pot || !exact.phi || !exact.mu)
    throw std::invalid_argument("error_norms: incomplete exact solution set");
  const Mesh& mesh = *f.Xh->mesh;

  // Zero-mean representatives for pressure and potential, discrete and exact.
  double area = 0.0, p_h_mean = 0.0, p_ex_mean = 0.0, pot_h_mean = 0.0, pot_ex_mean = 0.0;
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const Vec2 x = g.point(lam);
      const double w = 2.0 * g.area * q.weights[qp];
      area += w;
      p_h_mean += w * eval_p1(*f.Qh, *f.p, t, lam);
      p_ex_mean += w * exact.p(x, time);
      pot_h_mean += w * eval_p0(*f.Sh, *f.phi_pot, t);
      pot_ex_mean += w * exact.phi_pot(x, time);
    }
  }
  p_h_mean /= area;
  p_ex_mean /= area;
  pot_h_mean /= area;
  pot_ex_mean /= area;

  double u_l2 = 0, u_h1 = 0, p_l2 = 0, j_l2 = 0, j_div = 0, pot_l2 = 0;
  double phi_l2 = 0, phi_h1 = 0, mu_l2 = 0, mu_h1 = 0;
  const double fd = 1e-6;  // gradient of the exact velocity by central differences
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    const Vec2 gphi = grad_p1(*f.Xh, *f.phi, t, g);
    const Vec2 gmu = grad_p1(*f.Xh, *f.mu, t, g);
    const double divj_h = div_rt0(*f.Dh, *f.J, t, g);
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const Vec2 x = g.point(lam);
      const double w = 2.0 * g.area * q.weights[qp];

      u_l2 += w * (eval_mini(*f.Vh, *f.u, t, g, lam) - exact.u(x, time)).squaredNorm();
      Eigen::Matrix2d gu_ex;
      const Vec2 dx(fd, 0.0), dy(0.0, fd);
      gu_ex.col(0) = (exact.u(x + dx, time) - exact.u(x - dx, time)) / (2 * fd);
      gu_ex.col(1) = (exact.u(x + dy, time) - exact.u(x - dy, time)) / (2 * fd);
      u_h1 += w * (grad_mini(*f.Vh, *f.u, t, g, lam) - gu_ex).squaredNorm();

      const double pe = exact.p(x, time) - p_ex_mean;
      const double ph = eval_p1(*f.Qh, *f.p, t, lam) - p_h_mean;
      p_l2 += w * (ph - pe) * (ph - pe);

      j_l2 += w * (eval_rt0(*f.Dh, *f.J, t, g, x) - exact.J(x, time)).squaredNorm();
      const double dj = divj_h - exact.div_J(x, time);
      j_div += w * dj * dj;

      const double pote = exact.phi_pot(x, time) - pot_ex_mean;
      const double poth = eval_p0(*f.Sh, *f.phi_pot, t) - pot_h_mean;
      pot_l2 += w * (poth - pote) * (poth - pote);

      const double dphi = eval_p1(*f.Xh, *f.phi, t, lam) - exact.phi(x, time);
      phi_l2 += w * dphi * dphi;
      phi_h1 += w * (gphi - exact.grad_phi(x, time)).squaredNorm();
      const double dmu = eval_p1(*f.Xh, *f.mu, t, lam) - exact.mu(x, time);
      mu_l2 += w * dmu * dmu;
      mu_h1 += w * (gmu - exact.grad_mu(x, time)).squaredNorm();
    }
  }

  ErrorReport r;
  r.u_l2 = std::sqrt(u_l2);
  r.u_h1 = std::sqrt(u_h1);
  r.p_l2 = std::sqrt(p_l2);
  r.j_div = std::sqrt(j_l2 + j_div);
  r.phipot_l2 = std::sqrt(pot_l2);
  r.phi_l2 = std::sqrt(phi_l2);
  r.phi_h1 = std::sqrt(phi_h1);
  r.mu_l2 = std::sqrt(mu_l2);
  r.mu_h1 = std::sqrt(mu_h1);
  return r;
}

double observed_order(double e_coarse, double e_fine) { return std::log2(e_coarse / e_fine); }

namespace {

Eigen::MatrixXd dense(const SparseMatrix& a) { return Eigen::MatrixXd(a); }

double smallest_nonzero_eig(const Eigen::MatrixXd& S, const Eigen::MatrixXd& M) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(S, M);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double cutoff = 1e-10 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (int i = 0; i < ev.size(); ++i)
    if (ev[i] > cutoff) return std::sqrt(ev[i]);
  throw std::runtime_error("infsup_estimate: coupling operator is zero");
}

}  // namespace

double infsup_estimate(InfSupPair pair, const Mesh& mesh) {
  const QuadratureRule q = default_volume_rule();
  if (pair == InfSupPair::VelocityPressure) {
    FESpace Vh = build_space(mesh, SpaceKind::MiniVector);
    FESpace Qh = build_space(mesh, SpaceKind::P1Scalar, MeanConstraint::ZeroMean);
    if (Vh.ndofs + Qh.ndofs > 2000)
      throw std::invalid_argument("infsup_estimate: mesh too large for a dense eigensolve");
    // Restrict the velocity space to homogeneous Dirichlet DOFs.
    std::vector<char> fixed(Vh.ndofs, 0);
    for (int v : boundary_vertices(mesh)) fixed[2 * v] = fixed[2 * v + 1] = 1;
    std::vector<int> free;
    for (int i = 0; i < Vh.ndofs; ++i)
      if (!fixed[i]) free.push_back(i);

    TripletList kt(Vh.ndofs, Vh.ndofs);
    assemble_grad_gram(Vh, q, kt);
    const Eigen::MatrixXd K = dense(kt.finalize());
    const Eigen::MatrixXd B = dense(div_coupling_velocity(Vh, Qh, q));
    const Eigen::MatrixXd Mq = dense(mass_matrix(Qh, Coefficient::constant(1.0), q));

    const int nf = static_cast<int>(free.size());
    Eigen::MatrixXd Kf(nf, nf), Bf(Qh.ndofs, nf);
    for (int i = 0; i < nf; ++i) {
      for (int j = 0; j < nf; ++j) Kf(i, j) = K(free[i], free[j]);
      Bf.col(i) = B.col(free[i]);
    }
    const Eigen::MatrixXd S = Bf * Kf.ldlt().solve(Bf.transpose());
    return smallest_nonzero_eig(S, Mq);
  }

  FESpace Dh = build_space(mesh, SpaceKind::RT0);
  FESpace Sh = build_space(mesh, SpaceKind::P0Scalar, MeanConstraint::ZeroMean);
  if (Dh.ndofs + Sh.ndofs > 2000)
    throw std::invalid_argument("infsup_estimate: mesh too large for a dense eigensolve");
  std::vector<char> fixed(Dh.ndofs, 0);
  for (int f : boundary_facets(mesh, "all")) fixed[f] = 1;
  std::vector<int> free;
  for (int i = 0; i < Dh.ndofs; ++i)
    if (!fixed[i]) free.push_back(i);

  const Eigen::MatrixXd Mrt = dense(rt0_mass_matrix(Dh, Coefficient::constant(1.0), q));
  const Eigen::MatrixXd B = dense(div_coupling_rt0(Dh, Sh));
  Eigen::VectorXd areas(Sh.ndofs);
  for (int t = 0; t < mesh.num_cells(); ++t) areas[t] = cell_geometry(mesh, t).area;
  // H(div) Gram: mass + div' W^-1 div with W the cell measures.
  const Eigen::MatrixXd Kdiv =
      Mrt + B.transpose() * areas.cwiseInverse().asDiagonal() * B;

  const int nf = static_cast<int>(free.size());
  Eigen::MatrixXd Kf(nf, nf), Bf(Sh.ndofs, nf);
  for (int i = 0; i < nf; ++i) {
    for (int j = 0; j < nf; ++j) Kf(i, j) = Kdiv(free[i], free[j]);
    Bf.col(i) = B.col(free[i]);
  }
  const Eigen::MatrixXd S = Bf * Kf.ldlt().solve(Bf.transpose());
  return smallest_nonzero_eig(S, Eigen::MatrixXd(areas.asDiagonal()));
}

}  // namespace chimhd

#include "chimhd/forms.hpp"

#include <cmath>
#include <stdexcept>

namespace chimhd {

double F_eval(double s) {
  if (s < -1.0) return (s + 1.0) * (s + 1.0);
  if (s > 1.0) return (s - 1.0) * (s - 1.0);
  const double w = s * s - 1.0;
  return 0.25 * w * w;
}

double f_eval(double s) {
  if (s < -1.0) return 2.0 * (s + 1.0);
  if (s > 1.0) return 2.0 * (s - 1.0);
  return s * s * s - s;
}

double phase_blend(double phi, double v1, double v2) {
  const double c = std::clamp(phi, -1.0, 1.0);
  return 0.5 * ((1.0 + c) * v1 + (1.0 - c) * v2);
}

double heaviside_reg(double phi, double eps) { return 1.0 / (1.0 + std::exp(-phi / eps)); }

Coefficient Coefficient::constant(double c) {
  Coefficient k;
  k.tag_ = Tag::Constant;
  k.value_ = c;
  return k;
}

Coefficient Coefficient::analytic(std::function<double(const Vec2&, double)> fn, double time) {
  Coefficient k;
  k.tag_ = Tag::Analytic;
  k.fn_ = std::move(fn);
  k.time_ = time;
  return k;
}

Coefficient Coefficient::p1_field(const FESpace& space, const DenseVector& coeffs) {
  return p1_mapped(space, coeffs, {});
}

Coefficient Coefficient::p1_mapped(const FESpace& space, const DenseVector& coeffs,
                                   std::function<double(double)> map) {
  if (space.kind != SpaceKind::P1Scalar)
    throw std::invalid_argument("Coefficient::p1_field: not a P1 space");
  Coefficient k;
  k.tag_ = Tag::P1;
  k.space_ = &space;
  k.coeffs_ = &coeffs;
  k.map_ = std::move(map);
  return k;
}

double Coefficient::eval(int cell, const std::array<double, 3>& lam, const Vec2& x) const {
  switch (tag_) {
    case Tag::Constant:
      return value_;
    case Tag::Analytic:
      return fn_(x, time_);
    case Tag::P1: {
      const double v = eval_p1(*space_, *coeffs_, cell, lam);
      return map_ ? map_(v) : v;
    }
  }
  return 0.0;
}

Coefficient viscosity_coefficient(const FESpace& p1, const DenseVector& phi, double eta1,
                                  double eta2) {
  return Coefficient::p1_mapped(p1, phi,
                                [eta1, eta2](double s) { return phase_blend(s, eta1, eta2); });
}

Coefficient conductivity_inv_coefficient(const FESpace& p1, const DenseVector& phi, double sigma1,
                                         double sigma2) {
  return Coefficient::p1_mapped(
      p1, phi, [sigma1, sigma2](double s) { return 1.0 / phase_blend(s, sigma1, sigma2); });
}

namespace {

// Local vector-valued basis (Mini: 8 functions, RT0: 3).
struct LocalVectorBasis {
  int n = 0;
  std::array<Vec2, 8> value{};
};

LocalVectorBasis vector_basis(const FESpace& s, int cell, const CellGeometry& g,
                              const std::array<double, 3>& lam, const Vec2& x) {
  LocalVectorBasis b;
  if (s.kind == SpaceKind::MiniVector) {
    const ScalarBasis sb = mini_scalar_basis(g, lam);
    b.n = 8;
    for (int k = 0; k < 4; ++k) {
      b.value[k] = Vec2(sb.value[k], 0.0);
      b.value[4 + k] = Vec2(0.0, sb.value[k]);
    }
  } else if (s.kind == SpaceKind::RT0) {
    const RT0Basis rb = rt0_basis(*s.mesh, cell, g, x);
    b.n = 3;
    for (int k = 0; k < 3; ++k) b.value[k] = rb.value[k];
  } else {
    throw std::invalid_argument("vector_basis: scalar space");
  }
  return b;
}

void add_local(TripletList& out, const int* rows, const int* cols, const Eigen::MatrixXd& local,
               int ro, int co, double scale) {
  for (int i = 0; i < local.rows(); ++i)
    for (int j = 0; j < local.cols(); ++j) out.add(ro + rows[i], co + cols[j], scale * local(i, j));
}

}  // namespace

void assemble_mass(const FESpace& s, const Coefficient& c, const QuadratureRule& q,
                   TripletList& out, int ro, int co, double scale) {
  if (s.kind != SpaceKind::P1Scalar && s.kind != SpaceKind::P0Scalar)
    throw std::invalid_argument("assemble_mass: scalar space required");
  const Mesh& mesh = *s.mesh;
  const int nb = s.dofs_per_cell;
  Eigen::MatrixXd local(nb, nb);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    local.setZero();
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const Vec2 x = g.point(lam);
      const double w = 2.0 * g.area * q.weights[qp] * c.eval(t, lam, x);
      if (s.kind == SpaceKind::P0Scalar) {
        local(0, 0) += w;
      } else {
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) local(i, j) += w * lam[i] * lam[j];
      }
    }
    add_local(out, s.dofs(t), s.dofs(t), local, ro, co, scale);
  }
}

void assemble_stiffness(const FESpace& s, const Coefficient& c, const QuadratureRule& q,
                        TripletList& out, int ro, int co, double scale) {
  if (s.kind != SpaceKind::P1Scalar)
    throw std::invalid_argument("assemble_stiffness: P1 space required");
  const Mesh& mesh = *s.mesh;
  Eigen::MatrixXd local(3, 3);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    local.setZero();
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const double w = 2.0 * g.area * q.weights[qp] * c.eval(t, lam, g.point(lam));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) local(i, j) += w * g.grad_lambda[i].dot(g.grad_lambda[j]);
    }
    add_local(out, s.dofs(t), s.dofs(t), local, ro, co, scale);
  }
}

void assemble_rt0_mass(const FESpace& s, const Coefficient& c, const QuadratureRule& q,
                       TripletList& out, int ro, int co, double scale) {
  if (s.kind != SpaceKind::RT0) throw std::invalid_argument("assemble_rt0_mass: RT0 required");
  const Mesh& mesh = *s.mesh;
  Eigen::MatrixXd local(3, 3);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    local.setZero();
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const Vec2 x = g.point(lam);
      const double w = 2.0 * g.area * q.weights[qp] * c.eval(t, lam, x);
      const RT0Basis rb = rt0_basis(mesh, t, g, x);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) local(i, j) += w * rb.value[i].dot(rb.value[j]);
    }
    add_local(out, s.dofs(t), s.dofs(t), local, ro, co, scale);
  }
}

void assemble_mini_mass(const FESpace& s, const Coefficient& c, const QuadratureRule& q,
                        TripletList& out, int ro, int co, double scale) {
  if (s.kind != SpaceKind::MiniVector)
    throw std::invalid_argument("assemble_mini_mass: Mini space required");
  const Mesh& mesh = *s.mesh;
  Eigen::MatrixXd local(8, 8);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    local.setZero();
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const double w = 2.0 * g.area * q.weights[qp] * c.eval(t, lam, g.point(lam));
      const ScalarBasis sb = mini_scalar_basis(g, lam);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          const double m = w * sb.value[i] * sb.value[j];
          local(i, j) += m;
          local(4 + i, 4 + j) += m;
        }
    }
    add_local(out, s.dofs(t), s.dofs(t), local, ro, co, scale);
  }
}

void assemble_sym_grad(const FESpace& mini, const Coefficient& eta, const QuadratureRule& q,
                       TripletList& out, int ro, int co, double scale) {
  if (mini.kind != SpaceKind::MiniVector)
    throw std::invalid_argument("assemble_sym_grad: Mini space required");
  const Mesh& mesh = *mini.mesh;
  Eigen::MatrixXd local(8, 8);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    local.setZero();
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const double w = 2.0 * g.area * q.weights[qp] * eta.eval(t, lam, g.point(lam));
      const ScalarBasis sb = mini_scalar_basis(g, lam);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          const Vec2& gi = sb.grad[i];
          const Vec2& gj = sb.grad[j];
          // 2 (eta D(u), D(v)) expanded per component pair.
          local(i, j) += w * (2.0 * gi.x() * gj.x() + gi.y() * gj.y());
          local(i, 4 + j) += w * gi.y() * gj.x();
          local(4 + i, j) += w * gi.x() * gj.y();
          local(4 + i, 4 + j) += w * (gi.x() * gj.x() + 2.0 * gi.y() * gj.y());
        }
    }
    add_local(out, mini.dofs(t), mini.dofs(t), local, ro, co, scale);
  }
}

void assemble_grad_gram(const FESpace& mini, const QuadratureRule& q, TripletList& out, int ro,
                        int co, double scale) {
  const Mesh& mesh = *mini.mesh;
  Eigen::MatrixXd local(8, 8);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    local.setZero();
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const double w = 2.0 * g.area * q.weights[qp];
      const ScalarBasis sb = mini_scalar_basis(g, lam);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          const double v = w * sb.grad[i].dot(sb.grad[j]);
          local(i, j) += v;
          local(4 + i, 4 + j) += v;
        }
    }
    add_local(out, mini.dofs(t), mini.dofs(t), local, ro, co, scale);
  }
}

void assemble_div_velocity(const FESpace& mini, const FESpace& pressure, const QuadratureRule& q,
                           TripletList& out, int ro, int co, double scale) {
  if (mini.mesh != pressure.mesh)
    throw std::invalid_argument("assemble_div_velocity: mesh mismatch");
  const Mesh& mesh = *mini.mesh;
  Eigen::MatrixXd local(3, 8);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    local.setZero();
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const double w = 2.0 * g.area * q.weights[qp];
      const ScalarBasis sb = mini_scalar_basis(g, lam);
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 4; ++k) {
          local(i, k) += w * lam[i] * sb.grad[k].x();      // div of (s_k, 0)
          local(i, 4 + k) += w * lam[i] * sb.grad[k].y();  // div of (0, s_k)
        }
    }
    add_local(out, pressure.dofs(t), mini.dofs(t), local, ro, co, scale);
  }
}

void assemble_div_rt0(const FESpace& rt0, const FESpace& p0, TripletList& out, int ro, int co,
                      double scale) {
  if (rt0.mesh != p0.mesh) throw std::invalid_argument("assemble_div_rt0: mesh mismatch");
  const Mesh& mesh = *rt0.mesh;
  for (int t = 0; t < mesh.num_cells(); ++t)
    for (int k = 0; k < 3; ++k)
      out.add(ro + p0.dofs(t)[0], co + rt0.dofs(t)[k],
              scale * static_cast<double>(mesh.cell_signs[t][k]));
}

void assemble_convection(const FESpace& mini, const DenseVector& w, const QuadratureRule& q,
                         TripletList& out, int ro, int co, double scale) {
  if (mini.kind != SpaceKind::MiniVector)
    throw std::invalid_argument("assemble_convection: Mini space required");
  const Mesh& mesh = *mini.mesh;
  Eigen::MatrixXd a(4, 4), skew(4, 4), local(8, 8);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    a.setZero();
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const double wq = 2.0 * g.area * q.weights[qp];
      const Vec2 wv = eval_mini(mini, w, t, g, lam);
      const ScalarBasis sb = mini_scalar_basis(g, lam);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) += wq * wv.dot(sb.grad[j]) * sb.value[i];
    }
    skew = 0.5 * (a - a.transpose());
    local.setZero();
    local.topLeftCorner(4, 4) = skew;
    local.bottomRightCorner(4, 4) = skew;
    add_local(out, mini.dofs(t), mini.dofs(t), local, ro, co, scale);
  }
}

void assemble_cross_b(const FESpace& test, const FESpace& trial, const Coefficient& b,
                      const QuadratureRule& q, TripletList& out, int ro, int co, double scale) {
  if (test.mesh != trial.mesh) throw std::invalid_argument("assemble_cross_b: mesh mismatch");
  const Mesh& mesh = *test.mesh;
  Eigen::MatrixXd local(8, 8);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    local.setZero();
    int ni = 0, nj = 0;
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const Vec2 x = g.point(lam);
      const double w = 2.0 * g.area * q.weights[qp] * b.eval(t, lam, x);
      const LocalVectorBasis tb = vector_basis(test, t, g, lam, x);
      const LocalVectorBasis rb = vector_basis(trial, t, g, lam, x);
      ni = tb.n;
      nj = rb.n;
      for (int i = 0; i < ni; ++i)
        for (int j = 0; j < nj; ++j)
          local(i, j) +=
              w * (rb.value[j].y() * tb.value[i].x() - rb.value[j].x() * tb.value[i].y());
    }
    add_local(out, test.dofs(t), trial.dofs(t), local.topLeftCorner(ni, nj), ro, co, scale);
  }
}

void assemble_jb_stabilization(const FESpace& rt0, const Coefficient& b, double tau,
                               const QuadratureRule& q, TripletList& out, int ro, int co,
                               double scale) {
  // (J x B, K x B) = (b^2 J, K) for out-of-plane B.
  const Mesh& mesh = *rt0.mesh;
  Eigen::MatrixXd local(3, 3);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    local.setZero();
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const Vec2 x = g.point(lam);
      const double bv = b.eval(t, lam, x);
      const double w = 2.0 * g.area * q.weights[qp] * tau * bv * bv;
      const RT0Basis rb = rt0_basis(mesh, t, g, x);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) local(i, j) += w * rb.value[i].dot(rb.value[j]);
    }
    add_local(out, rt0.dofs(t), rt0.dofs(t), local, ro, co, scale);
  }
}

void assemble_phase_grad_stabilization(const FESpace& p1, const DenseVector& phi, double tau,
                                       const QuadratureRule& q, TripletList& out, int ro, int co,
                                       double scale) {
  const Mesh& mesh = *p1.mesh;
  Eigen::MatrixXd local(3, 3);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    local.setZero();
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const double pv = eval_p1(p1, phi, t, lam);
      const double w = 2.0 * g.area * q.weights[qp] * tau * pv * pv;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) local(i, j) += w * g.grad_lambda[i].dot(g.grad_lambda[j]);
    }
    add_local(out, p1.dofs(t), p1.dofs(t), local, ro, co, scale);
  }
}

// --- wrappers ----------------------------------------------------------------

namespace {
template <class F>
SparseMatrix build(int rows, int cols, F&& fill) {
  TripletList t(rows, cols);
  fill(t);
  return t.finalize();
}
}  // namespace

SparseMatrix mass_matrix(const FESpace& s, const Coefficient& c, const QuadratureRule& q) {
  return build(s.ndofs, s.ndofs, [&](TripletList& t) { assemble_mass(s, c, q, t); });
}
SparseMatrix stiffness_matrix(const FESpace& s, const Coefficient& c, const QuadratureRule& q) {
  return build(s.ndofs, s.ndofs, [&](TripletList& t) { assemble_stiffness(s, c, q, t); });
}
SparseMatrix rt0_mass_matrix(const FESpace& s, const Coefficient& c, const QuadratureRule& q) {
  return build(s.ndofs, s.ndofs, [&](TripletList& t) { assemble_rt0_mass(s, c, q, t); });
}
SparseMatrix mini_mass_matrix(const FESpace& s, const Coefficient& c, const QuadratureRule& q) {
  return build(s.ndofs, s.ndofs, [&](TripletList& t) { assemble_mini_mass(s, c, q, t); });
}
SparseMatrix sym_grad_matrix(const FESpace& mini, const Coefficient& eta, const QuadratureRule& q) {
  return build(mini.ndofs, mini.ndofs, [&](TripletList& t) { assemble_sym_grad(mini, eta, q, t); });
}
SparseMatrix div_coupling_velocity(const FESpace& mini, const FESpace& pressure,
                                   const QuadratureRule& q) {
  return build(pressure.ndofs, mini.ndofs,
               [&](TripletList& t) { assemble_div_velocity(mini, pressure, q, t); });
}
SparseMatrix div_coupling_rt0(const FESpace& rt0, const FESpace& p0) {
  return build(p0.ndofs, rt0.ndofs, [&](TripletList& t) { assemble_div_rt0(rt0, p0, t); });
}
SparseMatrix convection_matrix(const FESpace& mini, const DenseVector& w, const QuadratureRule& q) {
  return build(mini.ndofs, mini.ndofs,
               [&](TripletList& t) { assemble_convection(mini, w, q, t); });
}
SparseMatrix cross_b_coupling(const FESpace& test, const FESpace& trial, const Coefficient& b,
                              const QuadratureRule& q) {
  return build(test.ndofs, trial.ndofs,
               [&](TripletList& t) { assemble_cross_b(test, trial, b, q, t); });
}
SparseMatrix jb_stabilization(const FESpace& rt0, const Coefficient& b, double tau,
                              const QuadratureRule& q) {
  return build(rt0.ndofs, rt0.ndofs,
               [&](TripletList& t) { assemble_jb_stabilization(rt0, b, tau, q, t); });
}
SparseMatrix phase_grad_stabilization(const FESpace& p1, const DenseVector& phi, double tau,
                                      const QuadratureRule& q) {
  return build(p1.ndofs, p1.ndofs,
               [&](TripletList& t) { assemble_phase_grad_stabilization(p1, phi, tau, q, t); });
}

// --- loads --------------------------------------------------------------------

DenseVector load_scalar(const FESpace& s, const ScalarFn& fn, double time,
                        const QuadratureRule& q) {
  const Mesh& mesh = *s.mesh;
  DenseVector out = DenseVector::Zero(s.ndofs);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    const int* d = s.dofs(t);
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const Vec2 x = g.point(lam);
      const double w = 2.0 * g.area * q.weights[qp] * fn(x, time);
      if (s.kind == SpaceKind::P0Scalar) {
        out[d[0]] += w;
      } else {
        for (int i = 0; i < 3; ++i) out[d[i]] += w * lam[i];
      }
    }
  }
  return out;
}

DenseVector load_vector2(const FESpace& s, const VectorFn& fn, double time,
                         const QuadratureRule& q) {
  const Mesh& mesh = *s.mesh;
  DenseVector out = DenseVector::Zero(s.ndofs);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    const int* d = s.dofs(t);
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const Vec2 x = g.point(lam);
      const double w = 2.0 * g.area * q.weights[qp];
      const Vec2 f = fn(x, time);
      const LocalVectorBasis vb = vector_basis(s, t, g, lam, x);
      for (int i = 0; i < vb.n; ++i) out[d[i]] += w * f.dot(vb.value[i]);
    }
  }
  return out;
}

DenseVector load_phi_u_grad(const FESpace& p1, const DenseVector& phi, const FESpace& mini,
                            const DenseVector& u, const QuadratureRule& q) {
  if (p1.mesh != mini.mesh) throw std::invalid_argument("load_phi_u_grad: mesh mismatch");
  const Mesh& mesh = *p1.mesh;
  DenseVector out = DenseVector::Zero(p1.ndofs);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    const int* d = p1.dofs(t);
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const double w = 2.0 * g.area * q.weights[qp];
      const Vec2 f = eval_p1(p1, phi, t, lam) * eval_mini(mini, u, t, g, lam);
      for (int i = 0; i < 3; ++i) out[d[i]] += w * f.dot(g.grad_lambda[i]);
    }
  }
  return out;
}

DenseVector load_f_potential(const FESpace& p1, const DenseVector& phi, const QuadratureRule& q) {
  const Mesh& mesh = *p1.mesh;
  DenseVector out = DenseVector::Zero(p1.ndofs);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    const int* d = p1.dofs(t);
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const double w = 2.0 * g.area * q.weights[qp] * f_eval(eval_p1(p1, phi, t, lam));
      for (int i = 0; i < 3; ++i) out[d[i]] += w * lam[i];
    }
  }
  return out;
}

DenseVector load_phi_grad_mu(const FESpace& mini, const FESpace& p1, const DenseVector& phi,
                             const DenseVector& mu, const QuadratureRule& q) {
  const Mesh& mesh = *mini.mesh;
  DenseVector out = DenseVector::Zero(mini.ndofs);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    const Vec2 gmu = grad_p1(p1, mu, t, g);
    const int* d = mini.dofs(t);
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const double w = 2.0 * g.area * q.weights[qp] * eval_p1(p1, phi, t, lam);
      const ScalarBasis sb = mini_scalar_basis(g, lam);
      for (int k = 0; k < 4; ++k) {
        out[d[k]] += w * gmu.x() * sb.value[k];
        out[d[4 + k]] += w * gmu.y() * sb.value[k];
      }
    }
  }
  return out;
}

DenseVector load_phi_grad_mu_cross_b(const FESpace& rt0, const FESpace& p1, const DenseVector& phi,
                                     const DenseVector& mu, const Coefficient& b,
                                     const QuadratureRule& q) {
  const Mesh& mesh = *rt0.mesh;
  DenseVector out = DenseVector::Zero(rt0.ndofs);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    const Vec2 gmu = grad_p1(p1, mu, t, g);
    const int* d = rt0.dofs(t);
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const Vec2 x = g.point(lam);
      const double w = 2.0 * g.area * q.weights[qp];
      const Vec2 a = eval_p1(p1, phi, t, lam) * gmu;
      const double bv = b.eval(t, lam, x);
      const RT0Basis rb = rt0_basis(mesh, t, g, x);
      // (a, K x B) with K x B = (K2 b, -K1 b).
      for (int i = 0; i < 3; ++i)
        out[d[i]] += w * bv * (a.x() * rb.value[i].y() - a.y() * rb.value[i].x());
    }
  }
  return out;
}

DenseVector load_gravity(const FESpace& mini, const FESpace& p1, const DenseVector& phi,
                         const Vec2& gvec, double eps, const QuadratureRule& q) {
  const Mesh& mesh = *mini.mesh;
  DenseVector out = DenseVector::Zero(mini.ndofs);
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    const int* d = mini.dofs(t);
    for (int qp = 0; qp < q.size(); ++qp) {
      const auto& lam = q.points[qp];
      const double h = heaviside_reg(eval_p1(p1, phi, t, lam), eps);
      const double w = 2.0 * g.area * q.weights[qp] * 0.5 * (h + 1.0);
      const ScalarBasis sb = mini_scalar_basis(g, lam);
      for (int k = 0; k < 4; ++k) {
        out[d[k]] += w * gvec.x() * sb.value[k];
        out[d[4 + k]] += w * gvec.y() * sb.value[k];
      }
    }
  }
  return out;
}

DenseVector load_boundary_scalar(const FESpace& p1,
                                 const std::function<double(const Vec2&, const Vec2&, double)>& g,
                                 double time, const std::vector<int>& facets, int npts) {
  const Mesh& mesh = *p1.mesh;
  DenseVector out = DenseVector::Zero(p1.ndofs);
  const SegmentRule rule = segment_rule(npts);
  for (int f : facets) {
    const int v0 = mesh.facets[f][0];
    const int v1 = mesh.facets[f][1];
    const Vec2 a = mesh.vertices[v0];
    const Vec2 b = mesh.vertices[v1];
    const double len = (b - a).norm();
    // Boundary facets: the outward normal is the cell-outward one.
    const int cell = mesh.facet_cells[f][0];
    int local = 0;
    for (int k = 0; k < 3; ++k)
      if (mesh.cell_facets[cell][k] == f) local = k;
    const Vec2 n = cell_geometry(mesh, cell).normal[local];
    for (int qp = 0; qp < npts; ++qp) {
      const double s = rule.points[qp];
      const Vec2 x = a + s * (b - a);
      const double w = rule.weights[qp] * len * g(x, n, time);
      out[v0] += w * (1.0 - s);
      out[v1] += w * s;
    }
  }
  return out;
}

}  // namespace chimhd

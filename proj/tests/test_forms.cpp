#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "chimhd/forms.hpp"

using namespace chimhd;

namespace {

const Mesh& two_cell() {
  static Mesh m = structured_rect_mesh(1, 1, {0.0, 1.0}, {0.0, 1.0});
  return m;
}
const Mesh& grid4() {
  static Mesh m = structured_rect_mesh(4, 4, {0.0, 1.0}, {0.0, 1.0});
  return m;
}

double max_abs(const SparseMatrix& m) {
  double v = 0.0;
  for (int r = 0; r < m.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) v = std::max(v, std::abs(it.value()));
  return v;
}

double asymmetry(const SparseMatrix& m) {
  return max_abs(SparseMatrix(m - SparseMatrix(SparseMatrix(m.transpose()))));
}

double skew_defect(const SparseMatrix& m) {
  return max_abs(SparseMatrix(m + SparseMatrix(SparseMatrix(m.transpose()))));
}

// Independent dense oracle: P1 stiffness from the closed-form per-cell
// formula K_ij = area * cot-based edge expression, written directly from the
// vertex coordinates without any shared machinery.
Eigen::MatrixXd dense_p1_stiffness(const Mesh& mesh) {
  const int V = mesh.num_vertices();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(V, V);
  for (const auto& c : mesh.cells) {
    const Vec2 p0 = mesh.vertices[c[0]], p1 = mesh.vertices[c[1]], p2 = mesh.vertices[c[2]];
    const double twice_area =
        (p1.x() - p0.x()) * (p2.y() - p0.y()) - (p1.y() - p0.y()) * (p2.x() - p0.x());
    const Vec2 e0 = p2 - p1, e1 = p0 - p2, e2 = p1 - p0;  // edge opposite each vertex
    const Vec2 e[3] = {e0, e1, e2};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        K(c[i], c[j]) += e[i].dot(e[j]) / (2.0 * twice_area);
  }
  return K;
}

// Independent dense convection oracle on the two-cell mesh using a high-order
// tensor quadrature over each triangle via its own barycentric sampling.
Eigen::MatrixXd dense_convection(const Mesh& mesh, const FESpace& mini, const DenseVector& w) {
  const int n = mini.ndofs;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  // 7-point Gauss on [0,1] squared through the Duffy map, built inline.
  const int gn = 7;
  std::vector<double> gx(gn), gw(gn);
  for (int i = 0; i < gn; ++i) {  // Newton on Legendre polynomials
    double t = std::cos(M_PI * (i + 0.75) / (gn + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double q0 = 1.0, q1 = t;
      for (int k = 2; k <= gn; ++k) {
        const double q2 = ((2 * k - 1) * t * q1 - (k - 1) * q0) / k;
        q0 = q1;
        q1 = q2;
      }
      dp = gn * (t * q1 - q0) / (t * t - 1.0);
      const double dt = q1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    gx[i] = 0.5 * (t + 1.0);
    gw[i] = 1.0 / ((1.0 - t * t) * dp * dp) * 2.0 * 0.5;
  }
  for (int t = 0; t < mesh.num_cells(); ++t) {
    const CellGeometry g = cell_geometry(mesh, t);
    const int* d = mini.dofs(t);
    for (int iu = 0; iu < gn; ++iu)
      for (int iv = 0; iv < gn; ++iv) {
        const double uu = gx[iu];
        const double vv = gx[iv] * (1.0 - uu);
        const std::array<double, 3> lam = {1.0 - uu - vv, uu, vv};
        const double wq = gw[iu] * gw[iv] * (1.0 - uu) * 2.0 * g.area;
        const ScalarBasis sb = mini_scalar_basis(g, lam);
        const Vec2 wval = eval_mini(mini, w, t, g, lam);
        for (int comp = 0; comp < 2; ++comp)
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
              const double conv = wval.dot(sb.grad[j]) * sb.value[i];
              a(d[4 * comp + i], d[4 * comp + j]) += wq * conv;
            }
      }
  }
  return 0.5 * (a - a.transpose());
}

}  // namespace

TEST_CASE("truncated double-well values") {
  CHECK(F_eval(0.0) == doctest::Approx(0.25));
  CHECK(f_eval(0.0) == doctest::Approx(0.0));
  CHECK(F_eval(1.0) == doctest::Approx(0.0));
  CHECK(F_eval(-1.0) == doctest::Approx(0.0));
  CHECK(f_eval(1.0) == doctest::Approx(0.0));
  CHECK(f_eval(-1.0) == doctest::Approx(0.0));
  CHECK(F_eval(2.0) == doctest::Approx(1.0));
  CHECK(f_eval(2.0) == doctest::Approx(2.0));
  // |F''| <= 2 over a dense sample, attained at +-1.
  double worst = 0.0;
  for (double s = -4.0; s <= 4.0; s += 1e-3)
    worst = std::max(worst, std::abs((f_eval(s + 1e-5) - f_eval(s - 1e-5)) / 2e-5));
  CHECK(worst <= 2.0 + 1e-6);
  CHECK(worst >= 2.0 - 1e-3);
}

TEST_CASE("f is continuous across the truncation points") {
  CHECK(f_eval(1.0 - 1e-12) == doctest::Approx(f_eval(1.0 + 1e-12)).epsilon(1e-9));
  CHECK(f_eval(-1.0 - 1e-12) == doctest::Approx(f_eval(-1.0 + 1e-12)).epsilon(1e-9));
}

TEST_CASE("phase blend respects the two-sided bounds") {
  CHECK(phase_blend(1.0, 3.0, 7.0) == doctest::Approx(3.0));
  CHECK(phase_blend(-1.0, 3.0, 7.0) == doctest::Approx(7.0));
  CHECK(phase_blend(0.0, 3.0, 7.0) == doctest::Approx(5.0));
  CHECK(phase_blend(25.0, 3.0, 7.0) == doctest::Approx(3.0));   // clamped
  CHECK(phase_blend(-25.0, 3.0, 7.0) == doctest::Approx(7.0));  // clamped
}

TEST_CASE("P1 stiffness equals the dense per-cell oracle on the 2-cell square") {
  const FESpace p1 = build_space(two_cell(), SpaceKind::P1Scalar);
  const QuadratureRule q = default_volume_rule();
  const SparseMatrix K = stiffness_matrix(p1, Coefficient::constant(1.0), q);
  const Eigen::MatrixXd expect = dense_p1_stiffness(two_cell());
  CHECK((Eigen::MatrixXd(K) - expect).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("stiffness row sums vanish, mass sums to the area") {
  const FESpace p1 = build_space(grid4(), SpaceKind::P1Scalar);
  const QuadratureRule q = default_volume_rule();
  const SparseMatrix K = stiffness_matrix(p1, Coefficient::constant(1.0), q);
  const SparseMatrix M = mass_matrix(p1, Coefficient::constant(1.0), q);
  CHECK((K * DenseVector::Ones(p1.ndofs)).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(DenseVector::Ones(p1.ndofs).dot(M * DenseVector::Ones(p1.ndofs)) ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(asymmetry(K) <= 1e-12 * max_abs(K));
  CHECK(asymmetry(M) <= 1e-12 * max_abs(M));
}

TEST_CASE("symmetric gradient form annihilates rigid motions") {
  const FESpace mini = build_space(grid4(), SpaceKind::MiniVector);
  const QuadratureRule q = default_volume_rule();
  const SparseMatrix A = sym_grad_matrix(mini, Coefficient::constant(1.0), q);
  const DenseVector trans =
      interpolate(mini, VectorFn([](const Vec2&, double) { return Vec2(0.7, -0.3); }), 0.0);
  CHECK(std::abs(trans.dot(A * trans)) < 1e-12);
  const DenseVector rot =
      interpolate(mini, VectorFn([](const Vec2& x, double) { return Vec2(-x.y(), x.x()); }), 0.0);
  CHECK(std::abs(rot.dot(A * rot)) < 1e-12);
  CHECK(asymmetry(A) <= 1e-12 * max_abs(A));
}

TEST_CASE("viscosity doubling doubles the matrix") {
  const FESpace mini = build_space(grid4(), SpaceKind::MiniVector);
  const QuadratureRule q = default_volume_rule();
  const SparseMatrix a1 = sym_grad_matrix(mini, Coefficient::constant(1.3), q);
  const SparseMatrix a2 = sym_grad_matrix(mini, Coefficient::constant(2.6), q);
  CHECK(max_abs(SparseMatrix(a2 - SparseMatrix(2.0 * a1))) <= 1e-13 * max_abs(a2));
}

TEST_CASE("RT0/P0 div coupling entries are exactly the incidence signs") {
  const FESpace rt0 = build_space(grid4(), SpaceKind::RT0);
  const FESpace p0 = build_space(grid4(), SpaceKind::P0Scalar);
  const SparseMatrix D = div_coupling_rt0(rt0, p0);
  for (int r = 0; r < D.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(D, r); it; ++it)
      CHECK(std::abs(it.value()) == 1.0);
}

TEST_CASE("velocity divergence of constants vanishes against all pressures") {
  const FESpace mini = build_space(grid4(), SpaceKind::MiniVector);
  const FESpace p1 = build_space(grid4(), SpaceKind::P1Scalar);
  const QuadratureRule q = default_volume_rule();
  const SparseMatrix G = div_coupling_velocity(mini, p1, q);
  const DenseVector c =
      interpolate(mini, VectorFn([](const Vec2&, double) { return Vec2(0.4, 0.9); }), 0.0);
  CHECK((G * c).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("uniform RT0 flux matches the discrete Stokes theorem per cell") {
  const Mesh& m = two_cell();
  const FESpace rt0 = build_space(m, SpaceKind::RT0);
  const FESpace p0 = build_space(m, SpaceKind::P0Scalar);
  const SparseMatrix D = div_coupling_rt0(rt0, p0);
  DenseVector J = DenseVector::Constant(rt0.ndofs, 0.8);
  for (int t = 0; t < m.num_cells(); ++t) {
    double expect = 0.0;
    for (int k = 0; k < 3; ++k) expect += m.cell_signs[t][k] * 0.8;
    CHECK((D * J)[t] == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("convection is skew symmetric for 50 random fields") {
  const FESpace mini = build_space(grid4(), SpaceKind::MiniVector);
  const QuadratureRule q = default_volume_rule();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    DenseVector w(mini.ndofs), v(mini.ndofs);
    for (int i = 0; i < mini.ndofs; ++i) {
      w[i] = u(rng);
      v[i] = u(rng);
    }
    const SparseMatrix N = convection_matrix(mini, w, q);
    CHECK(skew_defect(N) <= 1e-12 * max_abs(N));
    CHECK(std::abs(v.dot(N * v)) <= 1e-12 * max_abs(N) * v.squaredNorm());
  }
}

TEST_CASE("convection of a zero field is the zero matrix") {
  const FESpace mini = build_space(two_cell(), SpaceKind::MiniVector);
  const SparseMatrix N =
      convection_matrix(mini, DenseVector::Zero(mini.ndofs), default_volume_rule());
  CHECK(max_abs(N) == 0.0);
}

TEST_CASE("convection matches an independent dense oracle") {
  const Mesh& m = two_cell();
  const FESpace mini = build_space(m, SpaceKind::MiniVector);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseVector w(mini.ndofs);
  for (int i = 0; i < mini.ndofs; ++i) w[i] = u(rng);
  // Degree-8 integrand (bubble^2 x bubble gradient): compare under the same
  // degree by handing the oracle's rule order to both? The implementation is
  // pinned at degree 6, so compare on vertex-only fields where the integrand
  // degree stays within 6.
  for (int t = 0; t < m.num_cells(); ++t) {
    w[2 * m.num_vertices() + 2 * t] = 0.0;
    w[2 * m.num_vertices() + 2 * t + 1] = 0.0;
  }
  const SparseMatrix N = convection_matrix(mini, w, default_volume_rule());
  const Eigen::MatrixXd expect = dense_convection(m, mini, w);
  // Rows/cols touching bubble trial/test functions still carry degree-7
  // products; restrict the exact comparison to vertex blocks.
  for (int v1 = 0; v1 < 2 * m.num_vertices(); ++v1)
    for (int v2 = 0; v2 < 2 * m.num_vertices(); ++v2)
      CHECK(N.coeff(v1, v2) == doctest::Approx(expect(v1, v2)).epsilon(1e-12));
}

TEST_CASE("cross coupling: zero field, constant-field integral, antisymmetry") {
  const Mesh& m = grid4();
  const FESpace mini = build_space(m, SpaceKind::MiniVector);
  const FESpace rt0 = build_space(m, SpaceKind::RT0);
  const QuadratureRule q = default_volume_rule();

  CHECK(max_abs(cross_b_coupling(rt0, mini, Coefficient::constant(0.0), q)) == 0.0);

  // (a x B, K) with a = (0,1), K = (1,0), b = 1: integrand a2 K1 - a1 K2 = 1.
  const SparseMatrix C = cross_b_coupling(rt0, mini, Coefficient::constant(1.0), q);
  const DenseVector a =
      interpolate(mini, VectorFn([](const Vec2&, double) { return Vec2(0.0, 1.0); }), 0.0);
  const DenseVector K =
      interpolate(rt0, VectorFn([](const Vec2&, double) { return Vec2(1.0, 0.0); }), 0.0);
  CHECK(K.dot(C * a) == doctest::Approx(1.0).epsilon(1e-12));

  const SparseMatrix Crev = cross_b_coupling(mini, rt0, Coefficient::constant(1.0), q);
  CHECK(max_abs(SparseMatrix(C + SparseMatrix(Crev.transpose()))) <= 1e-12 * max_abs(C));
}

TEST_CASE("jb stabilization identities") {
  const FESpace rt0 = build_space(grid4(), SpaceKind::RT0);
  const QuadratureRule q = default_volume_rule();
  CHECK(max_abs(jb_stabilization(rt0, Coefficient::constant(2.0), 0.0, q)) == 0.0);

  const SparseMatrix S = jb_stabilization(rt0, Coefficient::constant(1.4), 0.25, q);
  const SparseMatrix M = rt0_mass_matrix(rt0, Coefficient::constant(1.0), q);
  CHECK(max_abs(SparseMatrix(S - SparseMatrix(0.25 * 1.4 * 1.4 * M))) <= 1e-13 * max_abs(S));

  const SparseMatrix S2 = jb_stabilization(rt0, Coefficient::constant(2.8), 0.25, q);
  CHECK(max_abs(SparseMatrix(S2 - SparseMatrix(4.0 * S))) <= 1e-12 * max_abs(S2));
}

TEST_CASE("phase gradient stabilization scaling") {
  const FESpace p1 = build_space(grid4(), SpaceKind::P1Scalar);
  const QuadratureRule q = default_volume_rule();
  const double tau = 0.37;
  CHECK(max_abs(phase_grad_stabilization(p1, DenseVector::Zero(p1.ndofs), tau, q)) == 0.0);

  const SparseMatrix K = stiffness_matrix(p1, Coefficient::constant(1.0), q);
  const SparseMatrix s1 =
      phase_grad_stabilization(p1, DenseVector::Ones(p1.ndofs), tau, q);
  CHECK(max_abs(SparseMatrix(s1 - SparseMatrix(tau * K))) <= 1e-13 * max_abs(s1));

  const SparseMatrix sc =
      phase_grad_stabilization(p1, DenseVector::Constant(p1.ndofs, 1.8), tau, q);
  CHECK(max_abs(SparseMatrix(sc - SparseMatrix(1.8 * 1.8 * s1))) <= 1e-12 * max_abs(sc));
}

TEST_CASE("loads: zero function, constant source, gradient-test identities") {
  const Mesh& m = grid4();
  const FESpace mini = build_space(m, SpaceKind::MiniVector);
  const FESpace p1 = build_space(m, SpaceKind::P1Scalar);
  const QuadratureRule q = default_volume_rule();

  CHECK(load_scalar(p1, ScalarFn([](const Vec2&, double) { return 0.0; }), 0.0, q)
            .cwiseAbs()
            .maxCoeff() == 0.0);

  // (f, v) with f = (1,0) paired with the constant interpolant is the area.
  const DenseVector L =
      load_vector2(mini, VectorFn([](const Vec2&, double) { return Vec2(1.0, 0.0); }), 0.0, q);
  const DenseVector ex =
      interpolate(mini, VectorFn([](const Vec2&, double) { return Vec2(1.0, 0.0); }), 0.0);
  const DenseVector ey =
      interpolate(mini, VectorFn([](const Vec2&, double) { return Vec2(0.0, 1.0); }), 0.0);
  CHECK(L.dot(ex) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(L.dot(ey) == doctest::Approx(0.0).epsilon(1e-12));

  // (phi u, grad psi) pairs to zero with the constant test function.
  const DenseVector phi =
      interpolate(p1, ScalarFn([](const Vec2& x, double) { return 1.0 + x.x(); }), 0.0);
  const DenseVector u =
      interpolate(mini, VectorFn([](const Vec2& x, double) { return Vec2(x.y(), 1.0); }), 0.0);
  const DenseVector adv = load_phi_u_grad(p1, phi, mini, u, q);
  CHECK(std::abs(adv.sum()) < 1e-13);
}

TEST_CASE("assembled operators are linear in their coefficients") {
  const FESpace p1 = build_space(grid4(), SpaceKind::P1Scalar);
  const QuadratureRule q = default_volume_rule();
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  DenseVector c1(p1.ndofs), c2(p1.ndofs);
  for (int i = 0; i < p1.ndofs; ++i) {
    c1[i] = u(rng);
    c2[i] = u(rng);
  }
  const SparseMatrix m1 = mass_matrix(p1, Coefficient::p1_field(p1, c1), q);
  const SparseMatrix m2 = mass_matrix(p1, Coefficient::p1_field(p1, c2), q);
  const DenseVector csum = c1 + c2;
  const SparseMatrix msum = mass_matrix(p1, Coefficient::p1_field(p1, csum), q);
  CHECK(max_abs(SparseMatrix(msum - SparseMatrix(m1 + m2))) <= 1e-12 * max_abs(msum));
}

TEST_CASE("load_f_potential agrees with quadrature of f(phi)") {
  const FESpace p1 = build_space(two_cell(), SpaceKind::P1Scalar);
  const QuadratureRule q = default_volume_rule();
  // phi = 2(x+y) - 1 spans both truncation branches over the square.
  const DenseVector phi = interpolate(
      p1, ScalarFn([](const Vec2& x, double) { return 2.0 * (x.x() + x.y()) - 1.0; }), 0.0);
  const DenseVector g = load_f_potential(p1, phi, q);
  // Pairing with the constant 1: integral of f(phi) by independent sampling.
  const Mesh& m = two_cell();
  double expect = 0.0;
  for (int t = 0; t < m.num_cells(); ++t) {
    const CellGeometry geo = cell_geometry(m, t);
    for (int qp = 0; qp < q.size(); ++qp) {
      const Vec2 x = geo.point(q.points[qp]);
      expect += 2.0 * geo.area * q.weights[qp] * f_eval(2.0 * (x.x() + x.y()) - 1.0);
    }
  }
  CHECK(g.sum() == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("boundary scalar load integrates data over a marked side") {
  const Mesh& m = grid4();
  const FESpace p1 = build_space(m, SpaceKind::P1Scalar);
  // g = 1 on the bottom: total mass of the load is the side length.
  const auto facets = boundary_facets(m, "bottom");
  const DenseVector L = load_boundary_scalar(
      p1, [](const Vec2&, const Vec2&, double) { return 1.0; }, 0.0, facets);
  CHECK(L.sum() == doctest::Approx(1.0).epsilon(1e-13));
  // The outward normal on the bottom is (0,-1).
  const DenseVector Ln = load_boundary_scalar(
      p1, [](const Vec2&, const Vec2& n, double) { return n.y(); }, 0.0, facets);
  CHECK(Ln.sum() == doctest::Approx(-1.0).epsilon(1e-13));
}

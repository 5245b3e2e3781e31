#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "chimhd/experiments.hpp"

using namespace chimhd;

TEST_CASE("forcing oracle: temporal case satisfies the strong equations") {
  const ForcingReport rep = verify_forcing(temporal_case());
  INFO(rep.summary());
  CHECK(rep.pass);
  CHECK(rep.worst <= 1e-5);
}

TEST_CASE("forcing oracle: spatial case satisfies the strong equations") {
  const ForcingReport rep = verify_forcing(spatial_case());
  INFO(rep.summary());
  CHECK(rep.pass);
}

TEST_CASE("corrupting one forcing term by +1 is detected and named") {
  ProblemCase pc = temporal_case();
  const ScalarFn orig = pc.forcing->f_phi;
  pc.forcing->f_phi = [orig](const Vec2& x, double t) { return orig(x, t) + 1.0; };
  const ForcingReport rep = verify_forcing(pc);
  CHECK_FALSE(rep.pass);
  CHECK(rep.worst_equation == 5);
  CHECK(rep.worst == doctest::Approx(1.0).epsilon(1e-3));

  ProblemCase pj = temporal_case();
  const VectorFn origj = pj.forcing->f_j;
  pj.forcing->f_j = [origj](const Vec2& x, double t) {
    return (origj(x, t) + Vec2(1.0, 0.0)).eval();
  };
  const ForcingReport repj = verify_forcing(pj);
  CHECK_FALSE(repj.pass);
  CHECK(repj.worst_equation == 3);
}

TEST_CASE("exact velocities are divergence free (sampled)") {
  for (const ProblemCase& pc : {temporal_case(), spatial_case()}) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    const double d = 1e-6;
    for (int k = 0; k < 50; ++k) {
      const Vec2 x(u(rng), u(rng));
      const double t = u(rng);
      const double div =
          (pc.exact->u(x + Vec2(d, 0), t).x() - pc.exact->u(x - Vec2(d, 0), t).x() +
           pc.exact->u(x + Vec2(0, d), t).y() - pc.exact->u(x - Vec2(0, d), t).y()) /
          (2 * d);
      CHECK(std::abs(div) <= 1e-6);
    }
  }
}

TEST_CASE("case constructors are pure") {
  const ProblemCase a = square_bubble_case();
  const ProblemCase b = square_bubble_case();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 25; ++k) {
    const Vec2 x(u(rng), u(rng));
    CHECK(a.phi0(x, 0.0) == b.phi0(x, 0.0));
  }
  CHECK(a.params.tau == b.params.tau);
  CHECK(a.nx == b.nx);
}

TEST_CASE("case catalog parameters match the experiment definitions") {
  const ProblemCase sq = square_bubble_case();
  CHECK(sq.params.epsilon == 0.01);
  CHECK(sq.params.lambda == 0.1);
  CHECK(sq.params.mobility == 0.1);
  CHECK(sq.params.eta1 == 1.0);
  CHECK(sq.params.sigma1 == 1.0);
  CHECK(sq.params.b == 1.0);
  CHECK(sq.nx == 64);
  CHECK(sq.params.tau == 0.01);
  CHECK(sq.params.T == 1.0);

  const ProblemCase kiss = kissing_bubbles_case();
  CHECK(kiss.params.T == 15.0);
  // phi0 = +1 inside each bubble, -1 outside both
  CHECK(kiss.phi0(Vec2(0.3, 0.5), 0.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(kiss.phi0(Vec2(0.7, 0.5), 0.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(kiss.phi0(Vec2(0.05, 0.05), 0.0) == doctest::Approx(-1.0).epsilon(1e-6));

  const ProblemCase kh = kelvin_helmholtz_case();
  CHECK(kh.x1 == 0.5);
  CHECK(kh.ny == 128);
  CHECK(kh.params.eta1 == 0.0002);
  CHECK(kh.params.lambda == 0.001);
  CHECK(kh.params.mobility == 0.01);
  // boundary data: +-(1,0) at the top/bottom walls, shear profile laterally
  CHECK(kh.u_dirichlet(Vec2(0.25, 1.0), 0.0).x() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(kh.u_dirichlet(Vec2(0.25, 0.0), 0.0).x() == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(kh.u_dirichlet(Vec2(0.0, 0.5), 0.0).x() == doctest::Approx(0.0).epsilon(1e-9));

  const ProblemCase g = gravity_case(0.005);
  CHECK(g.params.lambda == 0.005);
  CHECK(g.params.sigma1 == 100.0);
  CHECK(g.params.mobility == 0.001);
  CHECK(g.params.use_gravity);
  CHECK(g.params.gravity.y() == 10.0);
  // bubble is the phi > 0 region
  CHECK(g.phi0(Vec2(0.5, 0.8), 0.0) > 0.99);
  CHECK(g.phi0(Vec2(0.1, 0.1), 0.0) < -0.99);
}

TEST_CASE("square bubble initial profile: -1 inside the square, +1 outside") {
  const ProblemCase sq = square_bubble_case();
  CHECK(sq.phi0(Vec2(0.5, 0.5), 0.0) == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(sq.phi0(Vec2(0.05, 0.05), 0.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sq.phi0(Vec2(0.5, 0.65), 0.0) < 0.0);  // inside the [0.3,0.7]^2 square
  CHECK(sq.phi0(Vec2(0.5, 0.85), 0.0) > 0.0);
}

TEST_CASE("case lookup by name") {
  CHECK(case_by_name("temporal").name == "temporal");
  CHECK(case_by_name("kelvin-helmholtz").ny == 128);
  CHECK(case_by_name("gravity", 0.001).params.lambda == 0.001);
  CHECK_THROWS(case_by_name("nonsense"));
}

TEST_CASE("invariant suite passes on a clean build") {
  for (const CheckResult& c : run_invariant_suite(1234)) {
    INFO(c.name << " " << c.detail);
    CHECK(c.pass);
  }
}

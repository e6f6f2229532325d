#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "diffcurv/circle.hpp"
#include "diffcurv/curvature.hpp"
#include "diffcurv/rigid_body.hpp"
#include "oracles.hpp"

using diffcurv::CircleMetric;
using diffcurv::curvature;
using diffcurv::duality_residual;
using diffcurv::RigidBodyMetric;
using diffcurv::TrigPoly;
using Eigen::Vector3d;

TEST_CASE("so(3) coadjoint operator") {
  SUBCASE("middle-axis rotation is steady") {
    const RigidBodyMetric m(Vector3d(1.0, 2.0, 3.0));
    const Vector3d e2(0, 1, 0);
    CHECK(m.ad_star(e2, e2).norm() == doctest::Approx(0.0));
    CHECK(m.euler_rhs(e2).norm() == doctest::Approx(0.0));
  }

  SUBCASE("equal moments make every state steady") {
    const RigidBodyMetric m(Vector3d(2.0, 2.0, 2.0));
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> amp(-1, 1);
    for (int i = 0; i < 10; ++i) {
      const Vector3d u(amp(rng), amp(rng), amp(rng));
      CHECK(m.ad_star(u, u).norm() < 1e-15);
    }
  }

  SUBCASE("componentwise Euler equations") {
    // du1/dt = (l2-l3)/l1 u2 u3 and cyclic, at u = (1,1,0).
    const Vector3d lam(1.0, 2.0, 3.0);
    const RigidBodyMetric m(lam);
    const Vector3d u(1, 1, 0);
    const Vector3d rhs = m.euler_rhs(u);
    CHECK(rhs[0] == doctest::Approx((lam[1] - lam[2]) / lam[0] * u[1] * u[2]));
    CHECK(rhs[1] == doctest::Approx((lam[2] - lam[0]) / lam[1] * u[0] * u[2]));
    CHECK(rhs[2] == doctest::Approx((lam[0] - lam[1]) / lam[2] * u[0] * u[1]));
    CHECK(rhs[2] == doctest::Approx(-1.0 / 3.0));
  }

  SUBCASE("duality identity") {
    const RigidBodyMetric m(Vector3d(0.7, 1.3, 2.1));
    const Vector3d e1 = Vector3d::Unit(0), e2 = Vector3d::Unit(1), e3 = Vector3d::Unit(2);
    CHECK(std::abs(duality_residual(m, e1, e2, e3)) < 1e-15);
    CHECK(m.inner(m.ad_star(e2, e1), Vector3d::Zero()) == 0.0);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> amp(-1, 1);
    for (int i = 0; i < 50; ++i) {
      const Vector3d u(amp(rng), amp(rng), amp(rng));
      const Vector3d v(amp(rng), amp(rng), amp(rng));
      const Vector3d w(amp(rng), amp(rng), amp(rng));
      CHECK(std::abs(duality_residual(m, u, v, w)) < 1e-10);
    }
  }
}

TEST_CASE("so(3) sectional curvature") {
  SUBCASE("bi-invariant metric: S = |u x v|^2 / 4") {
    const RigidBodyMetric m(Vector3d(1, 1, 1));
    const Vector3d u(1, 0, 0), v(0, 2, 0);
    CHECK(curvature(m, u, v).S == doctest::Approx(1.0).epsilon(1e-13));
    const Vector3d a(0.3, -0.2, 0.9), b(1.1, 0.4, -0.5);
    CHECK(curvature(m, a, b).S ==
          doctest::Approx(0.25 * a.cross(b).squaredNorm()).epsilon(1e-12));
  }

  SUBCASE("quadratic-form coefficients at moments (4/5, 1, 6/5)") {
    const RigidBodyMetric m(Vector3d(0.8, 1.0, 1.2));
    const Vector3d e1 = Vector3d::Unit(0), e2 = Vector3d::Unit(1), e3 = Vector3d::Unit(2);
    // independent evaluation of the displayed first coefficient: 1/120
    CHECK(curvature(m, e2, e1).S == doctest::Approx(1.0 / 120.0).epsilon(1e-12));
    // the second section is positive (41/80); the displayed second
    // coefficient evaluates to -71/80 and cannot be the curvature
    CHECK(curvature(m, e2, e3).S == doctest::Approx(41.0 / 80.0).epsilon(1e-12));
    CHECK(curvature(m, e2, e3).S > 0.0);
  }

  SUBCASE("collapsed plane is degenerate") {
    const RigidBodyMetric m(Vector3d(1, 2, 3));
    const Vector3d u(0.3, 0.5, -0.7);
    const auto r = curvature(m, u, u);
    CHECK(r.degenerate);
    CHECK(std::abs(r.S) < 1e-12);
  }
}

TEST_CASE("curvature invariances") {
  std::mt19937 rng(2718);
  std::uniform_real_distribution<double> amp(-1, 1);

  SUBCASE("so(3): symmetry, scaling, plane dependence") {
    const RigidBodyMetric m(Vector3d(0.6, 1.1, 1.9));
    for (int i = 0; i < 30; ++i) {
      const Vector3d u(amp(rng), amp(rng), amp(rng));
      const Vector3d v(amp(rng), amp(rng), amp(rng));
      const auto ruv = curvature(m, u, v);
      const auto rvu = curvature(m, v, u);
      CHECK(ruv.S == doctest::Approx(rvu.S).epsilon(1e-10));
      const double c = 1.0 + amp(rng);
      const auto scaled = curvature(m, (c * u).eval(), v);
      CHECK(scaled.S == doctest::Approx(c * c * ruv.S).epsilon(1e-10));
      if (!ruv.degenerate && !scaled.degenerate)
        CHECK(scaled.K == doctest::Approx(ruv.K).epsilon(1e-9));
      const double t = amp(rng);
      const auto sheared = curvature(m, u, (v + t * u).eval());
      CHECK(sheared.S == doctest::Approx(ruv.S).epsilon(1e-9));
      if (!ruv.degenerate && !sheared.degenerate)
        CHECK(sheared.K == doctest::Approx(ruv.K).epsilon(1e-9));
    }
  }

  SUBCASE("circle metrics: symmetry and plane dependence") {
    for (const auto& m :
         {CircleMetric::sobolev_ab(1.0, 1.0), CircleMetric::mean_weighted_h1(1.0)}) {
      for (int i = 0; i < 15; ++i) {
        const TrigPoly u = oracles::random_trig1(rng, 4);
        const TrigPoly v = oracles::random_trig1(rng, 4);
        const auto ruv = curvature(m, u, v);
        CHECK(curvature(m, v, u).S == doctest::Approx(ruv.S).epsilon(1e-10));
        const double t = amp(rng);
        CHECK(curvature(m, u, v + t * u).S == doctest::Approx(ruv.S).epsilon(1e-9));
      }
    }
  }

  SUBCASE("homogeneous quotient: plane dependence with the isotropy term") {
    const CircleMetric m = CircleMetric::homogeneous_h1();
    for (int i = 0; i < 15; ++i) {
      const TrigPoly u = oracles::random_trig1(rng, 4, true);
      const TrigPoly v = oracles::random_trig1(rng, 4, true);
      const auto ruv = curvature(m, u, v);
      CHECK(curvature(m, v, u).S == doctest::Approx(ruv.S).epsilon(1e-10));
      const double t = amp(rng);
      CHECK(curvature(m, u, v + t * u).S == doctest::Approx(ruv.S).epsilon(1e-9));
    }
  }
}

TEST_CASE("gram degeneracy threshold") {
  const CircleMetric m = CircleMetric::sobolev_ab(1.0, 1.0);
  const TrigPoly u = TrigPoly::cosx(1);
  const auto r = curvature(m, u, u * 2.0);
  CHECK(r.degenerate);
  const auto good = curvature(m, u, TrigPoly::sinx(1));
  CHECK_FALSE(good.degenerate);
  CHECK(good.K * good.gram() == doctest::Approx(good.S).epsilon(1e-12));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "diffcurv/circle.hpp"
#include "diffcurv/curvature.hpp"
#include "diffcurv/torus.hpp"
#include "oracles.hpp"

using diffcurv::curvature;
using diffcurv::duality_residual;
using diffcurv::kTwoPi;
using diffcurv::Mode;
using diffcurv::poisson;
using diffcurv::sgrad;
using diffcurv::TorusSobolevMetric;
using diffcurv::TorusStreamMetric;
using diffcurv::TrigPoly;
using diffcurv::VectorField2;

namespace {

TrigPoly lift_x_only(const TrigPoly& p) {
  TrigPoly q = TrigPoly::zero(2);
  for (const auto& [n, a] : p.terms()) {
    q.add_term(false, {n[0], 0}, a.c);
    q.add_term(true, {n[0], 0}, a.s);
  }
  return q;
}

}  // namespace

TEST_CASE("three-parameter coadjoint operator") {
  SUBCASE("shear pair closed forms") {
    const double a = 1.0, b = 1.0, c = 1.0;
    const TorusSobolevMetric m(a, b, c);
    const int n = 1;
    const double k = kTwoPi * n;
    const TrigPoly sk = TrigPoly::harmonic(true, {n, 0}, 1.0, 2);
    const VectorField2 u{TrigPoly::zero(2), sk};  // sin(kx) d/dy
    const VectorField2 v{sk, TrigPoly::zero(2)};  // sin(kx) d/dx

    const VectorField2 asvu = m.ad_star(v, u);
    CHECK(asvu.x.is_zero());
    CHECK(asvu.y.coef({2 * n, 0}).s ==
          doctest::Approx(k * (a + c * k * k) / (a + 4.0 * c * k * k)).epsilon(1e-13));

    CHECK(m.ad_star(u, v).x.is_zero());
    CHECK(m.ad_star(u, v).y.is_zero());

    const VectorField2 asuu = m.ad_star(u, u);
    CHECK(asuu.y.is_zero());
    CHECK(asuu.x.coef({2 * n, 0}).s ==
          doctest::Approx(k * (a + c * k * k) / (2.0 * (a + 4.0 * b * k * k))).epsilon(1e-13));

    const VectorField2 asvv = m.ad_star(v, v);
    CHECK(asvv.y.is_zero());
    CHECK(asvv.x.coef({2 * n, 0}).s ==
          doctest::Approx(3.0 * k * (a + b * k * k) / (2.0 * (a + 4.0 * b * k * k)))
              .epsilon(1e-13));

    // ad_u v = (k/2) sin(2kx) d/dy
    const VectorField2 aduv = -1.0 * m.bracket(u, v);
    CHECK(aduv.x.is_zero());
    CHECK(aduv.y.coef({2 * n, 0}).s == doctest::Approx(0.5 * k).epsilon(1e-14));
  }

  SUBCASE("zero argument") {
    const TorusSobolevMetric m(1.0, 2.0, 0.5);
    const VectorField2 z = VectorField2::zero();
    const VectorField2 u{TrigPoly::cosxy(1, 2), TrigPoly::sinxy(0, 1)};
    CHECK(m.ad_star(z, u).x.is_zero());
    CHECK(m.ad_star(u, z).y.is_zero());
  }

  SUBCASE("x-only fields reduce to the circle operator") {
    std::mt19937 rng(7);
    const TorusSobolevMetric m(1.5, 0.5, 2.0);  // c must not matter
    const diffcurv::CircleMetric ab = diffcurv::CircleMetric::sobolev_ab(1.5, 0.5);
    for (int i = 0; i < 10; ++i) {
      const TrigPoly f = oracles::random_trig1(rng, 3);
      const TrigPoly g = oracles::random_trig1(rng, 3);
      const VectorField2 u{lift_x_only(f), TrigPoly::zero(2)};
      const VectorField2 v{lift_x_only(g), TrigPoly::zero(2)};
      const VectorField2 got = m.ad_star(v, u);
      const TrigPoly expected = ab.ad_star(g, f);
      CHECK(got.y.is_zero());
      CHECK(oracles::grid_gap(got.x, lift_x_only(expected)) < 1e-11);
    }
  }

  SUBCASE("duality on random triples") {
    std::mt19937 rng(13);
    for (const auto& abc :
         {std::array{1.0, 1.0, 1.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 1.0}, {1.0, 0.5, 2.0}}) {
      const TorusSobolevMetric m(abc[0], abc[1], abc[2]);
      const bool mean_zero = abc[0] == 0.0;
      for (int i = 0; i < 50; ++i) {
        const VectorField2 u = oracles::random_field2(rng, 2, mean_zero);
        const VectorField2 v = oracles::random_field2(rng, 2, mean_zero);
        const VectorField2 w = oracles::random_field2(rng, 2, mean_zero);
        CHECK(std::abs(duality_residual(m, u, v, w)) < 1e-10);
      }
    }
  }

  SUBCASE("Helmholtz split: b is invisible to divergence-free fields, c to gradients") {
    std::mt19937 rng(29);
    const TrigPoly f = oracles::random_trig2(rng, 2, true);
    const TrigPoly g = oracles::random_trig2(rng, 2, true);
    const VectorField2 divfree = sgrad(f);
    const VectorField2 grad = diffcurv::gradient(g);
    const TorusSobolevMetric m1(1.0, 1.0, 2.0), m2(1.0, 5.0, 2.0), m3(1.0, 1.0, 7.0);
    CHECK(m1.inner(divfree, divfree) == doctest::Approx(m2.inner(divfree, divfree)).epsilon(1e-12));
    CHECK(m1.inner(grad, grad) == doctest::Approx(m3.inner(grad, grad)).epsilon(1e-12));
  }
}

TEST_CASE("three-parameter curvature closed forms") {
  SUBCASE("shear pair against the rational function") {
    for (const auto& abc : {std::array{1.0, 1.0, 1.0}, {0.0, 1.0, 1.0}, {1.0, 0.0, 1.0}}) {
      const TorusSobolevMetric m(abc[0], abc[1], abc[2]);
      for (int n : {1, 2}) {
        const double k = kTwoPi * n;
        const TrigPoly sk = TrigPoly::harmonic(true, {n, 0}, 1.0, 2);
        const VectorField2 u{TrigPoly::zero(2), sk};
        const VectorField2 v{sk, TrigPoly::zero(2)};
        const double S = curvature(m, u, v).S;
        CHECK(S == doctest::Approx(diffcurv::torus_sin_pair_S(abc[0], abc[1], abc[2], k))
                       .epsilon(1e-12));
      }
    }
  }

  SUBCASE("a = 0 specialization is -5 c k^4 / 16") {
    const double k = kTwoPi;
    CHECK(diffcurv::torus_sin_pair_S(0.0, 1.0, 1.0, k) ==
          doctest::Approx(-5.0 * std::pow(k, 4) / 16.0).epsilon(1e-14));
  }

  SUBCASE("x-only sections match the 1d curvature") {
    std::mt19937 rng(41);
    const TorusSobolevMetric m(1.0, 0.5, 3.0);
    const diffcurv::CircleMetric ab = diffcurv::CircleMetric::sobolev_ab(1.0, 0.5);
    for (int i = 0; i < 10; ++i) {
      const TrigPoly f = oracles::random_trig1(rng, 3);
      const TrigPoly g = oracles::random_trig1(rng, 3);
      const VectorField2 u{lift_x_only(f), TrigPoly::zero(2)};
      const VectorField2 v{lift_x_only(g), TrigPoly::zero(2)};
      const double expected = curvature(ab, f, g).S;
      CHECK(curvature(m, u, v).S ==
            doctest::Approx(expected).epsilon(1e-10).scale(std::max(1.0, std::abs(expected))));
    }
  }
}

TEST_CASE("L2 torus metric") {
  SUBCASE("mixed shear section closed form") {
    std::mt19937 rng(53);
    const TorusSobolevMetric m(1.0, 0.0, 0.0);
    for (int i = 0; i < 10; ++i) {
      const TrigPoly f = oracles::random_trig1(rng, 2);
      const TrigPoly g = oracles::random_trig1(rng, 2);
      const VectorField2 u{lift_x_only(f), TrigPoly::zero(2)};
      const VectorField2 w{TrigPoly::zero(2), lift_x_only(g)};
      const double expected = diffcurv::l2_mixed_section_S(1.0, f, g);
      CHECK(curvature(m, u, w).S ==
            doctest::Approx(expected).epsilon(1e-11).scale(std::max(1.0, std::abs(expected))));
    }
  }

  SUBCASE("zero argument gives zero") {
    const TorusSobolevMetric m(1.0, 0.0, 0.0);
    const VectorField2 u{lift_x_only(TrigPoly::sinx(1)), TrigPoly::zero(2)};
    const auto r = curvature(m, u, VectorField2::zero());
    CHECK(r.S == 0.0);
    CHECK(r.degenerate);
  }
}

TEST_CASE("torus curvature invariances") {
  std::mt19937 rng(97);
  std::uniform_real_distribution<double> amp(-1, 1);

  SUBCASE("three-parameter metric, including the degenerate a = 0 case") {
    for (const auto& abc : {std::array{1.0, 0.5, 2.0}, {0.0, 1.0, 1.0}}) {
      const TorusSobolevMetric m(abc[0], abc[1], abc[2]);
      const bool mean_zero = abc[0] == 0.0;
      for (int i = 0; i < 10; ++i) {
        const VectorField2 u = oracles::random_field2(rng, 2, mean_zero);
        const VectorField2 v = oracles::random_field2(rng, 2, mean_zero);
        const auto ruv = curvature(m, u, v);
        CHECK(curvature(m, v, u).S ==
              doctest::Approx(ruv.S).epsilon(1e-10).scale(std::max(1.0, std::abs(ruv.S))));
        const double t = amp(rng);
        CHECK(curvature(m, u, v + t * u).S ==
              doctest::Approx(ruv.S).epsilon(1e-9).scale(std::max(1.0, std::abs(ruv.S))));
      }
    }
  }

  SUBCASE("stream metric") {
    const TorusStreamMetric m = TorusStreamMetric::enstrophy(1.0);
    for (int i = 0; i < 10; ++i) {
      const TrigPoly f = oracles::random_trig2(rng, 2, true);
      const TrigPoly g = oracles::random_trig2(rng, 2, true);
      const auto r = curvature(m, f, g);
      CHECK(curvature(m, g, f).S ==
            doctest::Approx(r.S).epsilon(1e-10).scale(std::max(1.0, std::abs(r.S))));
      const double t = amp(rng);
      CHECK(curvature(m, f, g + t * f).S ==
            doctest::Approx(r.S).epsilon(1e-9).scale(std::max(1.0, std::abs(r.S))));
    }
  }
}

TEST_CASE("skew gradients and the bracket of stream functions") {
  SUBCASE("poisson bracket of a function with itself vanishes") {
    const TrigPoly f = TrigPoly::cosxy(2, 1) + TrigPoly::sinxy(1, -1, 0.3);
    CHECK(poisson(f, f).is_zero());
  }

  SUBCASE("sgrad intertwines the brackets") {
    std::mt19937 rng(61);
    for (int i = 0; i < 10; ++i) {
      const TrigPoly f = oracles::random_trig2(rng, 2, true);
      const TrigPoly g = oracles::random_trig2(rng, 2, true);
      const VectorField2 lhs = diffcurv::lie_bracket(sgrad(f), sgrad(g));
      const VectorField2 rhs = sgrad(poisson(f, g));
      CHECK(oracles::grid_gap(lhs.x, rhs.x, 32) < 1e-10);
      CHECK(oracles::grid_gap(lhs.y, rhs.y, 32) < 1e-10);
    }
  }

  SUBCASE("single-mode product formula on the 2 pi torus") {
    // {cos(jx+ky), cos(lx+my)} =
    //   (jm-kl)/2 [cos((j-l)x+(k-m)y) - cos((j+l)x+(k+m)y)]
    const std::array<double, 2> period = {kTwoPi, kTwoPi};
    const int j = 2, k = 1, l = 1, mm = -1;
    const TrigPoly f = TrigPoly::cosxy(j, k, 1.0, period);
    const TrigPoly g = TrigPoly::cosxy(l, mm, 1.0, period);
    const TrigPoly br = poisson(f, g);
    const double wedge = j * mm - k * l;
    CHECK(br.coef({j - l, k - mm}).c == doctest::Approx(0.5 * wedge).epsilon(1e-14));
    CHECK(br.coef({j + l, k + mm}).c == doctest::Approx(-0.5 * wedge).epsilon(1e-14));
    CHECK(oracles::grid_inner(br, TrigPoly::constant(1.0, 2, period)) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("bracket means vanish identically") {
    std::mt19937 rng(67);
    const TrigPoly f = oracles::random_trig2(rng, 3);
    const TrigPoly g = oracles::random_trig2(rng, 3);
    CHECK(std::abs(poisson(f, g).mean()) < 1e-12);
  }
}

TEST_CASE("stream metric") {
  SUBCASE("coadjoint of an eigenmode pair expands in the two shifted modes") {
    const TorusStreamMetric m = TorusStreamMetric::l2();
    const Mode np{1, 0}, nq{0, 1};
    const TrigPoly f = TrigPoly::cosxy(np[0], np[1]);
    const TrigPoly g = TrigPoly::cosxy(nq[0], nq[1]);
    const Eigen::Vector2d p(kTwoPi * np[0], kTwoPi * np[1]);
    const Eigen::Vector2d q(kTwoPi * nq[0], kTwoPi * nq[1]);
    const double wedge = p[0] * q[1] - p[1] * q[0];
    // ad*_v u = -(p^q) F(p)/2 [ phi / F(p-q) - psi / F(p+q) ] at stream level
    const TrigPoly got = m.ad_star(g, f);
    const double cm = -0.5 * wedge * m.F(p) / m.F(p - q);
    const double cp = 0.5 * wedge * m.F(p) / m.F(p + q);
    CHECK(got.coef({np[0] - nq[0], np[1] - nq[1]}).c == doctest::Approx(cm).epsilon(1e-13));
    CHECK(got.coef({np[0] + nq[0], np[1] + nq[1]}).c == doctest::Approx(cp).epsilon(1e-13));
  }

  SUBCASE("self-advection of an eigenmode vanishes") {
    const TorusStreamMetric m = TorusStreamMetric::enstrophy(2.0);
    const TrigPoly f = TrigPoly::cosxy(3, -2);
    CHECK(m.ad_star(f, f).is_zero());
  }

  SUBCASE("a constant stream is inert") {
    const TorusStreamMetric m = TorusStreamMetric::l2();
    CHECK(m.ad_star(TrigPoly::constant(2.0, 2), TrigPoly::cosxy(1, 1)).is_zero());
  }

  SUBCASE("duality on random stream triples") {
    std::mt19937 rng(71);
    for (const auto& m : {TorusStreamMetric::l2(), TorusStreamMetric::enstrophy(1.0)}) {
      for (int i = 0; i < 100; ++i) {
        const TrigPoly f = oracles::random_trig2(rng, 2, true);
        const TrigPoly g = oracles::random_trig2(rng, 2, true);
        const TrigPoly h = oracles::random_trig2(rng, 2, true);
        CHECK(std::abs(duality_residual(m, f, g, h)) < 1e-10);
      }
    }
  }

  SUBCASE("constant symbol: S = |p^q|^2 F / 16, cross-checked against the engine") {
    const double F0 = 3.0;
    const TorusStreamMetric m([F0](double) { return F0; });
    const Mode np{1, 0}, nq{0, 2};
    const Eigen::Vector2d p(kTwoPi * np[0], kTwoPi * np[1]);
    const Eigen::Vector2d q(kTwoPi * nq[0], kTwoPi * nq[1]);
    const double wedge = p[0] * q[1] - p[1] * q[0];
    const double closed = diffcurv::stream_curvature_closed(m, p, q);
    CHECK(closed == doctest::Approx(wedge * wedge * F0 / 16.0).epsilon(1e-13));
    CHECK(curvature(m, TrigPoly::cosxy(np[0], np[1]), TrigPoly::cosxy(nq[0], nq[1])).S ==
          doctest::Approx(closed).epsilon(1e-12));
  }

  SUBCASE("degenerate mode configurations are rejected") {
    const TorusStreamMetric m = TorusStreamMetric::l2();
    const Eigen::Vector2d p(kTwoPi, 0.0);
    CHECK_THROWS_AS(diffcurv::stream_curvature_closed(m, p, p), diffcurv::DomainError);
    CHECK_THROWS_AS(diffcurv::stream_reference_S(p, p), diffcurv::DomainError);
  }

  SUBCASE("parallel distinct modes have zero reference curvature") {
    const Eigen::Vector2d p(kTwoPi, kTwoPi), q(2.0 * kTwoPi, 2.0 * kTwoPi);
    CHECK(diffcurv::stream_reference_S(p, q) == 0.0);
  }
}

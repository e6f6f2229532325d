#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "diffcurv/circle.hpp"
#include "diffcurv/curvature.hpp"
#include "oracles.hpp"

using diffcurv::CircleMetric;
using diffcurv::curvature;
using diffcurv::curvature_ab_direct;
using diffcurv::christoffel;
using diffcurv::duality_residual;
using diffcurv::kTwoPi;
using diffcurv::TrigPoly;

namespace {
const double kPi = M_PI;
}

TEST_CASE("christoffel map closed forms") {
  const CircleMetric m = CircleMetric::sobolev_ab(1.0, 1.0);
  const double a = 1.0, b = 1.0;

  SUBCASE("G(cos kx, cos kx) is a single second harmonic") {
    const int n = 1;
    const double k = kTwoPi * n;
    const TrigPoly g = christoffel(m, TrigPoly::cosx(n), TrigPoly::cosx(n));
    const double coeff = -(2.0 * a * k - b * k * k * k) / (2.0 * a + 8.0 * b * k * k);
    CHECK(g.term_count() == 1);
    CHECK(g.coef({2 * n, 0}).s == doctest::Approx(coeff).epsilon(1e-14));
  }

  SUBCASE("G(cos kx, cos lx) has the two-harmonic closed form") {
    const int nk = 2, nl = 1;
    const double k = kTwoPi * nk, l = kTwoPi * nl;
    const TrigPoly g = christoffel(m, TrigPoly::cosx(nk), TrigPoly::cosx(nl));
    const double cp = -(k + l) * (2.0 * a - b * k * l) / (4.0 * a + 4.0 * b * (k + l) * (k + l));
    const double cm = -(k - l) * (2.0 * a + b * k * l) / (4.0 * a + 4.0 * b * (k - l) * (k - l));
    CHECK(g.coef({nk + nl, 0}).s == doctest::Approx(cp).epsilon(1e-13));
    CHECK(g.coef({nk - nl, 0}).s == doctest::Approx(cm).epsilon(1e-13));
  }

  SUBCASE("constants map to zero and the map is symmetric and mean-free") {
    CHECK(christoffel(m, TrigPoly::constant(2.0), TrigPoly::constant(-3.0)).is_zero());
    std::mt19937 rng(5);
    for (int i = 0; i < 20; ++i) {
      const TrigPoly u = oracles::random_trig1(rng, 4);
      const TrigPoly v = oracles::random_trig1(rng, 4);
      const TrigPoly g1 = christoffel(m, u, v);
      CHECK(oracles::grid_gap(g1, christoffel(m, v, u)) < 1e-14);
      CHECK(g1.mean() == 0.0);
    }
  }
}

TEST_CASE("coadjoint operator of the a-b family") {
  SUBCASE("L2 case: ad*_v u = 2 u v_x + v u_x") {
    const CircleMetric l2 = CircleMetric::sobolev_ab(1.0, 0.0);
    const TrigPoly s1 = TrigPoly::sinx(1);
    const TrigPoly expected = TrigPoly::sinx(2, 3.0 * kPi);  // 3 pi sin(4 pi x)
    CHECK(oracles::grid_gap(l2.ad_star(s1, s1), expected) < 1e-12);
  }

  SUBCASE("bilinearity: zero argument") {
    const CircleMetric m = CircleMetric::sobolev_ab(1.0, 1.0);
    const TrigPoly z = TrigPoly::zero();
    CHECK(m.ad_star(z, TrigPoly::cosx(2)).is_zero());
    CHECK(m.ad_star(TrigPoly::cosx(2), z).is_zero());
  }

  SUBCASE("ad*_v u + ad*_u v = d(uv)/dx + 2 G(u,v) exactly") {
    const CircleMetric m = CircleMetric::sobolev_ab(2.0, 0.5);
    std::mt19937 rng(11);
    for (int i = 0; i < 25; ++i) {
      const TrigPoly u = oracles::random_trig1(rng, 4);
      const TrigPoly v = oracles::random_trig1(rng, 4);
      const TrigPoly lhs = m.ad_star(v, u) + m.ad_star(u, v);
      const TrigPoly rhs = (u * v).derivative() + 2.0 * christoffel(m, u, v);
      CHECK(oracles::grid_gap(lhs, rhs) < 1e-12);
    }
  }

  SUBCASE("ad*_u u = d(u^2)/dx / 2 + G(u,u)") {
    const CircleMetric m = CircleMetric::sobolev_ab(1.0, 1.0);
    const TrigPoly u = TrigPoly::cosx(3);
    const TrigPoly lhs = m.ad_star(u, u);
    const TrigPoly rhs = 0.5 * (u * u).derivative() + christoffel(m, u, u);
    CHECK(oracles::grid_gap(lhs, rhs) < 1e-13);
  }

  SUBCASE("duality residual on random triples") {
    std::mt19937 rng(23);
    for (const auto& m : {CircleMetric::sobolev_ab(1.0, 1.0), CircleMetric::sobolev_ab(0.5, 3.0),
                          CircleMetric::mean_weighted_h1(0.7)}) {
      for (int i = 0; i < 50; ++i) {
        const TrigPoly u = oracles::random_trig1(rng, 4);
        const TrigPoly v = oracles::random_trig1(rng, 4);
        const TrigPoly w = oracles::random_trig1(rng, 4);
        CHECK(std::abs(duality_residual(m, u, v, w)) < 1e-10);
      }
    }
    const CircleMetric hs = CircleMetric::homogeneous_h1();
    for (int i = 0; i < 50; ++i) {
      const TrigPoly u = oracles::random_trig1(rng, 4, true);
      const TrigPoly v = oracles::random_trig1(rng, 4, true);
      const TrigPoly w = oracles::random_trig1(rng, 4, true);
      CHECK(std::abs(duality_residual(hs, u, v, w)) < 1e-10);
    }
  }

  SUBCASE("a = 0 with a surviving constant mode is singular") {
    const CircleMetric m = CircleMetric::sobolev_ab(0.0, 1.0);
    const TrigPoly u = TrigPoly::constant(1.0) + TrigPoly::cosx(1);
    CHECK_THROWS_AS(m.ad_star(u, TrigPoly::sinx(1)), diffcurv::SingularModeError);
  }
}

TEST_CASE("curvature of the a-b metric") {
  SUBCASE("direct form equals the general formula") {
    std::mt19937 rng(31);
    for (const auto& [a, b] : {std::pair{1.0, 1.0}, {2.0, 0.5}, {0.5, 3.0}}) {
      const CircleMetric m = CircleMetric::sobolev_ab(a, b);
      for (int i = 0; i < 30; ++i) {
        const TrigPoly u = oracles::random_trig1(rng, 5);
        const TrigPoly v = oracles::random_trig1(rng, 5);
        const double direct = curvature_ab_direct(m, u, v);
        const double generic = curvature(m, u, v).S;
        CHECK(direct ==
              doctest::Approx(generic).epsilon(1e-10).scale(std::max(1.0, std::abs(direct))));
        CHECK(std::abs(diffcurv::l_residual(m, u, v)) < 1e-9);
      }
    }
  }

  SUBCASE("identical fields give zero") {
    const CircleMetric m = CircleMetric::sobolev_ab(1.0, 1.0);
    const TrigPoly u = TrigPoly::cosx(2) + TrigPoly::sinx(1, 0.3);
    CHECK(curvature_ab_direct(m, u, u) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(diffcurv::l_residual(m, u, u)) < 1e-12);
  }

  SUBCASE("closed form C(k,l) and companions") {
    const CircleMetric m = CircleMetric::sobolev_ab(1.0, 1.0);
    const double k = kTwoPi, l = 2.0 * kTwoPi;
    CHECK(curvature_ab_direct(m, TrigPoly::cosx(1), TrigPoly::cosx(2)) ==
          doctest::Approx(diffcurv::closed_form_C(m, k, l)).epsilon(1e-12));
    // S(cos kx, sin kx) = (a - b k^2/2)^2 k^2 / (a + 4 b k^2)
    CHECK(diffcurv::closed_form_S_cos_sin_same_k(m, k) ==
          doctest::Approx(std::pow(1.0 - 0.5 * k * k, 2) * k * k / (1.0 + 4.0 * k * k)));
    // S(cos kx, 1) = a^2 k^2 / (2 (a + b k^2))
    CHECK(diffcurv::closed_form_S_cos_const(m, k) ==
          doctest::Approx(k * k / (2.0 * (1.0 + k * k))));
    CHECK_THROWS_AS(diffcurv::closed_form_C(m, k, k), diffcurv::DomainError);
  }

  SUBCASE("hypothesis violations are rejected") {
    CHECK_THROWS_AS(curvature_ab_direct(CircleMetric::sobolev_ab(1.0, 0.0), TrigPoly::cosx(1),
                                        TrigPoly::sinx(1)),
                    diffcurv::DomainError);
  }

  SUBCASE("b -> 0 limit reaches the L2 closed form") {
    const TrigPoly u = TrigPoly::cosx(1) + TrigPoly::sinx(2, 0.4);
    const TrigPoly v = TrigPoly::sinx(1) + TrigPoly::cosx(3, 0.2);
    const double l2 = diffcurv::l2_circle_curvature(1.0, u, v);
    // the general engine at b = 0 equals the closed form
    CHECK(curvature(CircleMetric::sobolev_ab(1.0, 0.0), u, v).S ==
          doctest::Approx(l2).epsilon(1e-12));
    // and the a-b curvature converges to it linearly in b
    const double g2 = std::abs(curvature(CircleMetric::sobolev_ab(1.0, 1e-2), u, v).S - l2);
    const double g4 = std::abs(curvature(CircleMetric::sobolev_ab(1.0, 1e-4), u, v).S - l2);
    const double g6 = std::abs(curvature(CircleMetric::sobolev_ab(1.0, 1e-6), u, v).S - l2);
    CHECK(g4 < g2);
    CHECK(g6 < g4);
    CHECK(g6 / g4 == doctest::Approx(1e-2).epsilon(0.2));
    CHECK(g6 < 1e-2 * std::abs(l2));
  }
}

TEST_CASE("negative-curvature certificates") {
  SUBCASE("ratio one forces the two-harmonic construction at j = 1") {
    const double b = 1.0, a = 4.0 * kPi * kPi;  // alpha = 1
    const auto cert = diffcurv::negative_section(CircleMetric::sobolev_ab(a, b));
    CHECK(cert.regime == 2);
    CHECK(cert.j == 1);
    CHECK(cert.r == doctest::Approx(1.0));
    // P(1) = 130300
    const double expected =
        -(3.0 * std::pow(kPi, 4) * b / 64.0) * 130300.0 / (100.0 * 5.0 * 1.0);
    CHECK(cert.S_symbolic == doctest::Approx(expected).epsilon(1e-12));
    CHECK(cert.S_direct == doctest::Approx(cert.S_symbolic).epsilon(1e-8));
    CHECK(cert.S_direct < 0.0);
  }

  SUBCASE("small-ratio construction") {
    const double alpha = 0.1;
    const auto cert =
        diffcurv::negative_section(CircleMetric::sobolev_ab(4.0 * kPi * kPi * alpha, 1.0));
    CHECK(cert.regime == 1);
    CHECK(cert.S_direct == doctest::Approx(cert.S_symbolic).epsilon(1e-8));
    CHECK(cert.S_direct < 0.0);
    // u carries the tuned constant: phi = -(3/2)(alpha^2-alpha-2)/(alpha(alpha+4))
    const double phi = -1.5 * (alpha * alpha - alpha - 2.0) / (alpha * (alpha + 4.0));
    CHECK(cert.u.mean() == doctest::Approx(phi).epsilon(1e-13));
  }

  SUBCASE("the two-harmonic amplitude is defined on its whole range") {
    for (double r : {0.34, 0.5, 1.0, 1.35}) {
      const double radicand = -(73.0 * r * r - 188.0 * r + 45.0) * (r + 16.0) /
                              (128.0 * (r + 9.0) * (r - 2.0) * (r - 2.0));
      CHECK(radicand > 0.0);
    }
  }
}

TEST_CASE("mean-weighted H1 metric") {
  SUBCASE("negative sections with the tuned constant") {
    for (int k : {1, 2}) {
      for (double c : {0.5, 2.0}) {
        const CircleMetric m = CircleMetric::mean_weighted_h1(c);
        const auto [u, v] = diffcurv::mean_weighted_negative_pair(c, k);
        CHECK(curvature(m, u, v).S < 0.0);
      }
    }
  }

  SUBCASE("constant pairs are degenerate") {
    const CircleMetric m = CircleMetric::mean_weighted_h1(1.0);
    const auto r = curvature(m, TrigPoly::constant(1.0), TrigPoly::constant(2.0));
    CHECK(r.degenerate);
  }
}

TEST_CASE("homogeneous H1 quotient") {
  const CircleMetric m = CircleMetric::homogeneous_h1();

  SUBCASE("inner product is the derivative pairing") {
    CHECK(m.inner(TrigPoly::cosx(1), TrigPoly::cosx(1)) ==
          doctest::Approx(2.0 * kPi * kPi).epsilon(1e-13));
  }

  SUBCASE("round-sphere identity") {
    CHECK(curvature(m, TrigPoly::cosx(1), TrigPoly::sinx(1)).S ==
          doctest::Approx(std::pow(kPi, 4)).epsilon(1e-12));
    std::mt19937 rng(47);
    for (int i = 0; i < 20; ++i) {
      const TrigPoly u = oracles::random_trig1(rng, 5, true);
      const TrigPoly v = oracles::random_trig1(rng, 5, true);
      const auto r = curvature(m, u, v);
      const double expected = 0.25 * (r.nu2 * r.nv2 - r.uv * r.uv);
      CHECK(r.S == doctest::Approx(expected).epsilon(1e-8));
    }
  }

  SUBCASE("inputs with a mean are rejected") {
    CHECK_THROWS_AS(curvature(m, TrigPoly::constant(1.0) + TrigPoly::cosx(1), TrigPoly::sinx(1)),
                    diffcurv::DomainError);
  }

  SUBCASE("identical fields give a degenerate section") {
    const auto r = curvature(m, TrigPoly::cosx(1), TrigPoly::cosx(1));
    CHECK(r.degenerate);
    CHECK(std::abs(r.S) < 1e-12);
  }
}

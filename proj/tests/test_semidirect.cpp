#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "diffcurv/curvature.hpp"
#include "diffcurv/semidirect.hpp"
#include "oracles.hpp"

using diffcurv::curvature;
using diffcurv::duality_residual;
using diffcurv::kTwoPi;
using diffcurv::SemidirectElement;
using diffcurv::SemidirectMetric;
using diffcurv::TrigPoly;

TEST_CASE("semidirect bracket") {
  const SemidirectMetric m(1.0, 1.0);

  SUBCASE("function slots zero: the field bracket survives") {
    const TrigPoly u = TrigPoly::cosx(1), v = TrigPoly::sinx(2);
    const SemidirectElement br = m.bracket({u, TrigPoly::zero()}, {v, TrigPoly::zero()});
    CHECK(oracles::grid_gap(br.u, u * v.derivative() - u.derivative() * v) < 1e-13);
    CHECK(br.f.is_zero());
  }

  SUBCASE("bracket of an element with itself vanishes") {
    const SemidirectElement x{TrigPoly::sinx(1), TrigPoly::cosx(1, kTwoPi)};
    const SemidirectElement br = m.bracket(x, x);
    CHECK(br.u.is_zero());
    CHECK(br.f.is_zero());
  }

  SUBCASE("function slot against the grid oracle") {
    std::mt19937 rng(3);
    const SemidirectElement x{oracles::random_trig1(rng, 3), oracles::random_trig1(rng, 3)};
    const SemidirectElement y{oracles::random_trig1(rng, 3), oracles::random_trig1(rng, 3)};
    const SemidirectElement br = m.bracket(x, y);
    // second slot: u g_x - v f_x
    const TrigPoly expected = x.u * y.f.derivative() - y.u * x.f.derivative();
    CHECK(oracles::grid_gap(br.f, expected) < 1e-13);
  }
}

TEST_CASE("algebra embedding of the circle") {
  const SemidirectMetric m(2.0, 0.5);
  std::mt19937 rng(11);

  SUBCASE("the lift is a bracket homomorphism") {
    for (int i = 0; i < 20; ++i) {
      const TrigPoly u = oracles::random_trig1(rng, 4);
      const TrigPoly v = oracles::random_trig1(rng, 4);
      const SemidirectElement br = m.bracket(m.lift(u), m.lift(v));
      const TrigPoly field = u * v.derivative() - u.derivative() * v;
      CHECK(oracles::grid_gap(br.u, field) < 1e-12);
      CHECK(oracles::grid_gap(br.f, field.derivative()) < 1e-11);
    }
  }

  SUBCASE("the induced inner product is the a-b pairing") {
    const auto ab = diffcurv::CircleMetric::sobolev_ab(2.0, 0.5);
    for (int i = 0; i < 20; ++i) {
      const TrigPoly u = oracles::random_trig1(rng, 4);
      const TrigPoly v = oracles::random_trig1(rng, 4);
      CHECK(m.inner(m.lift(u), m.lift(v)) == doctest::Approx(ab.inner(u, v)).epsilon(1e-13));
    }
  }
}

TEST_CASE("semidirect duality and curvature") {
  const SemidirectMetric m(1.0, 1.0);
  std::mt19937 rng(17);

  SUBCASE("duality residual on random triples") {
    for (int i = 0; i < 50; ++i) {
      const SemidirectElement x{oracles::random_trig1(rng, 4), oracles::random_trig1(rng, 4)};
      const SemidirectElement y{oracles::random_trig1(rng, 4), oracles::random_trig1(rng, 4)};
      const SemidirectElement z{oracles::random_trig1(rng, 4), oracles::random_trig1(rng, 4)};
      CHECK(std::abs(duality_residual(m, x, y, z)) < 1e-10);
    }
  }

  SUBCASE("closed form equals the general formula") {
    for (int i = 0; i < 25; ++i) {
      const SemidirectElement x{oracles::random_trig1(rng, 4), oracles::random_trig1(rng, 4)};
      const SemidirectElement y{oracles::random_trig1(rng, 4), oracles::random_trig1(rng, 4)};
      const double closed = diffcurv::semidirect_curvature_closed(m, x, y);
      const double generic = curvature(m, x, y).S;
      CHECK(closed ==
            doctest::Approx(generic).epsilon(1e-10).scale(std::max(1.0, std::abs(closed))));
    }
  }

  SUBCASE("pure-field sections reduce to the nonnegative L2 form") {
    for (int i = 0; i < 10; ++i) {
      const TrigPoly u = oracles::random_trig1(rng, 3);
      const TrigPoly v = oracles::random_trig1(rng, 3);
      const SemidirectElement x{u, TrigPoly::zero()};
      const SemidirectElement y{v, TrigPoly::zero()};
      const double S = curvature(m, x, y).S;
      const TrigPoly w = u * v.derivative() - v * u.derivative();
      CHECK(S == doctest::Approx(l2_inner(w, w)).epsilon(1e-11));
      CHECK(S >= -1e-12);
    }
  }

  SUBCASE("identical elements give zero") {
    const SemidirectElement x{TrigPoly::cosx(1), TrigPoly::sinx(2)};
    CHECK(diffcurv::semidirect_curvature_closed(m, x, x) == doctest::Approx(0.0).epsilon(1e-13));
  }
}

TEST_CASE("the T and Q maps") {
  const SemidirectMetric m(1.0, 1.0);

  SUBCASE("single-mode closed form") {
    const int n = 1;
    const double k = kTwoPi * n, a = 1.0, b = 1.0;
    const TrigPoly t = diffcurv::t_map(m, TrigPoly::cosx(n), TrigPoly::cosx(n));
    CHECK(t.mean() == doctest::Approx((0.5 * a + 0.25 * b * k * k) / a).epsilon(1e-13));
    CHECK(t.coef({2 * n, 0}).c ==
          doctest::Approx((0.5 * a - 0.25 * b * k * k) / (a + 4.0 * b * k * k)).epsilon(1e-13));
  }

  SUBCASE("constants: T multiplies, Q vanishes") {
    const TrigPoly c0 = TrigPoly::constant(3.0), v = TrigPoly::constant(-2.0);
    CHECK(diffcurv::t_map(m, c0, v).mean() == doctest::Approx(-6.0));
    CHECK(diffcurv::q_map(m, c0, v).is_zero());
  }

  SUBCASE("differential identities tie G, T and Q together") {
    std::mt19937 rng(23);
    const auto ab = diffcurv::CircleMetric::sobolev_ab(1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
      const TrigPoly u = oracles::random_trig1(rng, 4);
      const TrigPoly v = oracles::random_trig1(rng, 4);
      const TrigPoly t = diffcurv::t_map(m, u, v);
      const TrigPoly q = diffcurv::q_map(m, u, v);
      const TrigPoly gamma = diffcurv::christoffel(ab, u, v);
      CHECK(oracles::grid_gap(gamma, t.derivative()) < 1e-11);
      CHECK(oracles::grid_gap(q, -gamma.derivative()) < 1e-10);
    }
  }
}

TEST_CASE("second fundamental form") {
  const SemidirectMetric m(1.0, 1.0);
  std::mt19937 rng(31);

  SUBCASE("orthogonal to every lifted tangent") {
    for (int i = 0; i < 20; ++i) {
      const TrigPoly u = oracles::random_trig1(rng, 4);
      const TrigPoly v = oracles::random_trig1(rng, 4);
      const TrigPoly w = oracles::random_trig1(rng, 4);
      const SemidirectElement pi = diffcurv::second_fundamental_form(m, u, v);
      const double ip = m.inner(pi, m.lift(w));
      const double scale = std::sqrt(m.inner(pi, pi) * m.inner(m.lift(w), m.lift(w))) + 1e-300;
      CHECK(std::abs(ip) / scale < 1e-10);
    }
  }

  SUBCASE("symmetric by polarization") {
    const TrigPoly u = TrigPoly::cosx(2), v = TrigPoly::sinx(1);
    const SemidirectElement a = diffcurv::second_fundamental_form(m, u, v);
    const SemidirectElement b = diffcurv::second_fundamental_form(m, v, u);
    CHECK(oracles::grid_gap(a.u, b.u) < 1e-13);
    CHECK(oracles::grid_gap(a.f, b.f) < 1e-13);
  }

  SUBCASE("submanifold curvature assembles from the ambient one") {
    const auto ab = diffcurv::CircleMetric::sobolev_ab(1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
      const TrigPoly u = oracles::random_trig1(rng, 4);
      const TrigPoly v = oracles::random_trig1(rng, 4);
      const double direct = diffcurv::curvature_ab_direct(ab, u, v);
      const double assembled = diffcurv::gauss_codazzi_curvature(m, u, v);
      CHECK(assembled ==
            doctest::Approx(direct).epsilon(1e-9).scale(std::max(1.0, std::abs(direct))));
    }
  }
}

TEST_CASE("semidirect curvature invariances") {
  const SemidirectMetric m(1.0, 1.0);
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> amp(-1, 1);
  for (int i = 0; i < 15; ++i) {
    const SemidirectElement x{oracles::random_trig1(rng, 3), oracles::random_trig1(rng, 3)};
    const SemidirectElement y{oracles::random_trig1(rng, 3), oracles::random_trig1(rng, 3)};
    const auto r = curvature(m, x, y);
    CHECK(curvature(m, y, x).S ==
          doctest::Approx(r.S).epsilon(1e-10).scale(std::max(1.0, std::abs(r.S))));
    const double t = amp(rng);
    CHECK(curvature(m, x, y + t * x).S ==
          doctest::Approx(r.S).epsilon(1e-9).scale(std::max(1.0, std::abs(r.S))));
  }
}

TEST_CASE("three equivalent curvature expressions") {
  std::mt19937 rng(37);

  SUBCASE("specific pair") {
    const SemidirectMetric m(1.0, 1.0);
    const auto rw = diffcurv::rewrite_check(m, TrigPoly::cosx(1), TrigPoly::sinx(1));
    CHECK(rw.max_mismatch() < 1e-10);
  }

  SUBCASE("identical fields make all three vanish") {
    const SemidirectMetric m(2.0, 0.5);
    const TrigPoly u = TrigPoly::cosx(1) + TrigPoly::sinx(3, 0.4);
    const auto rw = diffcurv::rewrite_check(m, u, u);
    CHECK(std::abs(rw.direct) < 1e-11);
    CHECK(std::abs(rw.t_form) < 1e-11);
    CHECK(std::abs(rw.q_form) < 1e-11);
  }

  SUBCASE("random pairs across parameter settings") {
    for (const auto& [a, b] : {std::pair{1.0, 1.0}, {2.0, 0.5}, {0.5, 3.0}}) {
      const SemidirectMetric m(a, b);
      for (int i = 0; i < 30; ++i) {
        const TrigPoly u = oracles::random_trig1(rng, 4);
        const TrigPoly v = oracles::random_trig1(rng, 4);
        CHECK(diffcurv::rewrite_check(m, u, v).max_mismatch() < 1e-9);
      }
    }
  }
}

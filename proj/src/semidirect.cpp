#include "diffcurv/semidirect.hpp"

#include <algorithm>
#include <cmath>

namespace diffcurv {

SemidirectMetric::SemidirectMetric(double a, double b, double period)
    : a_(a), b_(b), period_(period) {
  if (a <= 0 || b <= 0) throw DomainError("SemidirectMetric: need a > 0 and b > 0");
}

double SemidirectMetric::inner(const Element& x, const Element& y) const {
  return a_ * l2_inner(x.u, y.u) + b_ * l2_inner(x.f, y.f);
}

SemidirectMetric::Element SemidirectMetric::bracket(const Element& x, const Element& y) const {
  // [(u,f),(v,g)] = (u v_x - u_x v, u g_x - v f_x)
  return {x.u * y.u.derivative() - x.u.derivative() * y.u,
          x.u * y.f.derivative() - y.u * x.f.derivative()};
}

SemidirectMetric::Element SemidirectMetric::ad_star(const Element& x, const Element& y) const {
  const TrigPoly& u = x.u;
  const TrigPoly& f = x.f;
  const TrigPoly& v = y.u;
  const TrigPoly& g = y.f;
  return {2.0 * (u.derivative() * v) + u * v.derivative() + (b_ / a_) * (g * f.derivative()),
          g * u.derivative() + g.derivative() * u};
}

double semidirect_curvature_closed(const SemidirectMetric& m, const SemidirectElement& x,
                                   const SemidirectElement& y) {
  const TrigPoly& u = x.u;
  const TrigPoly& f = x.f;
  const TrigPoly& v = y.u;
  const TrigPoly& g = y.f;
  const double a = m.a(), b = m.b();

  const TrigPoly first = u * v.derivative() - v * u.derivative() +
                         (b / (2.0 * a)) * (g * f.derivative() - f * g.derivative());
  const TrigPoly w1 = g * u.derivative() - f * v.derivative();
  const TrigPoly w2 = w1 + 8.0 * (v * f.derivative()) - 8.0 * (u * g.derivative());
  return a * l2_inner(first, first) + 0.25 * b * l2_inner(w1, w2);
}

TrigPoly t_map(const SemidirectMetric& m, const TrigPoly& u, const TrigPoly& v) {
  const CircleMetric ab = CircleMetric::sobolev_ab(m.a(), m.b(), m.period());
  const TrigPoly q = m.a() * (u * v) + 0.5 * m.b() * (u.derivative() * v.derivative());
  return ab.solve_inertia(q);
}

TrigPoly q_map(const SemidirectMetric& m, const TrigPoly& u, const TrigPoly& v) {
  return -t_map(m, u, v).derivative().derivative();
}

SemidirectElement second_fundamental_form(const SemidirectMetric& m, const TrigPoly& u,
                                          const TrigPoly& v) {
  const TrigPoly q = q_map(m, u, v);
  return {(m.b() / m.a()) * q.derivative(), q};
}

double gauss_codazzi_curvature(const SemidirectMetric& m, const TrigPoly& u,
                               const TrigPoly& v) {
  const SemidirectElement lu = m.lift(u);
  const SemidirectElement lv = m.lift(v);
  const double ambient = curvature(m, lu, lv).S;
  const SemidirectElement puu = second_fundamental_form(m, u, u);
  const SemidirectElement pvv = second_fundamental_form(m, v, v);
  const SemidirectElement puv = second_fundamental_form(m, u, v);
  return ambient + m.inner(puu, pvv) - m.inner(puv, puv);
}

double CurvatureRewrite::max_mismatch() const {
  const double scale = std::max({std::abs(direct), std::abs(t_form), std::abs(q_form), 1e-300});
  return std::max({std::abs(direct - t_form), std::abs(direct - q_form),
                   std::abs(t_form - q_form)}) /
         scale;
}

CurvatureRewrite rewrite_check(const SemidirectMetric& m, const TrigPoly& u,
                               const TrigPoly& v) {
  const double a = m.a(), b = m.b();
  const CircleMetric ab = CircleMetric::sobolev_ab(a, b, m.period());

  CurvatureRewrite out;
  out.direct = curvature_ab_direct(ab, u, v);

  const TrigPoly tuviv = t_map(m, u, v);
  const TrigPoly tuu = t_map(m, u, u);
  const TrigPoly tvv = t_map(m, v, v);
  const TrigPoly wronskian = u * v.derivative() - v * u.derivative();
  out.t_form = -0.5 * a * l2_inner(wronskian, wronskian) +
               (a / b) * (ab.inner(tuu, tvv) - ab.inner(tuviv, tuviv));

  const TrigPoly quv = q_map(m, u, v);
  const TrigPoly quu = q_map(m, u, u);
  const TrigPoly qvv = q_map(m, v, v);
  const TrigPoly mixed =
      a * wronskian + 0.5 * b * (v.derivative() * u.derivative().derivative() -
                                 u.derivative() * v.derivative().derivative());
  out.q_form = (1.0 / a) * l2_inner(mixed, mixed) +
               (b / a) * (ab.inner(quu, qvv) - ab.inner(quv, quv));
  return out;
}

}  // namespace diffcurv

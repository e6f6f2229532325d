#include "diffcurv/circle.hpp"

#include <cmath>

namespace diffcurv {

CircleMetric::CircleMetric(Kind kind, double a, double b, double c, double period)
    : kind_(kind), a_(a), b_(b), c_(c), period_(period) {
  if (period <= 0) throw DomainError("CircleMetric: period must be positive");
}

CircleMetric CircleMetric::sobolev_ab(double a, double b, double period) {
  if (a < 0 || b < 0 || (a == 0 && b == 0))
    throw DomainError("sobolev_ab: need a,b >= 0, not both zero");
  return CircleMetric(Kind::SobolevAB, a, b, 0.0, period);
}

CircleMetric CircleMetric::homogeneous_h1(double b, double period) {
  if (b <= 0) throw DomainError("homogeneous_h1: need b > 0");
  return CircleMetric(Kind::HomogeneousH1, 0.0, b, 0.0, period);
}

CircleMetric CircleMetric::mean_weighted_h1(double c, double period) {
  if (c <= 0) throw DomainError("mean_weighted_h1: need c > 0");
  return CircleMetric(Kind::MeanWeightedH1, 0.0, 1.0, c, period);
}

double CircleMetric::symbol(int n) const {
  const double w = kTwoPi * n / period_;
  switch (kind_) {
    case Kind::SobolevAB:
      return a_ + b_ * w * w;
    case Kind::HomogeneousH1:
      return b_ * w * w;
    case Kind::MeanWeightedH1:
      return n == 0 ? c_ : w * w;
  }
  return 0.0;
}

TrigPoly CircleMetric::apply_inertia(const TrigPoly& u) const {
  return apply_multiplier(
      u, {[this](const Mode& n, const Eigen::Vector2d&) { return symbol(n[0]); }});
}

TrigPoly CircleMetric::solve_inertia(const TrigPoly& u) const {
  return solve_multiplier(
      u, {[this](const Mode& n, const Eigen::Vector2d&) { return symbol(n[0]); }});
}

double CircleMetric::inner(const TrigPoly& u, const TrigPoly& v) const {
  return l2_inner(apply_inertia(u), v);
}

TrigPoly CircleMetric::bracket(const TrigPoly& u, const TrigPoly& v) const {
  TrigPoly out = u * v.derivative() - v * u.derivative();
  // On the quotient everything lives modulo constants.
  if (kind_ == Kind::HomogeneousH1) out = out.without_mean();
  return out;
}

TrigPoly CircleMetric::ad_star(const TrigPoly& v, const TrigPoly& u) const {
  const TrigPoly m = apply_inertia(u);
  TrigPoly g = m.derivative() * v + 2.0 * (m * v.derivative());
  if (kind_ == Kind::HomogeneousH1) g = g.without_mean();
  return solve_inertia(g);
}

TrigPoly CircleMetric::project(const TrigPoly& u) const {
  if (kind_ == Kind::HomogeneousH1) {
    if (std::abs(u.mean()) > 1e-12 * std::max(1.0, u.max_amplitude()))
      throw DomainError("homogeneous H1 metric: field must have zero mean");
    return u.without_mean();
  }
  return u;
}

double CircleMetric::curvature_correction(const TrigPoly& u, const TrigPoly& v) const {
  if (symbol(0) != 0.0) return 0.0;
  const double c = (u * v.derivative() - v * u.derivative()).mean();
  return c == 0.0 ? 0.0 : -c * inner(v.derivative(), u);
}

TrigPoly christoffel(const CircleMetric& m, const TrigPoly& u, const TrigPoly& v) {
  if (m.kind() != CircleMetric::Kind::SobolevAB)
    throw DomainError("christoffel: defined for the a-b metric");
  const TrigPoly inner_term = m.a() * (u * v) + 0.5 * m.b() * (u.derivative() * v.derivative());
  return m.solve_inertia(inner_term.derivative());
}

double curvature_ab_direct(const CircleMetric& m, const TrigPoly& u, const TrigPoly& v) {
  if (m.kind() != CircleMetric::Kind::SobolevAB || m.a() <= 0 || m.b() <= 0)
    throw DomainError("curvature_ab_direct: requires a > 0 and b > 0");
  const TrigPoly guv = christoffel(m, u, v);
  const TrigPoly guu = christoffel(m, u, u);
  const TrigPoly gvv = christoffel(m, v, v);
  return m.inner(guv, guv) - m.inner(guu, gvv);
}

double l_residual(const CircleMetric& m, const TrigPoly& u, const TrigPoly& v) {
  if (m.kind() != CircleMetric::Kind::SobolevAB || m.a() <= 0 || m.b() <= 0)
    throw DomainError("l_residual: requires a > 0 and b > 0");
  const TrigPoly guv = christoffel(m, u, v);
  const TrigPoly guu = christoffel(m, u, u);
  const TrigPoly gvv = christoffel(m, v, v);
  const TrigPoly duv = (u * v).derivative();
  const TrigPoly du2 = (u * u).derivative();
  const TrigPoly dv2 = (v * v).derivative();
  const TrigPoly aduv = u.derivative() * v - u * v.derivative();
  const TrigPoly asvu = m.ad_star(v, u);
  const TrigPoly asuv = m.ad_star(u, v);

  const double L = m.inner(guv, duv) - 0.5 * m.inner(guu, dv2) - 0.5 * m.inner(gvv, du2) +
                   0.25 * m.inner(duv, duv) - 0.25 * m.inner(du2, dv2) -
                   0.75 * m.inner(aduv, aduv) + 0.5 * m.inner(aduv, asvu - asuv);
  const double scale = m.inner(u, u) * m.inner(v, v);
  return L / std::max(scale, 1e-300);
}

double closed_form_C(const CircleMetric& m, double k, double l) {
  if (m.kind() != CircleMetric::Kind::SobolevAB)
    throw DomainError("closed_form_C: defined for the a-b metric");
  if (k <= 0 || l <= 0 || k == l)
    throw DomainError("closed_form_C: needs distinct positive wavenumbers");
  const double a = m.a(), b = m.b();
  const double dm = k - l, dp = k + l;
  return (1.0 / 8.0) * ((a + 0.5 * b * k * l) * (a + 0.5 * b * k * l) /
                            (a + b * dm * dm) * dm * dm +
                        (a - 0.5 * b * k * l) * (a - 0.5 * b * k * l) /
                            (a + b * dp * dp) * dp * dp);
}

double closed_form_S_cos_sin_same_k(const CircleMetric& m, double k) {
  const double a = m.a(), b = m.b();
  const double t = a - 0.5 * b * k * k;
  return t * t * k * k / (a + 4.0 * b * k * k);
}

double closed_form_S_cos_const(const CircleMetric& m, double k) {
  const double a = m.a(), b = m.b();
  return a * a * k * k / (2.0 * (a + b * k * k));
}

double l2_circle_curvature(double a, const TrigPoly& u, const TrigPoly& v) {
  const TrigPoly w = u * v.derivative() - v * u.derivative();
  return a * l2_inner(w, w);
}

double negative_section_S_regime1(double b, double alpha) {
  const double pi4 = std::pow(M_PI, 4);
  const double num =
      std::pow(alpha, 4) + 18.0 * std::pow(alpha, 3) + 357.0 * alpha * alpha - 20.0 * alpha - 36.0;
  return 2.0 * b * pi4 * num / ((alpha + 9.0) * (alpha + 4.0) * (alpha + 4.0));
}

double negative_section_S_regime2(double b, int j, double r) {
  const double pi4 = std::pow(M_PI, 4);
  const double P = 1435.0 * std::pow(r, 6) + 21940.0 * std::pow(r, 5) -
                   55074.0 * std::pow(r, 4) - 222512.0 * std::pow(r, 3) +
                   584323.0 * r * r - 215364.0 * r + 15552.0;
  const double denom = (r + 9.0) * (r + 9.0) * (r + 4.0) * (r - 2.0) * (r - 2.0);
  return -(3.0 * pi4 * b * std::pow(static_cast<double>(j), 4) / 64.0) * P / denom;
}

NegativeSectionCertificate negative_section(const CircleMetric& m) {
  if (m.kind() != CircleMetric::Kind::SobolevAB || m.a() <= 0 || m.b() <= 0)
    throw DomainError("negative_section: requires a > 0 and b > 0");
  const double a = m.a(), b = m.b();
  const double alpha = a / (4.0 * M_PI * M_PI * b);

  NegativeSectionCertificate cert;
  cert.a = a;
  cert.b = b;
  cert.alpha = alpha;

  if (alpha <= 0.34) {
    cert.regime = 1;
    const double phi = -1.5 * (alpha * alpha - alpha - 2.0) / (alpha * (alpha + 4.0));
    cert.coefficient = phi;
    cert.u = TrigPoly::constant(phi) + TrigPoly::cosx(2);
    cert.v = TrigPoly::sinx(1);
    cert.S_symbolic = negative_section_S_regime1(b, alpha);
  } else {
    cert.regime = 2;
    const double x = std::sqrt(alpha / 0.34);
    int j = static_cast<int>(std::floor(x));
    if (j < 1) j = 1;
    const double r = alpha / (static_cast<double>(j) * j);
    const double radicand =
        -(73.0 * r * r - 188.0 * r + 45.0) * (r + 16.0) / (128.0 * (r + 9.0) * (r - 2.0) * (r - 2.0));
    const double psi = std::sqrt(radicand);
    cert.j = j;
    cert.r = r;
    cert.coefficient = psi;
    cert.u = TrigPoly::cosx(j) + psi * TrigPoly::cosx(2 * j);
    cert.v = TrigPoly::sinx(j) + 2.0 * psi * TrigPoly::sinx(2 * j);
    cert.S_symbolic = negative_section_S_regime2(b, j, r);
  }
  cert.S_direct = curvature_ab_direct(m, cert.u, cert.v);
  return cert;
}

std::pair<TrigPoly, TrigPoly> mean_weighted_negative_pair(double c, int k) {
  if (c <= 0 || k == 0) throw DomainError("mean_weighted_negative_pair: need c > 0, k != 0");
  TrigPoly u = TrigPoly::constant(3.0 * M_PI * M_PI * k * k / c) + TrigPoly::cosx(2 * k);
  TrigPoly v = TrigPoly::sinx(k);
  return {u, v};
}

}  // namespace diffcurv

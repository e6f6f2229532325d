#include "diffcurv/torus.hpp"

#include <cmath>

namespace diffcurv {

TorusSobolevMetric::TorusSobolevMetric(double a, double b, double c,
                                       std::array<double, 2> period)
    : a_(a), b_(b), c_(c), period_(period) {
  if (a < 0 || b < 0 || c < 0 || (a == 0 && b == 0 && c == 0))
    throw DomainError("TorusSobolevMetric: need a,b,c >= 0, at least one positive");
}

Eigen::Matrix2d TorusSobolevMetric::inertia_block(const Eigen::Vector2d& k) const {
  const double k2 = k.squaredNorm();
  Eigen::Matrix2d m = a_ * Eigen::Matrix2d::Identity();
  if (k2 > 0) {
    const Eigen::Matrix2d pp = k * k.transpose();
    m += b_ * pp + c_ * (k2 * Eigen::Matrix2d::Identity() - pp);
  }
  return m;
}

VectorField2 TorusSobolevMetric::apply_inertia(const VectorField2& u) const {
  return apply_multiplier(u, {[this](const Mode&, const Eigen::Vector2d& k) {
    return inertia_block(k);
  }});
}

VectorField2 TorusSobolevMetric::solve_inertia(const VectorField2& u) const {
  return solve_multiplier(u, {[this](const Mode&, const Eigen::Vector2d& k) {
    return inertia_block(k);
  }});
}

double TorusSobolevMetric::inner(const VectorField2& u, const VectorField2& v) const {
  return l2_inner(apply_inertia(u), v);
}

VectorField2 TorusSobolevMetric::bracket(const VectorField2& u, const VectorField2& v) const {
  VectorField2 out = lie_bracket(u, v);
  if (a_ == 0.0) out = remove_harmonic(out);
  return out;
}

VectorField2 TorusSobolevMetric::ad_star(const VectorField2& v, const VectorField2& u) const {
  const VectorField2 m = apply_inertia(u);
  const TrigPoly divv = divergence(v);
  const VectorField2 term1{m.x * divv, m.y * divv};
  const VectorField2 term2 = gradient(dot(m, v));
  const VectorField2 term3 = contract_area_form(v, curl2(m));
  VectorField2 g = term1 + term2 + term3;
  if (a_ == 0.0) g = remove_harmonic(g);
  return solve_inertia(g);
}

VectorField2 TorusSobolevMetric::project(const VectorField2& u) const {
  return a_ == 0.0 ? remove_harmonic(u) : u;
}

double TorusSobolevMetric::curvature_correction(const VectorField2& u,
                                                const VectorField2& v) const {
  if (a_ != 0.0) return 0.0;
  const VectorField2 br = lie_bracket(u, v);
  const Eigen::Vector2d h(br.x.mean(), br.y.mean());
  if (h.norm() == 0.0) return 0.0;
  auto advect = [&h](const TrigPoly& f) {
    return h[0] * f.derivative(0) + h[1] * f.derivative(1);
  };
  const VectorField2 hv{advect(v.x), advect(v.y)};
  return -inner(hv, u);
}

double torus_sin_pair_S(double a, double b, double c, double k) {
  const double k2 = k * k;
  const double num = 7.0 * a * a * a - 8.0 * a * a * b * k2 + 56.0 * a * a * c * k2 +
                     44.0 * a * c * b * k2 * k2 + 76.0 * c * c * k2 * k2 * a +
                     160.0 * c * c * k2 * k2 * k2 * b;
  return -k2 * num / (32.0 * (a + 4.0 * c * k2) * (a + 4.0 * b * k2));
}

double l2_mixed_section_S(double a, const TrigPoly& f, const TrigPoly& g) {
  const TrigPoly fx = f.derivative();
  const TrigPoly gx = g.derivative();
  const TrigPoly integrand = 0.25 * (fx * fx) * (g * g) - 2.0 * (f * fx) * (g * gx);
  return a * integrand.mean() * integrand.volume();
}

TorusStreamMetric::TorusStreamMetric(std::function<double(double)> lambda_of_k2,
                                     std::array<double, 2> period)
    : lambda_(std::move(lambda_of_k2)), period_(period) {}

TorusStreamMetric TorusStreamMetric::l2(std::array<double, 2> period) {
  return TorusStreamMetric([](double k2) { return k2; }, period);
}

TorusStreamMetric TorusStreamMetric::enstrophy(double c, std::array<double, 2> period) {
  return TorusStreamMetric([c](double k2) { return c * k2 * k2; }, period);
}

TorusStreamMetric TorusStreamMetric::power(double exponent, std::array<double, 2> period) {
  return TorusStreamMetric(
      [exponent](double k2) { return std::pow(k2, 0.5 * exponent); }, period);
}

TrigPoly TorusStreamMetric::apply_lambda(const TrigPoly& f) const {
  return apply_multiplier(f, {[this](const Mode&, const Eigen::Vector2d& k) {
    return F(k);
  }});
}

TrigPoly TorusStreamMetric::solve_lambda(const TrigPoly& f) const {
  return solve_multiplier(f, {[this](const Mode& n, const Eigen::Vector2d& k) {
    if (n == Mode{0, 0}) return 0.0;  // constants are not in the stream span
    return F(k);
  }});
}

double TorusStreamMetric::inner(const TrigPoly& f, const TrigPoly& g) const {
  return l2_inner(apply_lambda(f), g);
}

TrigPoly TorusStreamMetric::bracket(const TrigPoly& f, const TrigPoly& g) const {
  return poisson(f, g).without_mean();
}

TrigPoly TorusStreamMetric::ad_star(const TrigPoly& g, const TrigPoly& f) const {
  const TrigPoly lf = apply_lambda(f);
  const TrigPoly p1 = g.derivative(0) * lf.derivative(1);
  const TrigPoly p2 = g.derivative(1) * lf.derivative(0);
  // The cancellation scale is set by the products, not the difference.
  const double scale = std::max({p1.max_amplitude(), p2.max_amplitude(), 1e-300});
  const TrigPoly theta = (p1 - p2).cleaned(1e-13 * scale);
  if (std::abs(theta.mean()) > 1e-10 * scale)
    throw SingularModeError("stream ad*: zero-frequency residue in the bracket");
  return solve_lambda(theta.without_mean());
}

TrigPoly TorusStreamMetric::project(const TrigPoly& f) const { return f.without_mean(); }

double stream_curvature_closed(const TorusStreamMetric& m, const Eigen::Vector2d& p,
                               const Eigen::Vector2d& q) {
  const Eigen::Vector2d pp = p + q, pm = p - q;
  if (p.norm() == 0 || q.norm() == 0 || pp.norm() == 0 || pm.norm() == 0)
    throw DomainError("stream_curvature_closed: |p|, |q|, |p+q|, |p-q| must be nonzero");
  const double wedge = p[0] * q[1] - p[1] * q[0];
  const double Fp = m.F(p), Fq = m.F(q), Fpp = m.F(pp), Fpm = m.F(pm);
  const double diff = Fp - Fq;
  return (wedge * wedge / 8.0) *
         (0.25 * diff * diff * (1.0 / Fpp + 1.0 / Fpm) - 0.75 * (Fpp + Fpm) + Fp + Fq);
}

double stream_reference_S(const Eigen::Vector2d& p, const Eigen::Vector2d& q) {
  const double j = p[0], k = p[1], l = q[0], mm = q[1];
  const double wedge = j * mm - k * l;
  const double denom = ((j + l) * (j + l) + (k + mm) * (k + mm)) *
                       ((j - l) * (j - l) + (k - mm) * (k - mm));
  if (denom == 0) throw DomainError("stream_reference_S: degenerate wavevectors");
  return -M_PI * M_PI * std::pow(wedge, 4) * (j * j + k * k + l * l + mm * mm) / denom;
}

double high_frequency_limit_K(int k) {
  if (k <= 0) throw DomainError("high_frequency_limit_K: k must be positive");
  const std::array<double, 2> period = {kTwoPi, kTwoPi};
  const TorusStreamMetric m = TorusStreamMetric::l2(period);
  TrigPoly f = TrigPoly::cosxy(3 * k, -1, 1.0, period) + TrigPoly::cosxy(3 * k, 2, 1.0, period);
  TrigPoly g = TrigPoly::cosxy(k, 1, 1.0, period) + TrigPoly::cosxy(k, -2, 1.0, period);
  const CurvatureReport r = curvature(m, f, g);
  if (r.degenerate) throw DomainError("high_frequency_limit_K: degenerate section");
  return r.K;
}

}  // namespace diffcurv

#pragma once

// Metric backends on the flat 2-torus.
//
// TorusSobolevMetric: the three-parameter Sobolev metric on vector fields,
//   << u, v >> = integral ( a<u,v> + b div u div v + c curl u curl v ).
// Per mode with physical wavevector k the inertia operator acts as
// a + b|k|^2 on the component parallel to k (gradient part) and a + c|k|^2
// on the perpendicular component (divergence-free part); the coadjoint
// operator is
//   ad*_v u = A^{-1} ( (div v) Au + grad<Au, v> + i_v d(Au)^flat ).
// With a = 0 the metric is degenerate on harmonic (constant) fields and
// all operations happen modulo those.
//
// TorusStreamMetric: metrics on exact divergence-free fields u = sgrad f,
// written on mean-zero stream functions,
//   << sgrad f, sgrad g >> = integral f (Lambda g),
// where Lambda acts per mode as F(k) = lambda(|k|^2) > 0.  Here
//   ad*_v u = sgrad Lambda^{-1} { g, Lambda f }.
// F(k) = |k|^2 is the L^2 metric of ideal flow, F(k) = c|k|^4 the enstrophy
// (curl) metric.

#include <functional>

#include "diffcurv/curvature.hpp"
#include "diffcurv/field2d.hpp"

namespace diffcurv {

class TorusSobolevMetric {
 public:
  using Element = VectorField2;

  TorusSobolevMetric(double a, double b, double c,
                     std::array<double, 2> period = {1.0, 1.0});

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  const std::array<double, 2>& period() const { return period_; }

  Eigen::Matrix2d inertia_block(const Eigen::Vector2d& k) const;

  VectorField2 apply_inertia(const VectorField2& u) const;
  VectorField2 solve_inertia(const VectorField2& u) const;

  double inner(const VectorField2& u, const VectorField2& v) const;
  VectorField2 bracket(const VectorField2& u, const VectorField2& v) const;
  VectorField2 ad_star(const VectorField2& v, const VectorField2& u) const;
  VectorField2 project(const VectorField2& u) const;

  // Isotropy term of the quotient curvature at a = 0, where the metric
  // kills the harmonic (constant) fields.
  double curvature_correction(const VectorField2& u, const VectorField2& v) const;

 private:
  double a_, b_, c_;
  std::array<double, 2> period_;
};

// Closed form for the section u = sin(kx) d/dy, v = sin(kx) d/dx
// (k physical).  Specializes to -5ck^4/16 at a = 0.
double torus_sin_pair_S(double a, double b, double c, double k);

// Mixed L^2 section u = f(x) d/dx, w = g(x) d/dy at b = c = 0:
//   S(u,w) = a * integral ( f'^2 g^2 / 4 - 2 f f' g g' ) dx.
double l2_mixed_section_S(double a, const TrigPoly& f, const TrigPoly& g);

class TorusStreamMetric {
 public:
  using Element = TrigPoly;  // mean-zero stream function on the 2-torus

  TorusStreamMetric(std::function<double(double)> lambda_of_k2,
                    std::array<double, 2> period = {1.0, 1.0});

  static TorusStreamMetric l2(std::array<double, 2> period = {1.0, 1.0});
  static TorusStreamMetric enstrophy(double c = 1.0,
                                     std::array<double, 2> period = {1.0, 1.0});
  static TorusStreamMetric power(double exponent,
                                 std::array<double, 2> period = {1.0, 1.0});

  double F(const Eigen::Vector2d& k) const { return lambda_(k.squaredNorm()); }
  const std::array<double, 2>& period() const { return period_; }

  TrigPoly apply_lambda(const TrigPoly& f) const;
  TrigPoly solve_lambda(const TrigPoly& f) const;

  double inner(const TrigPoly& f, const TrigPoly& g) const;
  TrigPoly bracket(const TrigPoly& f, const TrigPoly& g) const;
  TrigPoly ad_star(const TrigPoly& g, const TrigPoly& f) const;
  TrigPoly project(const TrigPoly& f) const;

 private:
  std::function<double(double)> lambda_;
  std::array<double, 2> period_;
};

// Closed-form curvature of the stream metric on the section spanned by the
// fields of cos(p.x) and cos(q.x); p, q physical wavevectors with
// |p|, |q|, |p+q|, |p-q| all nonzero.
double stream_curvature_closed(const TorusStreamMetric& m, const Eigen::Vector2d& p,
                               const Eigen::Vector2d& q);

// Reference value for the L^2 stream metric on the unit-period torus,
//   -pi^2 (jm-kl)^4 (j^2+k^2+l^2+m^2) / ( ((j+l)^2+(k+m)^2) ((j-l)^2+(k-m)^2) ),
// evaluated with p = (j,k), q = (l,m) the physical wavevectors.  The
// backend value is proportional to this with a pair-independent ratio.
double stream_reference_S(const Eigen::Vector2d& p, const Eigen::Vector2d& q);

// Normalized curvature K of the high-frequency two-mode section of the L^2
// stream metric on the period-2pi torus: stream functions
// f = cos(3k x - y) + cos(3k x + 2y), g = cos(k x + y) + cos(k x - 2y).
// K tends to 9/(8 pi^2) as k grows.
double high_frequency_limit_K(int k);

}  // namespace diffcurv

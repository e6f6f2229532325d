#pragma once

// Metric backends on Diff(S^1) and its quotients, all realized through a
// positive Fourier symbol W(n):
//
//   << u, v >>  =  integral of (W u) v,
//
// with the coadjoint operator obtained per mode from the defining duality,
//   ad*_v u = W^{-1} P ( (W u)_x v + 2 (W u) v_x ),
// P the projection onto the span where W is invertible.  Instances:
//
//   sobolev_ab(a, b)      W = a + b w^2   (H^1 family; b=0 gives L^2)
//   homogeneous_h1(b)     W = b w^2       on mean-zero fields (quotient)
//   mean_weighted_h1(c)   W(0) = c, else w^2
//
// plus the closed-form curvature expressions and sign certificates of the
// a-b family.

#include "diffcurv/curvature.hpp"
#include "diffcurv/trigpoly.hpp"

namespace diffcurv {

class CircleMetric {
 public:
  using Element = TrigPoly;
  enum class Kind { SobolevAB, HomogeneousH1, MeanWeightedH1 };

  static CircleMetric sobolev_ab(double a, double b, double period = 1.0);
  static CircleMetric homogeneous_h1(double b = 1.0, double period = 1.0);
  static CircleMetric mean_weighted_h1(double c, double period = 1.0);

  Kind kind() const { return kind_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double mean_weight() const { return c_; }
  double period() const { return period_; }

  // Symbol of the inertia operator at mode n (w = physical wavenumber).
  double symbol(int n) const;

  double inner(const TrigPoly& u, const TrigPoly& v) const;
  TrigPoly bracket(const TrigPoly& u, const TrigPoly& v) const;
  TrigPoly ad_star(const TrigPoly& v, const TrigPoly& u) const;
  TrigPoly project(const TrigPoly& u) const;

  // Isotropy term of the quotient curvature when the symbol kills the
  // constants: -<< [c, v], u >> with c the kernel part of the bracket.
  double curvature_correction(const TrigPoly& u, const TrigPoly& v) const;

  TrigPoly apply_inertia(const TrigPoly& u) const;
  TrigPoly solve_inertia(const TrigPoly& u) const;

 private:
  CircleMetric(Kind kind, double a, double b, double c, double period);
  Kind kind_;
  double a_ = 0.0, b_ = 0.0, c_ = 0.0;
  double period_ = 1.0;
};

// Christoffel map of the a-b metric: A^{-1} d/dx ( a u v + (b/2) u_x v_x ).
TrigPoly christoffel(const CircleMetric& m, const TrigPoly& u, const TrigPoly& v);

// Curvature of the a-b metric (a>0, b>0) through the Christoffel map:
//   S = <<G(u,v), G(u,v)>> - <<G(u,u), G(v,v)>>.
double curvature_ab_direct(const CircleMetric& m, const TrigPoly& u, const TrigPoly& v);

// The remainder term whose vanishing reduces the general curvature formula
// to the Christoffel form above; evaluated literally, term by term.
// Returns the value normalized by ||u||^2 ||v||^2.
double l_residual(const CircleMetric& m, const TrigPoly& u, const TrigPoly& v);

// Closed-form positive curvature for two distinct nonzero wavenumbers
// (k, l physical, i.e. 2*pi*integer when the period is 1):
//   S(cos kx, cos lx) = S(cos kx, sin lx) = S(sin kx, sin lx) = C(k,l) > 0.
double closed_form_C(const CircleMetric& m, double k, double l);
// Companions for the k = l and l = 0 sections.
double closed_form_S_cos_sin_same_k(const CircleMetric& m, double k);
double closed_form_S_cos_const(const CircleMetric& m, double k);

// L^2 (b = 0) closed form: S = a * integral (u v_x - v u_x)^2.
double l2_circle_curvature(double a, const TrigPoly& u, const TrigPoly& v);

// A section of strictly negative curvature for the a-b metric, constructed
// from the ratio alpha = a / (4 pi^2 b).  Two constructions cover all
// parameter values: a two-mode field with a tuned constant component for
// alpha <= 0.34, and a pair of two-mode fields at a base frequency j with a
// tuned second-harmonic amplitude otherwise.
struct NegativeSectionCertificate {
  int regime = 1;  // 1: small alpha, 2: scaled two-harmonic pair
  double a = 0.0, b = 0.0;
  double alpha = 0.0;
  int j = 1;          // base integer frequency (regime 2)
  double r = 0.0;     // alpha / j^2 (regime 2)
  double coefficient = 0.0;  // phi (regime 1) or psi (regime 2)
  double S_symbolic = 0.0;   // closed-form value of S(u,v)
  double S_direct = 0.0;     // value from curvature_ab_direct
  TrigPoly u, v;
};

NegativeSectionCertificate negative_section(const CircleMetric& m);

// Closed-form S for each certificate regime.
double negative_section_S_regime1(double b, double alpha);
double negative_section_S_regime2(double b, int j, double r);

// Fields of the negative section of the mean-weighted H^1 metric:
// u = 3 pi^2 k^2 / c + cos(4 pi k x), v = sin(2 pi k x).
std::pair<TrigPoly, TrigPoly> mean_weighted_negative_pair(double c, int k);

}  // namespace diffcurv

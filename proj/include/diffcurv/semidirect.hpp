#pragma once

// The semidirect product Vect(S^1) x C^inf(S^1) with the right-invariant
// L^2 metric
//   << (u,f), (v,g) >> = integral ( a u v + b f g ),
// its coadjoint operator and closed-form curvature, and the maps T, Q and
// the second fundamental form through which the a-b metric on Diff(S^1)
// embeds isometrically via u |-> (u, u_x).

#include "diffcurv/circle.hpp"
#include "diffcurv/curvature.hpp"
#include "diffcurv/trigpoly.hpp"

namespace diffcurv {

struct SemidirectElement {
  TrigPoly u;  // vector-field slot
  TrigPoly f;  // function slot

  SemidirectElement() = default;
  SemidirectElement(TrigPoly uu, TrigPoly ff) : u(std::move(uu)), f(std::move(ff)) {
    u.require_compatible(f, "SemidirectElement");
  }

  SemidirectElement& operator+=(const SemidirectElement& r) {
    u += r.u;
    f += r.f;
    return *this;
  }
  SemidirectElement& operator-=(const SemidirectElement& r) {
    u -= r.u;
    f -= r.f;
    return *this;
  }
  SemidirectElement& operator*=(double s) {
    u *= s;
    f *= s;
    return *this;
  }
};

inline SemidirectElement operator+(SemidirectElement a, const SemidirectElement& b) {
  return a += b;
}
inline SemidirectElement operator-(SemidirectElement a, const SemidirectElement& b) {
  return a -= b;
}
inline SemidirectElement operator*(SemidirectElement a, double s) { return a *= s; }
inline SemidirectElement operator*(double s, SemidirectElement a) { return a *= s; }

class SemidirectMetric {
 public:
  using Element = SemidirectElement;

  SemidirectMetric(double a, double b, double period = 1.0);

  double a() const { return a_; }
  double b() const { return b_; }
  double period() const { return period_; }

  double inner(const Element& x, const Element& y) const;
  Element bracket(const Element& x, const Element& y) const;
  Element ad_star(const Element& x, const Element& y) const;
  Element project(const Element& x) const { return x; }

  // Algebra image of a circle field under the embedding: (u, u_x).
  Element lift(const TrigPoly& u) const { return {u, u.derivative()}; }

 private:
  double a_, b_;
  double period_;
};

// Closed-form ambient curvature:
//   S = a * int ( u v_x - v u_x + (b/2a)(g f_x - f g_x) )^2
//     + (b/4) * int ( g u_x - f v_x )( g u_x - f v_x + 8 v f_x - 8 u g_x ).
double semidirect_curvature_closed(const SemidirectMetric& m, const SemidirectElement& x,
                                   const SemidirectElement& y);

// T(u,v) = A^{-1}( a u v + (b/2) u_x v_x ),  Q(u,v) = -d^2/dx^2 T(u,v),
// with A = a - b d^2/dx^2.  The Christoffel map satisfies G = d/dx T and
// Q = -d/dx G.
TrigPoly t_map(const SemidirectMetric& m, const TrigPoly& u, const TrigPoly& v);
TrigPoly q_map(const SemidirectMetric& m, const TrigPoly& u, const TrigPoly& v);

// Second fundamental form of the embedding: ((b/a) Q_x, Q); orthogonal to
// every lifted tangent (w, w_x).
SemidirectElement second_fundamental_form(const SemidirectMetric& m, const TrigPoly& u,
                                          const TrigPoly& v);

// Submanifold curvature assembled from the ambient one:
//   S_ambient(lift u, lift v) + <<Pi(u,u), Pi(v,v)>> - ||Pi(u,v)||^2.
double gauss_codazzi_curvature(const SemidirectMetric& m, const TrigPoly& u,
                               const TrigPoly& v);

// The three equivalent expressions for the a-b curvature of a circle pair:
// through the Christoffel map, through T, and through Q.
struct CurvatureRewrite {
  double direct = 0.0;   // <<G(u,v),G(u,v)>> - <<G(u,u),G(v,v)>>
  double t_form = 0.0;   // -(a/2) int (u v_x - v u_x)^2 + (a/b)(T Gram)
  double q_form = 0.0;   // (1/a) int (...)^2 + (b/a)(Q Gram)
  double max_mismatch() const;
};

CurvatureRewrite rewrite_check(const SemidirectMetric& m, const TrigPoly& u,
                               const TrigPoly& v);

}  // namespace diffcurv

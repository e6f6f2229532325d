#pragma once

// Vector fields on the flat 2-torus with trig-polynomial components, plus
// the exact differential operators used by the torus metrics: divergence,
// gradient, 2d curl, skew gradient, Poisson bracket, and per-mode 2x2
// multiplier actions (inertia operators).

#include <Eigen/Core>

#include "diffcurv/trigpoly.hpp"

namespace diffcurv {

struct VectorField2 {
  TrigPoly x;  // component along d/dx
  TrigPoly y;  // component along d/dy

  VectorField2() : x(TrigPoly::zero(2)), y(TrigPoly::zero(2)) {}
  VectorField2(TrigPoly cx, TrigPoly cy) : x(std::move(cx)), y(std::move(cy)) {
    x.require_compatible(y, "VectorField2");
    if (x.dim() != 2) throw DomainError("VectorField2: components must be 2d");
  }

  static VectorField2 zero(std::array<double, 2> period = {1.0, 1.0}) {
    return {TrigPoly::zero(2, period), TrigPoly::zero(2, period)};
  }

  const std::array<double, 2>& period() const { return x.period(); }
  int degree() const { return std::max(x.degree(), y.degree()); }

  VectorField2& operator+=(const VectorField2& r) {
    x += r.x;
    y += r.y;
    return *this;
  }
  VectorField2& operator-=(const VectorField2& r) {
    x -= r.x;
    y -= r.y;
    return *this;
  }
  VectorField2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
};

inline VectorField2 operator+(VectorField2 a, const VectorField2& b) { return a += b; }
inline VectorField2 operator-(VectorField2 a, const VectorField2& b) { return a -= b; }
inline VectorField2 operator*(VectorField2 a, double s) { return a *= s; }
inline VectorField2 operator*(double s, VectorField2 a) { return a *= s; }
inline VectorField2 operator-(const VectorField2& a) { return a * -1.0; }

inline TrigPoly divergence(const VectorField2& u) {
  return u.x.derivative(0) + u.y.derivative(1);
}

// Scalar curl in 2d: d(u^flat) = (dx u_y - dy u_x) dx^dy.
inline TrigPoly curl2(const VectorField2& u) {
  return u.y.derivative(0) - u.x.derivative(1);
}

inline VectorField2 gradient(const TrigPoly& f) {
  return {f.derivative(0), f.derivative(1)};
}

// sgrad f = -f_y d/dx + f_x d/dy, the Hamiltonian field of f.
inline VectorField2 sgrad(const TrigPoly& f) {
  return {-f.derivative(1), f.derivative(0)};
}

// {f,g} = f_x g_y - f_y g_x; satisfies [sgrad f, sgrad g] = sgrad {f,g}.
inline TrigPoly poisson(const TrigPoly& f, const TrigPoly& g) {
  return f.derivative(0) * g.derivative(1) - f.derivative(1) * g.derivative(0);
}

// Interior product of a field with the 2-form w dx^dy, as a 1-form/field:
// i_v (w dx^dy) = w * (-v_y, v_x)... componentwise on the flat torus.
inline VectorField2 contract_area_form(const VectorField2& v, const TrigPoly& w) {
  return {-(v.y * w), v.x * w};
}

inline double l2_inner(const VectorField2& u, const VectorField2& v) {
  return l2_inner(u.x, v.x) + l2_inner(u.y, v.y);
}

// Standard Lie bracket of vector fields, [u,v] = (u.grad)v - (v.grad)uptr.
VectorField2 lie_bracket(const VectorField2& u, const VectorField2& v);

// Pointwise Euclidean pairing <u,v> as a scalar trig polynomial.
inline TrigPoly dot(const VectorField2& u, const VectorField2& v) {
  return u.x * v.x + u.y * v.y;
}

// Per-mode 2x2 symmetric action on the (x,y) component pair.  The matrix
// may depend on the mode through its physical wavevector k.
struct MatrixMultiplier {
  std::function<Eigen::Matrix2d(const Mode&, const Eigen::Vector2d&)> action;
};

VectorField2 apply_multiplier(const VectorField2& u, const MatrixMultiplier& m);
// Per-mode 2x2 solve; throws SingularModeError when a mode's matrix is singular.
VectorField2 solve_multiplier(const VectorField2& u, const MatrixMultiplier& m);

// Removes the harmonic (constant) component of each field component.
VectorField2 remove_harmonic(const VectorField2& u);

}  // namespace diffcurv

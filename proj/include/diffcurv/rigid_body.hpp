#pragma once

// so(3) with a diagonal metric <e_i, e_i> = lambda_i: the fully computable
// reference case.  Alongside the metric backend this module carries the
// group-side machinery (flow on SO(3), geodesic exponential, Jacobi fields
// by three independent routes) used by the stability checks.

#include <vector>

#include <Eigen/Dense>

#include "diffcurv/curvature.hpp"

namespace diffcurv {

class RigidBodyMetric {
 public:
  using Element = Eigen::Vector3d;

  explicit RigidBodyMetric(const Eigen::Vector3d& moments);

  const Eigen::Vector3d& moments() const { return lambda_; }

  double inner(const Element& u, const Element& v) const {
    return u.dot(lambda_.cwiseProduct(v));
  }
  Element bracket(const Element& u, const Element& v) const { return u.cross(v); }
  // ad*_v u = Lambda^{-1} ( v x (Lambda u) )
  Element ad_star(const Element& v, const Element& u) const {
    return v.cross(lambda_.cwiseProduct(u)).cwiseQuotient(lambda_);
  }
  Element project(const Element& u) const { return u; }

  // Euler top right-hand side, du/dt = -ad*_u u; componentwise
  // du1/dt = (l2-l3)/l1 u2 u3 and cyclic.
  Element euler_rhs(const Element& u) const { return -ad_star(u, u); }

  // Levi-Civita connection bilinear map in the body frame.
  Element connection(const Element& x, const Element& y) const {
    return 0.5 * (x.cross(y) + ad_star(x, y) + ad_star(y, x));
  }

  // Curvature operator R(y, u)u obtained by polarizing the sectional
  // numerator of the generic formula in its first slot.
  Element curvature_operator(const Element& y, const Element& u) const;

 private:
  Eigen::Vector3d lambda_;
};

inline Eigen::Vector3d so3_ad_star(const Eigen::Vector3d& moments, const Eigen::Vector3d& v,
                                   const Eigen::Vector3d& u) {
  return RigidBodyMetric(moments).ad_star(v, u);
}

Eigen::Matrix3d hat(const Eigen::Vector3d& x);
Eigen::Vector3d unhat(const Eigen::Matrix3d& m);

// Geodesic of the body metric: eta' = eta * hat(u), u' = -ad*_u u, from
// eta(0) = I, u(0) = v; eta is reorthonormalized every step.
struct RigidBodyGeodesic {
  std::vector<double> times;
  std::vector<Eigen::Matrix3d> frames;
  std::vector<Eigen::Vector3d> velocities;
};

RigidBodyGeodesic rigid_body_geodesic(const RigidBodyMetric& m, const Eigen::Vector3d& v,
                                      double dt, double T);

// Linearized flow/velocity pair along the geodesic from u0:
//   y' = z + ad_u y,   z' = -ad*_u z - ad*_z u,
// integrated jointly with u.  y is the Jacobi field in the body frame.
struct RigidBodyJacobi {
  std::vector<double> times;
  std::vector<Eigen::Vector3d> u, y, z;
  std::vector<Eigen::Matrix3d> frames;
  std::vector<double> y_norm, z_norm;  // metric norms
};

RigidBodyJacobi rigid_body_jacobi(const RigidBodyMetric& m, const Eigen::Vector3d& u0,
                                  const Eigen::Vector3d& y0, const Eigen::Vector3d& z0,
                                  double dt, double T);

// Exponential growth rate of ||z|| fitted over the run's second half.
double fitted_growth_rate(const RigidBodyJacobi& run);

struct CartanCheck {
  double residual_fd_vs_jacobi = 0.0;  // finite-difference of exp vs the
                                       // second-order Jacobi equation
  double residual_fd_vs_pair = 0.0;    // same vs the first-order (y,z) pair
  double max_norm = 0.0;               // scale used for normalization
};

// Compares the directional derivative of the group exponential (centered
// finite difference with step eps) against the Jacobi field with J(0) = 0,
// J'(0) = w, computed (a) from the second-order Jacobi equation with the
// polarized curvature operator and (b) from the linearized pair.
CartanCheck cartan_check(const RigidBodyMetric& m, const Eigen::Vector3d& v,
                         const Eigen::Vector3d& w, double T, double dt = 5e-4,
                         double eps = 1e-5);

struct ConjugationCheck {
  double flow_residual = 0.0;      // max |dY/dt - Z|
  double momentum_residual = 0.0;  // max |d/dt(M Z) + Z x (Lambda u0)|
};

// Transforms a linearized run to the spatial frame, Y = R y, Z = R z with
// R the geodesic frame, and verifies the transformed system
//   dY/dt = Z,   d/dt( R Lambda R^T Z ) + Z x (Lambda u0) = 0
// with centered finite differences in t.  Residuals are relative to the
// series' maximum norms.
ConjugationCheck conjugation_check(const RigidBodyMetric& m, const RigidBodyJacobi& run);

}  // namespace diffcurv

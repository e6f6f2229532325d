#include "diffcurv/rigid_body.hpp"

#include <cmath>

#include "diffcurv/trigpoly.hpp"

namespace diffcurv {

namespace {

// Generic fixed-step RK4 over any state with +, scalar*.
template <typename State, typename Rhs>
State rk4_step(const State& s, double dt, Rhs&& f) {
  const State k1 = f(s);
  const State k2 = f(s + (0.5 * dt) * k1);
  const State k3 = f(s + (0.5 * dt) * k2);
  const State k4 = f(s + dt * k3);
  return s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Eigen::Matrix3d reorthonormalize(const Eigen::Matrix3d& m) {
  // Newton iteration to the polar factor.
  Eigen::Matrix3d x = m;
  for (int i = 0; i < 3; ++i) x = 0.5 * (x + x.inverse().transpose());
  return x;
}

struct FlowState {
  Eigen::Matrix3d eta;
  Eigen::Vector3d u;
  FlowState operator+(const FlowState& r) const { return {eta + r.eta, u + r.u}; }
  friend FlowState operator*(double s, const FlowState& x) { return {s * x.eta, s * x.u}; }
};

struct JacobiState {
  Eigen::Matrix3d eta;
  Eigen::Vector3d u, y, z;
  JacobiState operator+(const JacobiState& r) const {
    return {eta + r.eta, u + r.u, y + r.y, z + r.z};
  }
  friend JacobiState operator*(double s, const JacobiState& x) {
    return {s * x.eta, s * x.u, s * x.y, s * x.z};
  }
};

struct SecondOrderState {
  Eigen::Vector3d u, y, ydot;  // ydot = covariant derivative of the field
  SecondOrderState operator+(const SecondOrderState& r) const {
    return {u + r.u, y + r.y, ydot + r.ydot};
  }
  friend SecondOrderState operator*(double s, const SecondOrderState& x) {
    return {s * x.u, s * x.y, s * x.ydot};
  }
};

int step_count(double T, double dt) {
  return std::max(1, static_cast<int>(std::llround(T / dt)));
}

}  // namespace

RigidBodyMetric::RigidBodyMetric(const Eigen::Vector3d& moments) : lambda_(moments) {
  if ((lambda_.array() <= 0).any())
    throw DomainError("RigidBodyMetric: moments must be positive");
}

RigidBodyMetric::Element RigidBodyMetric::curvature_operator(const Element& y,
                                                             const Element& u) const {
  // <R(y,u)u, e_j> by polarization of S(x,u) = <R(x,u)u, x>.
  auto S = [this, &u](const Element& x) { return curvature(*this, x, u).S; };
  const double sy = S(y);
  Eigen::Vector3d b;
  for (int j = 0; j < 3; ++j) {
    const Eigen::Vector3d ej = Eigen::Vector3d::Unit(j);
    b[j] = 0.5 * (S(y + ej) - sy - S(ej));
  }
  return b.cwiseQuotient(lambda_);
}

Eigen::Matrix3d hat(const Eigen::Vector3d& x) {
  Eigen::Matrix3d m;
  m << 0, -x[0], -x[1], x[0], 0, -x[2], x[1], x[2], 0;
  return m;
}

Eigen::Vector3d unhat(const Eigen::Matrix3d& m) {
  const Eigen::Matrix3d a = 0.5 * (m - m.transpose());
  return {a(1, 0), a(2, 0), a(2, 1)};
}

RigidBodyGeodesic rigid_body_geodesic(const RigidBodyMetric& m, const Eigen::Vector3d& v,
                                      double dt, double T) {
  if (dt <= 0 || T <= 0) throw DomainError("rigid_body_geodesic: need dt, T > 0");
  const int n = step_count(T, dt);
  RigidBodyGeodesic out;
  out.times.reserve(n + 1);
  FlowState s{Eigen::Matrix3d::Identity(), v};
  auto rhs = [&m](const FlowState& x) {
    return FlowState{x.eta * hat(x.u), m.euler_rhs(x.u)};
  };
  out.times.push_back(0.0);
  out.frames.push_back(s.eta);
  out.velocities.push_back(s.u);
  for (int i = 1; i <= n; ++i) {
    s = rk4_step(s, dt, rhs);
    s.eta = reorthonormalize(s.eta);
    out.times.push_back(i * dt);
    out.frames.push_back(s.eta);
    out.velocities.push_back(s.u);
  }
  return out;
}

RigidBodyJacobi rigid_body_jacobi(const RigidBodyMetric& m, const Eigen::Vector3d& u0,
                                  const Eigen::Vector3d& y0, const Eigen::Vector3d& z0,
                                  double dt, double T) {
  if (dt <= 0 || T <= 0) throw DomainError("rigid_body_jacobi: need dt, T > 0");
  const int n = step_count(T, dt);
  RigidBodyJacobi out;
  JacobiState s{Eigen::Matrix3d::Identity(), u0, y0, z0};
  auto rhs = [&m](const JacobiState& x) {
    return JacobiState{x.eta * hat(x.u), m.euler_rhs(x.u),
                       x.z - x.u.cross(x.y),
                       -(m.ad_star(x.u, x.z) + m.ad_star(x.z, x.u))};
  };
  auto record = [&](double t, const JacobiState& x) {
    out.times.push_back(t);
    out.frames.push_back(x.eta);
    out.u.push_back(x.u);
    out.y.push_back(x.y);
    out.z.push_back(x.z);
    out.y_norm.push_back(std::sqrt(m.inner(x.y, x.y)));
    out.z_norm.push_back(std::sqrt(m.inner(x.z, x.z)));
  };
  record(0.0, s);
  for (int i = 1; i <= n; ++i) {
    s = rk4_step(s, dt, rhs);
    s.eta = reorthonormalize(s.eta);
    record(i * dt, s);
  }
  return out;
}

double fitted_growth_rate(const RigidBodyJacobi& run) {
  // Least-squares slope of log||z|| over the second half of the run.
  const std::size_t n = run.times.size();
  const std::size_t start = n / 2;
  double st = 0, sy = 0, stt = 0, sty = 0;
  std::size_t count = 0;
  for (std::size_t i = start; i < n; ++i) {
    if (run.z_norm[i] <= 0) continue;
    const double t = run.times[i], ly = std::log(run.z_norm[i]);
    st += t;
    sy += ly;
    stt += t * t;
    sty += t * ly;
    ++count;
  }
  if (count < 2) return 0.0;
  const double denom = count * stt - st * st;
  return denom == 0 ? 0.0 : (count * sty - st * sy) / denom;
}

CartanCheck cartan_check(const RigidBodyMetric& m, const Eigen::Vector3d& v,
                         const Eigen::Vector3d& w, double T, double dt, double eps) {
  const RigidBodyGeodesic base = rigid_body_geodesic(m, v, dt, T);
  const RigidBodyGeodesic plus = rigid_body_geodesic(m, v + eps * w, dt, T);
  const RigidBodyGeodesic minus = rigid_body_geodesic(m, v - eps * w, dt, T);

  // Centered derivative of exp, pulled back to the body frame.
  const std::size_t n = base.times.size();
  std::vector<Eigen::Vector3d> y_fd(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Matrix3d diff = (plus.frames[i] - minus.frames[i]) / (2.0 * eps);
    y_fd[i] = unhat(base.frames[i].transpose() * diff);
  }

  // Second-order Jacobi equation in the body frame with the polarized
  // curvature operator: D_t J = ydot, D_t ydot = -R(y,u)u.
  SecondOrderState s{v, Eigen::Vector3d::Zero(), w};
  auto rhs = [&m](const SecondOrderState& x) {
    return SecondOrderState{m.euler_rhs(x.u), x.ydot - m.connection(x.u, x.y),
                            -m.curvature_operator(x.y, x.u) - m.connection(x.u, x.ydot)};
  };
  std::vector<Eigen::Vector3d> y_ode(n);
  y_ode[0] = s.y;
  for (std::size_t i = 1; i < n; ++i) {
    s = rk4_step(s, dt, rhs);
    y_ode[i] = s.y;
  }

  const RigidBodyJacobi pair = rigid_body_jacobi(m, v, Eigen::Vector3d::Zero(), w, dt, T);

  CartanCheck out;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, y_fd[i].norm());
  out.max_norm = scale;
  if (scale == 0.0) scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.residual_fd_vs_jacobi =
        std::max(out.residual_fd_vs_jacobi, (y_ode[i] - y_fd[i]).norm() / scale);
    out.residual_fd_vs_pair =
        std::max(out.residual_fd_vs_pair, (pair.y[i] - y_fd[i]).norm() / scale);
  }
  return out;
}

ConjugationCheck conjugation_check(const RigidBodyMetric& m, const RigidBodyJacobi& run) {
  const std::size_t n = run.times.size();
  if (n < 3) throw DomainError("conjugation_check: run too short");
  const Eigen::Vector3d momentum = m.moments().cwiseProduct(run.u.front());

  // Adjoint action in coordinates: column j is Ad_eta(e_j).  The group
  // matrix itself is not the coordinate action in this basis.
  auto ad_matrix = [](const Eigen::Matrix3d& eta) {
    Eigen::Matrix3d a;
    for (int j = 0; j < 3; ++j)
      a.col(j) = unhat(eta * hat(Eigen::Vector3d::Unit(j)) * eta.transpose());
    return a;
  };

  std::vector<Eigen::Vector3d> Y(n), Z(n), MZ(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Matrix3d A = ad_matrix(run.frames[i]);
    Y[i] = A * run.y[i];
    Z[i] = A * run.z[i];
    MZ[i] = A * m.moments().cwiseProduct(run.z[i]);  // (A Lambda A^T) Z = A Lambda z
  }

  ConjugationCheck out;
  double zscale = 0.0, mscale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    zscale = std::max(zscale, Z[i].norm());
    mscale = std::max(mscale, (Z[i].cross(momentum)).norm() + MZ[i].norm());
  }
  if (zscale == 0.0) zscale = 1.0;
  if (mscale == 0.0) mscale = 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h2 = run.times[i + 1] - run.times[i - 1];
    const Eigen::Vector3d dY = (Y[i + 1] - Y[i - 1]) / h2;
    const Eigen::Vector3d dMZ = (MZ[i + 1] - MZ[i - 1]) / h2;
    out.flow_residual = std::max(out.flow_residual, (dY - Z[i]).norm() / zscale);
    out.momentum_residual =
        std::max(out.momentum_residual, (dMZ + Z[i].cross(momentum)).norm() / mscale);
  }
  return out;
}

}  // namespace diffcurv

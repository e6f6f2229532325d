#include "diffcurv/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Geometry>

namespace diffcurv {

EquationSpec EquationSpec::camassa_holm(double a, double b, int modes) {
  EquationSpec s;
  s.kind = Kind::CamassaHolmAB;
  s.a = a;
  s.b = b;
  s.modes = modes;
  s.validate();
  return s;
}

EquationSpec EquationSpec::burgers(double a, int modes) {
  EquationSpec s;
  s.kind = Kind::Burgers1D;
  s.a = a;
  s.b = 0.0;
  s.modes = modes;
  s.validate();
  return s;
}

EquationSpec EquationSpec::hunter_saxton(int modes) {
  EquationSpec s;
  s.kind = Kind::HunterSaxton;
  s.a = 0.0;
  s.b = 1.0;
  s.modes = modes;
  s.validate();
  return s;
}

EquationSpec EquationSpec::kdv(double central, int modes) {
  EquationSpec s;
  s.kind = Kind::KdV;
  s.central = central;
  s.modes = modes;
  s.validate();
  return s;
}

EquationSpec EquationSpec::rigid_body(const Eigen::Vector3d& moments) {
  EquationSpec s;
  s.kind = Kind::RigidBody;
  s.moments = moments;
  s.validate();
  return s;
}

void EquationSpec::validate() const {
  switch (kind) {
    case Kind::CamassaHolmAB:
      if (a <= 0 && b <= 0) throw DomainError("CamassaHolmAB: need a > 0 or b > 0");
      if (a < 0 || b < 0) throw DomainError("CamassaHolmAB: negative weight");
      break;
    case Kind::Burgers1D:
      if (a <= 0) throw DomainError("Burgers1D: need a > 0");
      break;
    case Kind::HunterSaxton:
    case Kind::KdV:
      break;
    case Kind::RigidBody:
      if ((moments.array() <= 0).any()) throw DomainError("RigidBody: moments must be positive");
      return;
  }
  if (modes < 1) throw DomainError("EquationSpec: need at least one mode");
  if (period <= 0) throw DomainError("EquationSpec: period must be positive");
}

CircleMetric EquationSpec::metric() const {
  switch (kind) {
    case Kind::CamassaHolmAB:
      return CircleMetric::sobolev_ab(a, b, period);
    case Kind::Burgers1D:
      return CircleMetric::sobolev_ab(a, 0.0, period);
    case Kind::HunterSaxton:
      return CircleMetric::homogeneous_h1(1.0, period);
    case Kind::KdV:
    case Kind::RigidBody:
      break;
  }
  throw DomainError("EquationSpec: no circle metric backend for this variant");
}

namespace {

template <typename State, typename Rhs>
State rk4_step(const State& s, double dt, Rhs&& f) {
  const State k1 = f(s);
  const State k2 = f(s + (0.5 * dt) * k1);
  const State k3 = f(s + (0.5 * dt) * k2);
  const State k4 = f(s + dt * k3);
  return s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <typename State, typename Rhs>
State rk2_step(const State& s, double dt, Rhs&& f) {
  const State k1 = f(s);
  const State k2 = f(s + (0.5 * dt) * k1);
  return s + dt * k2;
}

template <typename State, typename Rhs>
State advance(const State& s, double dt, Scheme scheme, Rhs&& f) {
  return scheme == Scheme::RK4 ? rk4_step(s, dt, f) : rk2_step(s, dt, f);
}

int step_count(double T, double dt) {
  return std::max(1, static_cast<int>(std::llround(T / dt)));
}

struct LinearizedState {
  TrigPoly u, y, z;
  LinearizedState operator+(const LinearizedState& r) const {
    return {u + r.u, y + r.y, z + r.z};
  }
  friend LinearizedState operator*(double s, const LinearizedState& x) {
    return {s * x.u, s * x.y, s * x.z};
  }
};

// d/dx applied through the momentum form of the Camassa-Holm family:
// m_t = -3a u u_x + b (2 u_x u_xx + u u_xxx), m = (a - b dxx) u.
TrigPoly ch_momentum_rhs(const EquationSpec& spec, const CircleMetric& metric,
                         const TrigPoly& m) {
  const TrigPoly u = metric.solve_inertia(m);
  const TrigPoly ux = u.derivative();
  const TrigPoly uxx = ux.derivative();
  const TrigPoly uxxx = uxx.derivative();
  TrigPoly rhs = (-3.0 * spec.a) * (u * ux);
  if (spec.b != 0.0) rhs += spec.b * (2.0 * (ux * uxx) + u * uxxx);
  return rhs.truncated(spec.modes);
}

double variant_energy(const EquationSpec& spec, const TrigPoly& u) {
  switch (spec.kind) {
    case EquationSpec::Kind::CamassaHolmAB:
    case EquationSpec::Kind::Burgers1D:
    case EquationSpec::Kind::HunterSaxton:
      return spec.metric().inner(u, u);
    case EquationSpec::Kind::KdV:
      return l2_norm_sq(u) + spec.central * spec.central;
    case EquationSpec::Kind::RigidBody:
      break;
  }
  return 0.0;
}

void record_monitors(const EquationSpec& spec, const TrigPoly& u, Trajectory& traj) {
  switch (spec.kind) {
    case EquationSpec::Kind::CamassaHolmAB: {
      const TrigPoly m = spec.metric().apply_inertia(u);
      traj.monitors["momentum_mean"].push_back(m.mean() * m.volume());
      break;
    }
    case EquationSpec::Kind::Burgers1D:
      traj.monitors["mass"].push_back(u.mean() * u.volume());
      traj.monitors["l2"].push_back(l2_norm_sq(u));
      break;
    case EquationSpec::Kind::HunterSaxton: {
      traj.monitors["h1dot"].push_back(l2_norm_sq(u.derivative()));
      break;
    }
    case EquationSpec::Kind::KdV:
      traj.monitors["mass"].push_back(u.mean() * u.volume());
      traj.monitors["l2"].push_back(l2_norm_sq(u));
      break;
    case EquationSpec::Kind::RigidBody:
      break;
  }
}

}  // namespace

TrigPoly velocity_rhs(const EquationSpec& spec, const TrigPoly& u) {
  switch (spec.kind) {
    case EquationSpec::Kind::CamassaHolmAB: {
      const CircleMetric metric = spec.metric();
      return metric.solve_inertia(ch_momentum_rhs(spec, metric, metric.apply_inertia(u)));
    }
    case EquationSpec::Kind::Burgers1D:
      return (-3.0 * (u * u.derivative())).truncated(spec.modes);
    case EquationSpec::Kind::HunterSaxton: {
      const TrigPoly ux = u.derivative();
      const TrigPoly uxx = ux.derivative();
      const TrigPoly g = 2.0 * (ux * uxx) + u * uxx.derivative();
      // u_txx = -g, inverted mode by mode on the mean-zero span.
      const ScalarMultiplier neg_lap{[](const Mode& n, const Eigen::Vector2d& k) {
        return n[0] == 0 ? 0.0 : k.squaredNorm();
      }};
      return solve_multiplier(g.without_mean(), neg_lap).truncated(spec.modes).without_mean();
    }
    case EquationSpec::Kind::KdV: {
      TrigPoly rhs = (-3.0 * (u * u.derivative())).truncated(spec.modes);
      rhs -= spec.central * u.derivative().derivative().derivative();
      return rhs;
    }
    case EquationSpec::Kind::RigidBody:
      break;
  }
  throw DomainError("velocity_rhs: not a field equation");
}

double Trajectory::energy_drift() const {
  if (energy.empty()) return 0.0;
  const double e0 = energy.front();
  const double scale = std::max(std::abs(e0), 1e-300);
  double d = 0.0;
  for (double e : energy) d = std::max(d, std::abs(e - e0) / scale);
  return d;
}

double Trajectory::monitor_drift(const std::string& name) const {
  auto it = monitors.find(name);
  if (it == monitors.end() || it->second.empty())
    throw DomainError("monitor_drift: unknown monitor " + name);
  const double m0 = it->second.front();
  const double scale = std::max(std::abs(m0), 1.0);
  double d = 0.0;
  for (double v : it->second) d = std::max(d, std::abs(v - m0) / scale);
  return d;
}

Trajectory integrate(const EquationSpec& spec, const TrigPoly& u0_in, double dt, double T,
                     const IntegrateOptions& opts) {
  spec.validate();
  if (!spec.is_field()) throw DomainError("integrate: field initial state for rigid body");
  if (dt <= 0 || T <= 0) throw DomainError("integrate: need dt, T > 0");
  if (u0_in.dim() != 1) throw DomainError("integrate: 1d field expected");

  TrigPoly u0 = u0_in.truncated(spec.modes);
  if (spec.kind == EquationSpec::Kind::HunterSaxton) {
    if (std::abs(u0.mean()) > 1e-12 * std::max(1.0, u0.max_amplitude()))
      throw DomainError("integrate: Hunter-Saxton state must have zero mean");
    u0 = u0.without_mean();
  }

  Trajectory traj;
  traj.spec = spec;
  const int n = step_count(T, dt);

  const bool momentum_form = spec.kind == EquationSpec::Kind::CamassaHolmAB;
  const CircleMetric metric =
      momentum_form ? spec.metric() : CircleMetric::sobolev_ab(1.0, 0.0, spec.period);

  TrigPoly state = momentum_form ? metric.apply_inertia(u0) : u0;
  auto to_velocity = [&](const TrigPoly& s) {
    return momentum_form ? metric.solve_inertia(s) : s;
  };
  auto rhs = [&](const TrigPoly& s) {
    return momentum_form ? ch_momentum_rhs(spec, metric, s) : velocity_rhs(spec, to_velocity(s));
  };

  auto record = [&](double t, const TrigPoly& s) {
    const TrigPoly u = to_velocity(s);
    traj.times.push_back(t);
    traj.states.push_back(u);
    traj.energy.push_back(variant_energy(spec, u));
    record_monitors(spec, u, traj);
  };

  record(0.0, state);
  const double e0 = traj.energy.front();
  for (int i = 1; i <= n; ++i) {
    state = advance(state, dt, opts.scheme, rhs);
    const double t = i * dt;
    const TrigPoly u = to_velocity(state);
    const double e = variant_energy(spec, u);
    const bool blown =
        std::abs(e - e0) > opts.energy_drift_bound * std::max(std::abs(e0), 1e-300) ||
        derivative_sup_bound(u) > opts.derivative_bound;
    if (blown || i % opts.record_every == 0 || i == n) record(t, state);
    if (blown) {
      traj.breakdown = true;
      traj.breakdown_time = t;
      break;
    }
  }
  return traj;
}

Trajectory integrate(const EquationSpec& spec, const Eigen::Vector3d& u0, double dt,
                     double T, const IntegrateOptions& opts) {
  spec.validate();
  if (spec.kind != EquationSpec::Kind::RigidBody)
    throw DomainError("integrate: triple initial state requires the rigid body");
  if (dt <= 0 || T <= 0) throw DomainError("integrate: need dt, T > 0");

  Trajectory traj;
  traj.spec = spec;
  const Eigen::Vector3d lam = spec.moments;
  auto rhs = [&lam](const Eigen::Vector3d& u) -> Eigen::Vector3d {
    return -u.cross(lam.cwiseProduct(u)).cwiseQuotient(lam);
  };
  auto record = [&](double t, const Eigen::Vector3d& u) {
    traj.times.push_back(t);
    traj.rb_states.push_back(u);
    traj.energy.push_back(u.dot(lam.cwiseProduct(u)));
    traj.monitors["casimir"].push_back(lam.cwiseProduct(u).squaredNorm());
  };

  Eigen::Vector3d state = u0;
  record(0.0, state);
  const int n = step_count(T, dt);
  for (int i = 1; i <= n; ++i) {
    state = advance(state, dt, opts.scheme, rhs);
    if (i % opts.record_every == 0 || i == n) record(i * dt, state);
  }
  return traj;
}

FlowMap flow_map(const Trajectory& traj, int grid_points, double collapse_floor) {
  if (grid_points < 2) throw DomainError("flow_map: need at least two particles");
  const double L = traj.spec.period;
  std::vector<double> start(grid_points);
  for (int i = 0; i < grid_points; ++i) start[i] = L * i / grid_points;
  return flow_map_from(traj, start, collapse_floor);
}

Trajectory reversed(const Trajectory& traj) {
  if (traj.states.size() != traj.times.size())
    throw DomainError("reversed: field trajectory required");
  Trajectory rev = traj;
  const double T = traj.times.back();
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    rev.times[i] = T - traj.times[traj.times.size() - 1 - i];
    rev.states[i] = -traj.states[traj.states.size() - 1 - i];
  }
  return rev;
}

FlowMap flow_map_from(const Trajectory& traj, const std::vector<double>& start,
                      double collapse_floor) {
  if (traj.states.size() < 2) throw DomainError("flow_map: trajectory too short");
  const int grid_points = static_cast<int>(start.size());
  if (grid_points < 2) throw DomainError("flow_map: need at least two particles");

  FlowMap out;
  std::vector<double> eta = start, etax(start.size(), 1.0);

  auto record = [&](double t) {
    out.times.push_back(t);
    out.positions.push_back(eta);
    out.deformation.push_back(etax);
    bool ok = true;
    double dmin = etax.front();
    for (int i = 0; i + 1 < grid_points; ++i)
      if (!(eta[i] < eta[i + 1])) ok = false;
    for (double d : etax) dmin = std::min(dmin, d);
    out.monotone.push_back(ok);
    if (!ok && !out.first_crossing_time) out.first_crossing_time = t;
    if (dmin <= collapse_floor && !out.first_collapse_time) out.first_collapse_time = t;
  };
  record(traj.times.front());

  // One RK4 step spans two trajectory steps so the midpoint velocity is a
  // stored state; a trailing odd step falls back to the midpoint rule.
  std::size_t j = 0;
  const std::size_t last = traj.states.size() - 1;
  while (j < last) {
    const bool pair = j + 2 <= last;
    const TrigPoly& u0 = traj.states[j];
    const TrigPoly& uh = traj.states[j + 1];
    const TrigPoly& u1 = pair ? traj.states[j + 2] : traj.states[j + 1];
    const double h = pair ? traj.times[j + 2] - traj.times[j] : traj.times[j + 1] - traj.times[j];
    for (int i = 0; i < grid_points; ++i) {
      const double x = eta[i], dx = etax[i];
      if (pair) {
        const double k1 = u0.evaluate(x);
        const double d1 = u0.derivative().evaluate(x) * dx;
        const double k2 = uh.evaluate(x + 0.5 * h * k1);
        const double d2 = uh.derivative().evaluate(x + 0.5 * h * k1) * (dx + 0.5 * h * d1);
        const double k3 = uh.evaluate(x + 0.5 * h * k2);
        const double d3 = uh.derivative().evaluate(x + 0.5 * h * k2) * (dx + 0.5 * h * d2);
        const double k4 = u1.evaluate(x + h * k3);
        const double d4 = u1.derivative().evaluate(x + h * k3) * (dx + h * d3);
        eta[i] = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        etax[i] = dx + h / 6.0 * (d1 + 2.0 * d2 + 2.0 * d3 + d4);
      } else {
        const double k1 = u0.evaluate(x);
        const double mid = x + 0.5 * h * k1;
        const double k2 = 0.5 * (u0.evaluate(mid) + u1.evaluate(mid));
        eta[i] = x + h * k2;
        etax[i] = dx * (1.0 + h * 0.5 * (u0.derivative().evaluate(mid) +
                                         u1.derivative().evaluate(mid)));
      }
    }
    record(pair ? traj.times[j + 2] : traj.times[j + 1]);
    j += pair ? 2 : 1;
  }
  return out;
}

JacobiRun jacobi_linearized(const EquationSpec& spec, const TrigPoly& u0, const TrigPoly& y0,
                            const TrigPoly& z0, double dt, double T) {
  spec.validate();
  if (!spec.is_field()) throw DomainError("jacobi_linearized: field variants only here");
  const CircleMetric backend = spec.metric();
  const int N = spec.modes;
  using State = LinearizedState;

  auto rhs = [&](const State& s) -> State {
    TrigPoly du = velocity_rhs(spec, s.u);
    // y' = z + ad_u y = z - [u, y];  z' = -ad*_u z - ad*_z u
    TrigPoly dy = (s.z - backend.bracket(s.u, s.y)).truncated(N);
    TrigPoly dz = (-1.0 * (backend.ad_star(s.u, s.z) + backend.ad_star(s.z, s.u))).truncated(N);
    if (spec.kind == EquationSpec::Kind::HunterSaxton) {
      dy = dy.without_mean();
      dz = dz.without_mean();
    }
    return {du, dy, dz};
  };

  JacobiRun run;
  run.base.spec = spec;
  State s{backend.project(u0).truncated(N), backend.project(y0).truncated(N),
          backend.project(z0).truncated(N)};
  auto record = [&](double t) {
    run.base.times.push_back(t);
    run.base.states.push_back(s.u);
    run.base.energy.push_back(backend.inner(s.u, s.u));
    run.y.push_back(s.y);
    run.z.push_back(s.z);
    run.y_norm.push_back(std::sqrt(std::max(0.0, backend.inner(s.y, s.y))));
    run.z_norm.push_back(std::sqrt(std::max(0.0, backend.inner(s.z, s.z))));
  };
  record(0.0);
  const int n = step_count(T, dt);
  for (int i = 1; i <= n; ++i) {
    s = rk4_step(s, dt, rhs);
    record(i * dt);
  }
  return run;
}

double jacobi_fd_gap(const EquationSpec& spec, const TrigPoly& u0, const TrigPoly& z0,
                     double eps, double dt, double T) {
  const CircleMetric backend = spec.metric();
  const JacobiRun lin =
      jacobi_linearized(spec, u0, TrigPoly::zero(1, {spec.period, 1.0}), z0, dt, T);
  const Trajectory base = integrate(spec, u0, dt, T);
  const Trajectory pert = integrate(spec, u0 + eps * z0, dt, T);
  if (base.states.size() != pert.states.size() || base.states.size() != lin.z.size())
    throw DomainError("jacobi_fd_gap: trajectory lengths differ (breakdown?)");
  double gap = 0.0;
  for (std::size_t i = 0; i < base.states.size(); ++i) {
    const TrigPoly fd = (1.0 / eps) * (pert.states[i] - base.states[i]);
    const TrigPoly diff = fd - lin.z[i];
    gap = std::max(gap, std::sqrt(std::max(0.0, backend.inner(diff, diff))));
  }
  return gap;
}

}  // namespace diffcurv

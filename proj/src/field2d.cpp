#include "diffcurv/field2d.hpp"

#include <Eigen/Dense>

namespace diffcurv {

VectorField2 lie_bracket(const VectorField2& u, const VectorField2& v) {
  auto advect = [](const VectorField2& a, const TrigPoly& f) {
    return a.x * f.derivative(0) + a.y * f.derivative(1);
  };
  return {advect(u, v.x) - advect(v, u.x), advect(u, v.y) - advect(v, u.y)};
}

namespace {

// Gathers the four amplitudes of a mode into two Eigen vectors (cos pair,
// sin pair), applies fn to each, and scatters back.
template <typename Fn>
VectorField2 per_mode(const VectorField2& u, Fn&& fn) {
  VectorField2 out = VectorField2::zero(u.period());
  std::map<Mode, bool> modes;
  for (const auto& [n, a] : u.x.terms()) modes[n] = true;
  for (const auto& [n, a] : u.y.terms()) modes[n] = true;
  for (const auto& [n, dummy] : modes) {
    const auto ax = u.x.coef(n);
    const auto ay = u.y.coef(n);
    const Eigen::Vector2d k = u.x.wavevector(n);
    const Eigen::Vector2d cpair = fn(n, k, Eigen::Vector2d(ax.c, ay.c));
    const Eigen::Vector2d spair = fn(n, k, Eigen::Vector2d(ax.s, ay.s));
    out.x.add_term(false, n, cpair[0]);
    out.y.add_term(false, n, cpair[1]);
    out.x.add_term(true, n, spair[0]);
    out.y.add_term(true, n, spair[1]);
  }
  out.x.prune();
  out.y.prune();
  return out;
}

}  // namespace

VectorField2 apply_multiplier(const VectorField2& u, const MatrixMultiplier& m) {
  return per_mode(u, [&](const Mode& n, const Eigen::Vector2d& k,
                         const Eigen::Vector2d& amps) -> Eigen::Vector2d {
    return m.action(n, k) * amps;
  });
}

VectorField2 solve_multiplier(const VectorField2& u, const MatrixMultiplier& m) {
  return per_mode(u, [&](const Mode& n, const Eigen::Vector2d& k,
                         const Eigen::Vector2d& amps) -> Eigen::Vector2d {
    const Eigen::Matrix2d a = m.action(n, k);
    const double det = a.determinant();
    const double scale = a.cwiseAbs().maxCoeff();
    if (std::abs(det) <= 1e-14 * std::max(scale * scale, 1e-300)) {
      if (amps.norm() == 0.0) return Eigen::Vector2d::Zero();
      throw SingularModeError("singular mode " + mode_name(n, 2) +
                              ": 2x2 inertia block not invertible");
    }
    return a.inverse() * amps;
  });
}

VectorField2 remove_harmonic(const VectorField2& u) {
  return {u.x.without_mean(), u.y.without_mean()};
}

}  // namespace diffcurv

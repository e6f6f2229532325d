#pragma once

// Exact finite trigonometric polynomials on the circle and the 2-torus.
//
// A TrigPoly is a sparse table mapping canonical integer mode vectors n to
// cosine/sine amplitude pairs:
//
//   p(x) = sum_n  A_n cos(2*pi*<n, x/L>) + B_n sin(2*pi*<n, x/L>)
//
// where L is the domain period per axis.  Canonical form: the first nonzero
// entry of n is positive (cos(-n.x) = cos(n.x), sin(-n.x) = -sin(n.x) are
// folded at insertion), and the zero mode carries only a cosine amplitude.
// All ring operations (sum, product, derivative, L2 pairing) are exact in
// this class; products use product-to-sum identities, so there is no
// aliasing and degrees add.

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace diffcurv {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Relative amplitude below which a coefficient is treated as exact-zero
// debris and removed after arithmetic.
inline constexpr double kPruneRel = 1e-14;

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a per-mode inversion meets a zero (or singular) symbol,
// e.g. inverting a - b d^2/dx^2 on the constant mode with a = 0.
struct SingularModeError : DomainError {
  explicit SingularModeError(const std::string& what) : DomainError(what) {}
};

using Mode = std::array<int, 2>;

inline std::string mode_name(const Mode& n, int dim) {
  return dim == 1 ? "n=" + std::to_string(n[0])
                  : "n=(" + std::to_string(n[0]) + "," + std::to_string(n[1]) + ")";
}

class TrigPoly {
 public:
  struct Coef {
    double c = 0.0;  // cosine amplitude
    double s = 0.0;  // sine amplitude
  };
  using TermMap = std::map<Mode, Coef>;

  TrigPoly() : dim_(1), period_{1.0, 1.0} {}
  TrigPoly(int dim, std::array<double, 2> period);

  static TrigPoly zero(int dim = 1, std::array<double, 2> period = {1.0, 1.0});
  static TrigPoly constant(double value, int dim = 1,
                           std::array<double, 2> period = {1.0, 1.0});
  // cos (sine=false) or sin (sine=true) of 2*pi*<n, x/L>
  static TrigPoly harmonic(bool sine, Mode n, double amp, int dim,
                           std::array<double, 2> period = {1.0, 1.0});

  // Circle (dim 1) convenience builders: cos/sin(2*pi*n*x/L).
  static TrigPoly cosx(int n, double amp = 1.0, double period = 1.0);
  static TrigPoly sinx(int n, double amp = 1.0, double period = 1.0);
  // Torus (dim 2) builders: cos/sin(2*pi*(n0*x/L0 + n1*y/L1)).
  static TrigPoly cosxy(int n0, int n1, double amp = 1.0,
                        std::array<double, 2> period = {1.0, 1.0});
  static TrigPoly sinxy(int n0, int n1, double amp = 1.0,
                        std::array<double, 2> period = {1.0, 1.0});

  int dim() const { return dim_; }
  const std::array<double, 2>& period() const { return period_; }
  double volume() const { return dim_ == 1 ? period_[0] : period_[0] * period_[1]; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Max-norm degree: max_n max_i |n_i|.
  int degree() const;

  // Zero-frequency cosine amplitude == average over the domain.
  double mean() const;

  double max_amplitude() const;

  // Amplitudes at a (not necessarily canonical) mode.
  Coef coef(Mode n) const;

  // Physical wavevector 2*pi*n/L of a mode.
  Eigen::Vector2d wavevector(const Mode& n) const {
    return {kTwoPi * n[0] / period_[0], kTwoPi * n[1] / period_[1]};
  }

  // Adds amp * cos or sin at mode n, folding to canonical form.
  void add_term(bool sine, Mode n, double amp);

  TrigPoly& operator+=(const TrigPoly& rhs);
  TrigPoly& operator-=(const TrigPoly& rhs);
  TrigPoly& operator*=(double scalar);

  TrigPoly derivative(int axis = 0) const;
  double evaluate(double x) const;
  double evaluate(double x, double y) const;

  // Drops every mode with max-norm degree > max_degree (Galerkin cutoff).
  TrigPoly truncated(int max_degree) const;
  TrigPoly without_mean() const;

  // Removes coefficients below kPruneRel * max_amplitude().
  void prune();

  // Removes coefficients below an absolute floor (for cancellation debris
  // whose scale is set by the operands, not the result).
  TrigPoly cleaned(double floor) const;

  void require_compatible(const TrigPoly& other, const char* op) const;

  std::string str() const;

 private:
  int dim_;
  std::array<double, 2> period_;
  TermMap terms_;
};

TrigPoly operator+(TrigPoly lhs, const TrigPoly& rhs);
TrigPoly operator-(TrigPoly lhs, const TrigPoly& rhs);
TrigPoly operator-(const TrigPoly& p);
TrigPoly operator*(TrigPoly p, double scalar);
TrigPoly operator*(double scalar, TrigPoly p);

// Exact pointwise product (degrees add, no aliasing).
TrigPoly operator*(const TrigPoly& p, const TrigPoly& q);

// integral of p*q over [0,L]^d
double l2_inner(const TrigPoly& p, const TrigPoly& q);
double l2_norm_sq(const TrigPoly& p);

inline TrigPoly differentiate(const TrigPoly& p, int axis = 0) { return p.derivative(axis); }
inline TrigPoly project_modes(const TrigPoly& p, int max_degree) { return p.truncated(max_degree); }
inline double mean(const TrigPoly& p) { return p.mean(); }

// sup-norm of the gradient, sum over axes of sum of |amp| * |omega|
double derivative_sup_bound(const TrigPoly& p);

double max_abs_on_grid(const TrigPoly& p, int points_per_axis = 64);

// A diagonal (Fourier-multiplier) operator: mode n with physical wavevector
// k = 2*pi*n/L is scaled by action(n, k).  Used for inertia operators such
// as a - b d^2/dx^2 (symbol a + b|k|^2).
struct ScalarMultiplier {
  std::function<double(const Mode&, const Eigen::Vector2d&)> action;
};

TrigPoly apply_multiplier(const TrigPoly& p, const ScalarMultiplier& m);
// Per-mode division by the symbol; throws SingularModeError on a zero symbol.
TrigPoly solve_multiplier(const TrigPoly& p, const ScalarMultiplier& m);

}  // namespace diffcurv

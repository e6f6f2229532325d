#include "diffcurv/trigpoly.hpp"

#include <algorithm>
#include <complex>
#include <sstream>
#include <vector>

namespace diffcurv {

namespace {

bool is_canonical(const Mode& n) {
  if (n[0] != 0) return n[0] > 0;
  return n[1] >= 0;
}

// Returns the canonical representative and whether the sine part flips.
std::pair<Mode, bool> canonicalize(Mode n) {
  if (is_canonical(n)) return {n, false};
  return {Mode{-n[0], -n[1]}, true};
}

}  // namespace

TrigPoly::TrigPoly(int dim, std::array<double, 2> period) : dim_(dim), period_(period) {
  if (dim != 1 && dim != 2) throw DomainError("TrigPoly: dim must be 1 or 2");
  if (period[0] <= 0 || (dim == 2 && period[1] <= 0))
    throw DomainError("TrigPoly: period must be positive");
  if (dim == 1) period_[1] = 1.0;
}

TrigPoly TrigPoly::zero(int dim, std::array<double, 2> period) {
  return TrigPoly(dim, period);
}

TrigPoly TrigPoly::constant(double value, int dim, std::array<double, 2> period) {
  TrigPoly p(dim, period);
  if (value != 0.0) p.terms_[{0, 0}] = Coef{value, 0.0};
  return p;
}

TrigPoly TrigPoly::harmonic(bool sine, Mode n, double amp, int dim,
                            std::array<double, 2> period) {
  TrigPoly p(dim, period);
  if (dim == 1 && n[1] != 0) throw DomainError("TrigPoly: 1d mode with nonzero second index");
  p.add_term(sine, n, amp);
  p.prune();
  return p;
}

TrigPoly TrigPoly::cosx(int n, double amp, double period) {
  return harmonic(false, {n, 0}, amp, 1, {period, 1.0});
}
TrigPoly TrigPoly::sinx(int n, double amp, double period) {
  return harmonic(true, {n, 0}, amp, 1, {period, 1.0});
}
TrigPoly TrigPoly::cosxy(int n0, int n1, double amp, std::array<double, 2> period) {
  return harmonic(false, {n0, n1}, amp, 2, period);
}
TrigPoly TrigPoly::sinxy(int n0, int n1, double amp, std::array<double, 2> period) {
  return harmonic(true, {n0, n1}, amp, 2, period);
}

int TrigPoly::degree() const {
  int d = 0;
  for (const auto& [n, a] : terms_) d = std::max({d, std::abs(n[0]), std::abs(n[1])});
  return d;
}

double TrigPoly::mean() const {
  auto it = terms_.find(Mode{0, 0});
  return it == terms_.end() ? 0.0 : it->second.c;
}

double TrigPoly::max_amplitude() const {
  double m = 0.0;
  for (const auto& [n, a] : terms_) m = std::max({m, std::abs(a.c), std::abs(a.s)});
  return m;
}

TrigPoly::Coef TrigPoly::coef(Mode n) const {
  auto [cn, flip] = canonicalize(n);
  auto it = terms_.find(cn);
  if (it == terms_.end()) return {};
  Coef a = it->second;
  if (flip) a.s = -a.s;
  return a;
}

void TrigPoly::add_term(bool sine, Mode n, double amp) {
  if (amp == 0.0) return;
  auto [cn, flip] = canonicalize(n);
  Coef& a = terms_[cn];
  if (cn == Mode{0, 0}) {
    if (!sine) a.c += amp;  // sin(0) contributes nothing
  } else if (sine) {
    a.s += flip ? -amp : amp;
  } else {
    a.c += amp;
  }
  if (a.c == 0.0 && a.s == 0.0) terms_.erase(cn);
}

void TrigPoly::require_compatible(const TrigPoly& other, const char* op) const {
  if (dim_ != other.dim_)
    throw DomainError(std::string(op) + ": dimension mismatch");
  for (int i = 0; i < dim_; ++i)
    if (std::abs(period_[i] - other.period_[i]) > 1e-12 * std::max(1.0, period_[i]))
      throw DomainError(std::string(op) + ": period mismatch");
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& rhs) {
  require_compatible(rhs, "add");
  for (const auto& [n, a] : rhs.terms_) {
    Coef& b = terms_[n];
    b.c += a.c;
    b.s += a.s;
  }
  prune();
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& rhs) {
  require_compatible(rhs, "subtract");
  for (const auto& [n, a] : rhs.terms_) {
    Coef& b = terms_[n];
    b.c -= a.c;
    b.s -= a.s;
  }
  prune();
  return *this;
}

TrigPoly& TrigPoly::operator*=(double scalar) {
  if (scalar == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [n, a] : terms_) {
    a.c *= scalar;
    a.s *= scalar;
  }
  return *this;
}

TrigPoly TrigPoly::derivative(int axis) const {
  if (axis < 0 || axis >= dim_) throw DomainError("derivative: axis out of range");
  TrigPoly out(dim_, period_);
  for (const auto& [n, a] : terms_) {
    const double w = kTwoPi * n[axis] / period_[axis];
    if (w == 0.0) continue;
    // d/dx [A cos(th) + B sin(th)] = w B cos(th) - w A sin(th)
    out.terms_[n] = Coef{w * a.s, -w * a.c};
  }
  out.prune();
  return out;
}

double TrigPoly::evaluate(double x) const {
  if (dim_ != 1) throw DomainError("evaluate: expected 1d point");
  double v = 0.0;
  for (const auto& [n, a] : terms_) {
    const double th = kTwoPi * n[0] * x / period_[0];
    v += a.c * std::cos(th) + a.s * std::sin(th);
  }
  return v;
}

double TrigPoly::evaluate(double x, double y) const {
  if (dim_ != 2) throw DomainError("evaluate: expected 2d point");
  double v = 0.0;
  for (const auto& [n, a] : terms_) {
    const double th = kTwoPi * (n[0] * x / period_[0] + n[1] * y / period_[1]);
    v += a.c * std::cos(th) + a.s * std::sin(th);
  }
  return v;
}

TrigPoly TrigPoly::truncated(int max_degree) const {
  if (max_degree < 0) throw DomainError("truncated: negative cutoff");
  TrigPoly out(dim_, period_);
  for (const auto& [n, a] : terms_)
    if (std::max(std::abs(n[0]), std::abs(n[1])) <= max_degree) out.terms_[n] = a;
  return out;
}

TrigPoly TrigPoly::without_mean() const {
  TrigPoly out = *this;
  out.terms_.erase(Mode{0, 0});
  return out;
}

void TrigPoly::prune() {
  const double cut = kPruneRel * max_amplitude();
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second.c) <= cut && std::abs(it->second.s) <= cut)
      it = terms_.erase(it);
    else
      ++it;
  }
}

TrigPoly TrigPoly::cleaned(double floor) const {
  TrigPoly out(dim_, period_);
  for (const auto& [n, a] : terms_)
    if (std::abs(a.c) > floor || std::abs(a.s) > floor) out.terms_[n] = a;
  return out;
}

std::string TrigPoly::str() const {
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& [n, a] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "[" << mode_name(n, dim_) << " c=" << a.c << " s=" << a.s << "]";
  }
  if (first) os << "0";
  return os.str();
}

TrigPoly operator+(TrigPoly lhs, const TrigPoly& rhs) { return lhs += rhs; }
TrigPoly operator-(TrigPoly lhs, const TrigPoly& rhs) { return lhs -= rhs; }
TrigPoly operator-(const TrigPoly& p) {
  TrigPoly out = p;
  out *= -1.0;
  return out;
}
TrigPoly operator*(TrigPoly p, double scalar) { return p *= scalar; }
TrigPoly operator*(double scalar, TrigPoly p) { return p *= scalar; }

namespace {

// Complex exponential view: the canonical (n, A, B) term corresponds to
// coefficients (A - iB)/2 at +n and (A + iB)/2 at -n.
using Cplx = std::complex<double>;

// Dense 1d product over index range [-D, D]; exact convolution.
TrigPoly multiply_dense_1d(const TrigPoly& p, const TrigPoly& q) {
  const int dp = p.degree(), dq = q.degree(), D = dp + dq;
  std::vector<Cplx> a(2 * dp + 1), b(2 * dq + 1), r(2 * D + 1);
  auto fill = [](const TrigPoly& t, std::vector<Cplx>& v, int d) {
    for (const auto& [n, co] : t.terms()) {
      const Cplx half(0.5 * co.c, -0.5 * co.s);
      v[static_cast<std::size_t>(n[0] + d)] += half;
      v[static_cast<std::size_t>(-n[0] + d)] += std::conj(half);
    }
  };
  fill(p, a, dp);
  fill(q, b, dq);
  for (int i = -dp; i <= dp; ++i) {
    const Cplx ai = a[static_cast<std::size_t>(i + dp)];
    if (ai == 0.0) continue;
    for (int j = -dq; j <= dq; ++j)
      r[static_cast<std::size_t>(i + j + D)] += ai * b[static_cast<std::size_t>(j + dq)];
  }
  TrigPoly out(1, p.period());
  out.add_term(false, {0, 0}, r[static_cast<std::size_t>(D)].real());
  for (int n = 1; n <= D; ++n) {
    const Cplx cn = r[static_cast<std::size_t>(n + D)];
    out.add_term(false, {n, 0}, 2.0 * cn.real());
    out.add_term(true, {n, 0}, -2.0 * cn.imag());
  }
  out.prune();
  return out;
}

TrigPoly multiply_sparse_2d(const TrigPoly& p, const TrigPoly& q) {
  // Full-spectrum maps (both +n and -n) keep the convolution uniform.
  auto expand = [](const TrigPoly& t) {
    std::map<Mode, Cplx> full;
    for (const auto& [n, co] : t.terms()) {
      const Cplx half(0.5 * co.c, -0.5 * co.s);
      full[n] += half;
      full[Mode{-n[0], -n[1]}] += std::conj(half);
    }
    return full;
  };
  const auto fp = expand(p), fq = expand(q);
  std::map<Mode, Cplx> conv;
  for (const auto& [m, cm] : fp)
    for (const auto& [n, cn] : fq) conv[Mode{m[0] + n[0], m[1] + n[1]}] += cm * cn;

  TrigPoly out(2, p.period());
  for (const auto& [n, c] : conv) {
    if (n == Mode{0, 0}) {
      out.add_term(false, n, c.real());
    } else if (n[0] > 0 || (n[0] == 0 && n[1] > 0)) {
      out.add_term(false, n, 2.0 * c.real());
      out.add_term(true, n, -2.0 * c.imag());
    }
  }
  out.prune();
  return out;
}

}  // namespace

TrigPoly operator*(const TrigPoly& p, const TrigPoly& q) {
  p.require_compatible(q, "multiply");
  if (p.is_zero() || q.is_zero()) return TrigPoly::zero(p.dim(), p.period());
  return p.dim() == 1 ? multiply_dense_1d(p, q) : multiply_sparse_2d(p, q);
}

double l2_inner(const TrigPoly& p, const TrigPoly& q) {
  p.require_compatible(q, "l2_inner");
  const double vol = p.volume();
  double acc = 0.0;
  const auto& a = p.terms();
  const auto& b = q.terms();
  // Walk the smaller table.
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  for (const auto& [n, ca] : small) {
    auto it = large.find(n);
    if (it == large.end()) continue;
    const auto& cb = it->second;
    if (n == Mode{0, 0})
      acc += vol * ca.c * cb.c;
    else
      acc += 0.5 * vol * (ca.c * cb.c + ca.s * cb.s);
  }
  return acc;
}

double l2_norm_sq(const TrigPoly& p) { return l2_inner(p, p); }

double derivative_sup_bound(const TrigPoly& p) {
  double bound = 0.0;
  for (int axis = 0; axis < p.dim(); ++axis) {
    double s = 0.0;
    for (const auto& [n, a] : p.terms()) {
      const double w = std::abs(kTwoPi * n[axis] / p.period()[axis]);
      s += w * (std::abs(a.c) + std::abs(a.s));
    }
    bound = std::max(bound, s);
  }
  return bound;
}

double max_abs_on_grid(const TrigPoly& p, int points_per_axis) {
  double m = 0.0;
  const double hx = p.period()[0] / points_per_axis;
  if (p.dim() == 1) {
    for (int i = 0; i < points_per_axis; ++i) m = std::max(m, std::abs(p.evaluate(i * hx)));
  } else {
    const double hy = p.period()[1] / points_per_axis;
    for (int i = 0; i < points_per_axis; ++i)
      for (int j = 0; j < points_per_axis; ++j)
        m = std::max(m, std::abs(p.evaluate(i * hx, j * hy)));
  }
  return m;
}

TrigPoly apply_multiplier(const TrigPoly& p, const ScalarMultiplier& m) {
  TrigPoly out(p.dim(), p.period());
  for (const auto& [n, a] : p.terms()) {
    const double s = m.action(n, p.wavevector(n));
    out.add_term(false, n, s * a.c);
    out.add_term(true, n, s * a.s);
  }
  out.prune();
  return out;
}

TrigPoly solve_multiplier(const TrigPoly& p, const ScalarMultiplier& m) {
  TrigPoly out(p.dim(), p.period());
  for (const auto& [n, a] : p.terms()) {
    const double s = m.action(n, p.wavevector(n));
    if (s == 0.0)
      throw SingularModeError("singular mode " + mode_name(n, p.dim()) +
                              ": zero symbol in per-mode inversion");
    out.add_term(false, n, a.c / s);
    out.add_term(true, n, a.s / s);
  }
  out.prune();
  return out;
}

}  // namespace diffcurv

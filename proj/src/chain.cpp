#include "loewner/chain.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace loewner {

const char* to_string(StepKind kind) { return kind == StepKind::Vertical ? "vertical" : "tilted"; }

StepKind step_kind_from_string(const std::string& s) {
  if (s == "vertical") return StepKind::Vertical;
  if (s == "tilted") return StepKind::Tilted;
  throw Error(ErrorKind::InvalidArgument, "unknown step kind '" + s + "'");
}

namespace {

constexpr double kPi = std::numbers::pi;

// sqrt with its branch cut on the negative imaginary axis.
inline Complex sqrt_down(Complex x) {
  Complex r = std::sqrt(x);
  return (x.real() < 0 && x.imag() < 0) ? -r : r;
}

inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// Truncated series sum c_n q^n; `ratio` bounds the term decay.
template <std::size_t N>
inline Complex horner(const std::array<double, N>& c, Complex q, double ratio) {
  int n = 1;
  for (double p = ratio; p > 1e-17 && n + 1 < int(N); p *= ratio) ++n;
  double qr = q.real(), qi = q.imag();
  double sr = c[n], si = 0.0;
  for (int k = n - 1; k >= 0; --k) {
    double tr = sr * qr - si * qi + c[k];
    si = sr * qi + si * qr;
    sr = tr;
  }
  return {sr, si};
}

inline double gbinom_next(double c, double p, int j) { return c * (p - double(j) + 1.0) / double(j); }

double tip_length_unit(double alpha) {
  return 2.0 * std::pow(alpha, alpha) * std::pow(1.0 - alpha, 1.0 - alpha) /
         std::sqrt(alpha * (1.0 - alpha));
}

}  // namespace

double tilted_tip_preimage(double alpha, double dt) {
  return 2.0 * std::sqrt(dt) * (1.0 - 2.0 * alpha) / std::sqrt(alpha * (1.0 - alpha));
}

Complex tilted_tip(double alpha, double dt) {
  return std::polar(std::sqrt(dt) * tip_length_unit(alpha), alpha * kPi);
}

std::pair<double, double> tilted_params_for_tip(Complex tip) {
  double alpha = std::arg(tip) / kPi;
  double s = std::abs(tip) / tip_length_unit(alpha);
  return {alpha, s * s};
}

double tilted_alpha_for_increment(double dl, double dt) {
  double s = dl / (2.0 * std::sqrt(dt));
  return 0.5 - s / (2.0 * std::sqrt(4.0 + s * s));
}

SlitKernel::SlitKernel(const ElementarySlitMap& m)
    : kind_(m.kind), lambda_(m.lambda), dt_(m.dt), alpha_(m.alpha) {
  if (!(m.dt > 0) || !std::isfinite(m.dt)) throw Error(ErrorKind::InvalidGrid, "step dt must be positive");
  if (!(m.alpha > 0 && m.alpha < 1)) throw Error(ErrorKind::InvalidArgument, "step alpha must lie in (0,1)");
  sigma_ = std::sqrt(dt_);
  if (kind_ == StepKind::Vertical) {
    alpha_ = 0.5;
    a_ = b_ = 2.0 * sigma_;
    zstar_ = 0.0;
    tip_ = Complex(0.0, a_);
    lambda_after_ = lambda_;
    return;
  }
  a_ = 2.0 * sigma_ * std::sqrt(alpha_ / (1.0 - alpha_));
  b_ = 2.0 * sigma_ * std::sqrt((1.0 - alpha_) / alpha_);
  zstar_ = tilted_tip_preimage(alpha_, dt_);
  tip_ = tilted_tip(alpha_, dt_);
  lambda_after_ = lambda_ + zstar_;

  // Laurent coefficients at infinity in units sigma = 1.
  double a1 = a_ / sigma_, b1 = b_ / sigma_;
  double p = 1.0 - alpha_, q = alpha_;
  std::array<double, kTerms + 1> ca{}, cb{};
  ca[0] = cb[0] = 1.0;
  for (int j = 1; j <= kTerms; ++j) {
    ca[j] = gbinom_next(ca[j - 1], p, j) * a1;
    cb[j] = gbinom_next(cb[j - 1], q, j) * (-b1);
  }
  for (int n = 0; n <= kTerms; ++n) {
    double s = 0.0;
    for (int j = 0; j <= n; ++j) s += ca[j] * cb[n - j];
    fc_[n] = s;
  }
  // Lagrange inversion: 1/z = sum xi_n (1/u)^n with
  // xi_n = (1/n) [x^(n-1)] (1 + a x)^(n p) (1 - b x)^(n q).
  std::array<double, kTerms + 2> xi{};
  for (int n = 1; n <= kTerms + 1; ++n) {
    double pa = 1.0, pb = 1.0;
    std::vector<double> ea(n), eb(n);
    ea[0] = eb[0] = 1.0;
    for (int j = 1; j < n; ++j) {
      pa = gbinom_next(pa, n * p, j) * a1;
      pb = gbinom_next(pb, n * q, j) * (-b1);
      ea[j] = pa;
      eb[j] = pb;
    }
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += ea[j] * eb[n - 1 - j];
    xi[n] = s / n;
  }
  gc_[0] = 1.0;
  for (int m = 1; m <= kTerms; ++m) {
    double s = 0.0;
    for (int k = 1; k <= m; ++k) s -= xi[k + 1] * gc_[m - k];
    gc_[m] = s;
  }
  // Rotations sending the cut directions (tip toward 0, reflected tip
  // outward) onto the negative real axis.
  rot1_ = std::polar(1.0, -alpha_ * kPi);
  rot2_ = -std::polar(1.0, alpha_ * kPi);
  {
    Complex u = Complex(0.0, 100.0 * std::abs(tip_));
    Complex z = std::sqrt((u - tip_) * rot1_) * std::sqrt((u - std::conj(tip_)) * rot2_);
    // The two rotations contribute a constant unit factor; pick it at a far point.
    const Complex units[4] = {1.0, -1.0, Complex(0, 1), Complex(0, -1)};
    for (Complex c : units)
      if (std::abs(c * z - u) < std::abs(guess_sign_ * z - u)) guess_sign_ = c;
  }
  f_radius_ = 4.0 * std::max(a_, b_);
  g_radius_ = 4.0 * std::abs(tip_);
  // Very thin angles make the coefficients badly scaled; Newton handles those.
  series_ = alpha_ > 0.02 && alpha_ < 0.98;
}

Complex SlitKernel::f_direct(Complex z) const {
  return std::exp((1.0 - alpha_) * std::log(z + a_) + alpha_ * std::log(z - b_));
}

Complex SlitKernel::f(Complex w) const {
  Complex v = w - lambda_;
  if (kind_ == StepKind::Vertical) {
    Complex r = lambda_ + std::sqrt(v - a_) * std::sqrt(v + a_);
    if (r.imag() < 0) r.imag(0.0);
    return r;
  }
  Complex r;
  double av = std::sqrt(std::norm(v));
  if (series_ && av >= f_radius_) {
    r = mul(v, horner(fc_, sigma_ * std::conj(v) / (av * av), std::max(a_, b_) / av));
  } else {
    r = f_direct(v);
  }
  r += lambda_;
  if (r.imag() < 0) r.imag(0.0);
  return r;
}

Complex SlitKernel::g_guess(Complex u) const {
  // Square-root map with cuts along the slit and its reflection: exact for
  // vertical slits, correct to leading order at the tip and at infinity.
  Complex z = guess_sign_ * std::sqrt((u - tip_) * rot1_) * std::sqrt((u - std::conj(tip_)) * rot2_);
  return z + zstar_;
}

Complex SlitKernel::g_newton(Complex u) const {
  Complex target = std::log(u);
  auto resid = [&](Complex x) {
    return (1.0 - alpha_) * std::log(x + a_) + alpha_ * std::log(x - b_) - target;
  };
  bool interior = u.imag() > 0;
  // Starting point: the best of the square-root guess and the two power-law
  // forms valid near the ends of the preimage interval.
  const Complex cands[3] = {
      g_guess(u),
      b_ + std::pow(u / std::pow(a_ + b_, 1.0 - alpha_), 1.0 / alpha_),
      -a_ + std::pow(u * std::polar(1.0, -alpha_ * kPi) / std::pow(a_ + b_, alpha_), 1.0 / (1.0 - alpha_)),
  };
  Complex z(zstar_, 1e-3 * (a_ + b_));
  double best = std::numeric_limits<double>::infinity();
  for (Complex c : cands) {
    if (interior ? !(c.imag() > 0) : c.imag() < 0) continue;
    double rc = std::abs(resid(c));
    if (std::isfinite(rc) && rc < best) {
      best = rc;
      z = c;
    }
  }
  if (!interior) z.imag(0.0);
  Complex r = resid(z);
  double scale = std::abs(u) + a_ + b_;
  for (int it = 0; it < 80; ++it) {
    Complex dz = r / ((1.0 - alpha_) / (z + a_) + alpha_ / (z - b_));
    double nr = std::abs(r);
    double step = 1.0;
    Complex zn, rn;
    bool accepted = false;
    for (int k = 0; k < 60 && !accepted; ++k, step *= 0.5) {
      zn = z - step * dz;
      if (interior && zn.imag() <= 0) continue;
      if (zn.imag() < 0) zn.imag(0.0);
      rn = resid(zn);
      accepted = std::isfinite(rn.real()) && std::isfinite(rn.imag()) && std::abs(rn) < nr;
    }
    if (!accepted) break;
    bool done = std::abs(zn - z) <= 1e-15 * scale;
    z = zn;
    r = rn;
    if (done || std::abs(r) < 1e-16) break;
  }
  return z;
}

Complex SlitKernel::g(Complex w) const {
  Complex u = w - lambda_;
  Complex r;
  if (kind_ == StepKind::Vertical) {
    r = sqrt_down(u - Complex(0.0, a_)) * sqrt_down(u + Complex(0.0, a_));
  } else {
    double au = std::sqrt(std::norm(u));
    if (series_ && au >= g_radius_) {
      r = mul(u, horner(gc_, sigma_ * std::conj(u) / (au * au), 0.25 * g_radius_ / au));
    } else {
      r = g_newton(u);
    }
  }
  r += lambda_;
  if (r.imag() < 0) r.imag(0.0);
  return r;
}

// ---------------------------------------------------------------- chain

MapChain::MapChain(CapacityGrid grid, std::vector<ElementarySlitMap> steps)
    : grid_(std::move(grid)), steps_(std::move(steps)) {
  if (steps_.size() + 1 != grid_.size())
    throw Error(ErrorKind::InvalidArgument, "chain needs one step per grid interval");
  kernels_.reserve(steps_.size());
  double cum = 0.0;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    kernels_.emplace_back(steps_[i]);
    cum += steps_[i].dt;
    if (std::abs(cum - grid_[i + 1]) > 1e-9 * grid_.T()) {
      std::ostringstream msg;
      msg << "cumulative capacity after step " << i << " disagrees with the grid";
      throw Error(ErrorKind::InvalidGrid, msg.str());
    }
  }
}

Complex MapChain::apply_g(Complex z, std::size_t i0, std::size_t i1) const {
  for (std::size_t k = i0; k < i1; ++k) {
    bool inside = z.imag() > 0;
    Complex w = kernels_[k].g(z);
    if (inside) {
      double near = std::abs(w.real() - kernels_[k].lambda_after());
      if (w.imag() <= 1e-14 * std::max(1.0, near) || (w.imag() <= 1e-12 && near <= 1e-12)) {
        std::ostringstream msg;
        msg << "point swallowed at step " << k;
        throw Error(ErrorKind::DomainError, msg.str(), long(k));
      }
    }
    z = w;
  }
  return z;
}

Complex MapChain::apply_f(Complex w, std::size_t i1, std::size_t i0, bool boundary) const {
  if (!boundary && i1 > i0 && !(w.imag() > 0))
    throw Error(ErrorKind::BoundaryEvaluation, "real argument on the branch cut of an inverse step");
  for (std::size_t k = i1; k-- > i0;) w = kernels_[k].f(w);
  return w;
}

}  // namespace loewner

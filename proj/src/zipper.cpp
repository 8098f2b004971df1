#include "loewner/zipper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "loewner/geometry.hpp"

namespace loewner {

namespace {

[[noreturn]] void fail(ErrorKind kind, const char* what, std::size_t k) {
  std::ostringstream msg;
  msg << what << " at vertex " << k;
  throw Error(kind, msg.str(), long(k));
}

ElementarySlitMap fit_step(Complex w, double lambda, StepKind kind, std::size_t k) {
  ElementarySlitMap m;
  m.kind = kind;
  if (!(w.imag() > 0)) fail(ErrorKind::NotASimpleSlit, "vertex at or below the real axis", k);
  if (kind == StepKind::Vertical) {
    m.lambda = w.real();
    m.dt = 0.25 * w.imag() * w.imag();
    m.alpha = 0.5;
  } else {
    auto [alpha, dt] = tilted_params_for_tip(w - lambda);
    m.lambda = lambda;
    m.dt = dt;
    m.alpha = alpha;
    if (!(alpha > 1e-12 && alpha < 1 - 1e-12)) fail(ErrorKind::NotASimpleSlit, "vertex on the real axis", k);
  }
  if (!(m.dt > 0) || !std::isfinite(m.dt)) fail(ErrorKind::DegenerateStep, "fitted capacity increment not positive", k);
  return m;
}

}  // namespace

ZipperResult extract_driving(const HullCurve& curve, const ZipperOptions& options) {
  if (!curve.simple()) throw Error(ErrorKind::NotASimpleSlit, "zipper needs a simple curve");
  if (curve.size() < 2) throw Error(ErrorKind::InvalidArgument, "zipper needs at least two vertices");
  std::vector<Complex> w = curve.points();
  std::size_t n = w.size() - 1;
  for (std::size_t k = 1; k <= n; ++k)
    if (!(w[k].imag() > 0)) fail(ErrorKind::NotASimpleSlit, "vertex at or below the real axis", k);

  std::vector<ElementarySlitMap> steps;
  steps.reserve(n);
  std::vector<double> times{0.0};
  std::vector<double> lam{w[0].real()};
  times.reserve(n + 1);
  lam.reserve(n + 1);
  double lambda = w[0].real();
  for (std::size_t k = 1; k <= n; ++k) {
    ElementarySlitMap m = fit_step(w[k], lambda, options.step_kind, k);
    SlitKernel ker(m);
    for (std::size_t j = k + 1; j <= n; ++j) {
      w[j] = ker.g(w[j]);
      if (!(w[j].imag() > 0)) fail(ErrorKind::NotASimpleSlit, "curve meets itself or the real axis", j);
    }
    lambda = options.step_kind == StepKind::Tilted ? ker.lambda_after() : m.lambda;
    steps.push_back(m);
    times.push_back(times.back() + m.dt);
    lam.push_back(lambda);
    if (!(times.back() > times[times.size() - 2])) fail(ErrorKind::DegenerateStep, "capacity did not increase", k);
  }
  CapacityGrid grid(times);
  ZipperResult r{Driving(grid, lam), times, MapChain(grid, std::move(steps)), curve.points()};
  return r;
}

HullCurve capacity_parameterize(const HullCurve& curve, std::size_t n, const ZipperOptions& options) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  ZipperResult z = extract_driving(curve, options);
  const auto& t = z.capacity_times;
  const auto& p = curve.points();
  std::vector<Complex> out;
  out.reserve(n + 1);
  out.push_back(p.front());
  for (std::size_t j = 1; j <= n; ++j) {
    double tau = z.T() * double(j) / double(n);
    if (j == n) {
      out.push_back(p.back());
      break;
    }
    std::size_t k = std::size_t(std::upper_bound(t.begin(), t.end(), tau) - t.begin());
    k = std::clamp<std::size_t>(k, 1, t.size() - 1);
    double s = (tau - t[k - 1]) / (t[k] - t[k - 1]);
    out.push_back(p[k - 1] + s * (p[k] - p[k - 1]));
  }
  return HullCurve(std::move(out), curve.simple());
}

DiameterProfile transition_diameter_profile(const ZipperResult& z, double delta) {
  const auto& t = z.capacity_times;
  double T = z.T();
  double hmax = z.driving.grid().max_spacing();
  if (!(delta >= hmax * (1 - 1e-12)) || !(delta <= T))
    throw Error(ErrorKind::InvalidArgument, "delta below the capacity-grid spacing");
  std::vector<Complex> w = z.vertices;
  std::size_t n = w.size() - 1;
  const MapChain& chain = z.fitted_chain;
  DiameterProfile prof;
  double tol = 1e-12 * T;
  std::vector<Complex> set;
  for (std::size_t k = 0; k <= n; ++k) {
    if (t[k] + delta > T + tol) break;
    set.assign(1, Complex(z.driving[k], 0.0));
    for (std::size_t j = k + 1; j <= n && t[j] <= t[k] + delta + tol; ++j) set.push_back(w[j]);
    double d = geom::diameter(set);
    prof.rows.push_back({t[k], d});
    prof.max = std::max(prof.max, d);
    if (k < n) {
      const SlitKernel& ker = chain.kernel(k);
      for (std::size_t j = k + 2; j <= n; ++j) w[j] = ker.g(w[j]);
      w[k + 1] = Complex(z.driving[k + 1], 0.0);
    }
  }
  return prof;
}

WeakLipResult weak_lip_check(const Driving& d, double c) {
  if (!(c > 0)) throw Error(ErrorKind::InvalidArgument, "c must be positive");
  if (d.grid().max_spacing() > 0.25)
    throw Error(ErrorKind::InvalidArgument, "grid spacing must be at most 1/4");
  const auto& t = d.grid().times();
  const auto& v = d.values();
  std::size_t n = t.size();
  WeakLipResult r;
  auto consider = [&](std::size_t i, std::size_t j, double diff) {
    double h = t[j] - t[i];
    double ratio = diff / (c * std::sqrt(h * std::log(1.0 / h)));
    if (ratio > r.worst_ratio) {
      r.worst_ratio = ratio;
      r.worst_s = t[i];
      r.worst_t = t[j];
    }
  };
  if (d.grid().is_uniform()) {
    double h = d.T() / double(n - 1);
    for (std::size_t lag = 1; lag < n && double(lag) * h <= 0.5 * (1 + 1e-12); ++lag) {
      double m = -1.0;
      std::size_t arg = 0;
      for (std::size_t i = 0; i + lag < n; ++i) {
        double diff = std::abs(v[i + lag] - v[i]);
        if (diff > m) {
          m = diff;
          arg = i;
        }
      }
      consider(arg, arg + lag, m);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n && t[j] - t[i] <= 0.5; ++j) consider(i, j, std::abs(v[j] - v[i]));
  }
  r.pass = r.worst_ratio <= 1.0;
  return r;
}

LoewnerEvolution evolution_from_zipper(const ZipperResult& z) {
  return evolution_from_chain(z.fitted_chain, z.driving, z.vertices);
}

}  // namespace loewner

#include "loewner/forward.hpp"

#include <algorithm>
#include <cmath>

#include "loewner/geometry.hpp"

namespace loewner {

const std::vector<Complex>& LoewnerEvolution::trace_points() const {
  if (!trace) throw Error(ErrorKind::MissingTrace, "evolution has no trace");
  return *trace;
}

HullCurve LoewnerEvolution::hull_at(double t) const {
  const auto& tr = trace_points();
  std::size_t i = grid().index_of(t);
  std::vector<Complex> pts;
  pts.reserve(i + 1);
  for (std::size_t k = 0; k <= i; ++k)
    if (pts.empty() || tr[k] != pts.back()) pts.push_back(tr[k]);
  return HullCurve(std::move(pts), false);
}

static std::vector<Complex> compute_trace(const MapChain& chain, const Driving& d, double tip_offset) {
  std::size_t n = chain.size();
  std::vector<Complex> tr(n + 1);
  tr[0] = Complex(d[0], 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    double eps = tip_offset * std::sqrt(chain.steps()[i - 1].dt);
    Complex w(d[i], eps);
    tr[i] = chain.apply_f(w, i, 0, true);
  }
  return tr;
}

LoewnerEvolution solve_forward(const Driving& d, const ForwardOptions& options) {
  const CapacityGrid& g = d.grid();
  std::vector<ElementarySlitMap> steps(g.size() - 1);
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    double dt = g.spacing(i);
    if (!(dt > 0)) throw Error(ErrorKind::InvalidGrid, "nonpositive capacity increment");
    ElementarySlitMap& m = steps[i];
    m.kind = options.step_kind;
    m.lambda = d[i];
    m.dt = dt;
    m.alpha = options.step_kind == StepKind::Tilted ? tilted_alpha_for_increment(d[i + 1] - d[i], dt) : 0.5;
  }
  LoewnerEvolution e{MapChain(g, std::move(steps)), d, std::nullopt};
  if (options.trace) e.trace = compute_trace(e.chain, d, options.tip_offset);
  return e;
}

LoewnerEvolution evolution_from_chain(MapChain chain, std::optional<Driving> driving,
                                      std::optional<std::vector<Complex>> trace) {
  if (!driving) {
    // Tilted steps move the driving across the step; vertical steps carry the
    // value reached at the end of the step as their anchor.
    std::vector<double> v(chain.grid().size());
    v[0] = chain.size() ? chain.steps()[0].lambda : 0.0;
    for (std::size_t i = 0; i < chain.size(); ++i)
      v[i + 1] = chain.steps()[i].kind == StepKind::Tilted ? chain.driving_after(i) : chain.steps()[i].lambda;
    if (chain.size() && chain.steps()[0].kind == StepKind::Vertical && trace && !trace->empty())
      v[0] = (*trace)[0].real();
    driving = Driving(chain.grid(), std::move(v));
  }
  if (driving->size() != chain.grid().size())
    throw Error(ErrorKind::InvalidArgument, "driving length differs from the grid");
  if (trace && trace->size() != chain.grid().size())
    throw Error(ErrorKind::InvalidArgument, "trace length differs from the grid");
  return LoewnerEvolution{std::move(chain), std::move(*driving), std::move(trace)};
}

LoewnerEvolution with_trace(LoewnerEvolution e, double tip_offset) {
  e.trace = compute_trace(e.chain, e.driving, tip_offset);
  return e;
}

Complex eval_g(const LoewnerEvolution& e, double t, Complex z) {
  std::size_t i = e.grid().index_of(t);
  if (z.imag() < 0) throw Error(ErrorKind::InvalidArgument, "eval_g needs Im z >= 0");
  return e.chain.apply_g(z, 0, i);
}

Complex eval_f(const LoewnerEvolution& e, double t, Complex w, bool tip_limit) {
  std::size_t i = e.grid().index_of(t);
  if (w.imag() < 0) throw Error(ErrorKind::InvalidArgument, "eval_f needs Im w >= 0");
  return e.chain.apply_f(w, i, 0, tip_limit);
}

Complex eval_f_prime(const LoewnerEvolution& e, double t, Complex w, double h) {
  std::size_t i = e.grid().index_of(t);
  Complex fp = e.chain.apply_f(w + h, i, 0);
  Complex fm = e.chain.apply_f(w - h, i, 0);
  return (fp - fm) / (2.0 * h);
}

static std::vector<Complex> transition_points(const LoewnerEvolution& e, std::size_t is, std::size_t it) {
  const auto& tr = e.trace_points();
  std::vector<Complex> pts;
  pts.reserve(it - is + 1);
  pts.push_back(Complex(e.driving[is], 0.0));
  for (std::size_t k = is + 1; k <= it; ++k) {
    Complex z = tr[k];
    // Trace points sit slightly off the discrete hull; a point that falls on a
    // later slit is evaluated just above it.
    try {
      pts.push_back(e.chain.apply_g(z, 0, is));
    } catch (const Error&) {
      pts.push_back(e.chain.apply_g(z + Complex(0.0, 1e-9 * (1.0 + std::abs(z))), 0, is));
    }
  }
  return pts;
}

HullCurve transition_hull(const LoewnerEvolution& e, double s, double t, std::size_t samples) {
  if (!e.has_trace()) throw Error(ErrorKind::MissingTrace, "transition hull needs a trace");
  std::size_t is = e.grid().index_of(s), it = e.grid().index_of(t);
  if (!(is < it)) throw Error(ErrorKind::InvalidArgument, "transition hull needs s < t");
  if (samples < 2) throw Error(ErrorKind::InvalidArgument, "samples must be at least 2");
  std::vector<Complex> pts = transition_points(e, is, it);
  // Resample by arc length.
  std::vector<double> acc(pts.size(), 0.0);
  for (std::size_t k = 1; k < pts.size(); ++k) acc[k] = acc[k - 1] + std::abs(pts[k] - pts[k - 1]);
  std::vector<Complex> out;
  out.reserve(samples);
  double total = acc.back();
  for (std::size_t j = 0; j < samples; ++j) {
    double target = total * double(j) / double(samples - 1);
    std::size_t k = std::size_t(std::upper_bound(acc.begin(), acc.end(), target) - acc.begin());
    if (k >= pts.size()) {
      out.push_back(pts.back());
      continue;
    }
    if (k == 0) k = 1;
    double span = acc[k] - acc[k - 1];
    double w = span > 0 ? (target - acc[k - 1]) / span : 0.0;
    Complex p = pts[k - 1] + w * (pts[k] - pts[k - 1]);
    if (!out.empty() && p == out.back()) continue;
    out.push_back(p);
  }
  out[0] = Complex(out[0].real(), 0.0);
  return HullCurve(std::move(out), false);
}

double transition_diameter(const LoewnerEvolution& e, double s, double t) {
  std::size_t is = e.grid().index_of(s), it = e.grid().index_of(t);
  if (!(is < it)) throw Error(ErrorKind::InvalidArgument, "transition diameter needs s < t");
  return geom::diameter(transition_points(e, is, it));
}

double hcap_of_evolution(const LoewnerEvolution& e, double t) {
  std::size_t i = e.grid().index_of(t);
  return 2.0 * e.grid()[i];
}

Complex trace_endpoint(const LoewnerEvolution& e, double tip_offset) {
  std::size_t n = e.chain.size();
  if (n == 0) return Complex(e.driving[0], 0.0);
  double eps = tip_offset * std::sqrt(e.chain.steps()[n - 1].dt);
  return e.chain.apply_f(Complex(e.driving[n], eps), n, 0, true);
}

}  // namespace loewner

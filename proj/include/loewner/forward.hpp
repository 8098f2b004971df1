#pragma once

#include <optional>
#include <vector>

#include "loewner/chain.hpp"
#include "loewner/core.hpp"

namespace loewner {

struct LoewnerEvolution {
  MapChain chain;
  Driving driving;
  std::optional<std::vector<Complex>> trace;

  const CapacityGrid& grid() const { return chain.grid(); }
  double T() const { return chain.grid().T(); }
  bool has_trace() const { return trace.has_value(); }
  // Trace polyline gamma[0, t] (requires a trace).
  HullCurve hull_at(double t) const;
  const std::vector<Complex>& trace_points() const;
};

struct ForwardOptions {
  StepKind step_kind = StepKind::Vertical;
  bool trace = true;
  double tip_offset = 0.1;
};

LoewnerEvolution solve_forward(const Driving& d, const ForwardOptions& options = {});

// Build an evolution from an explicit chain. Without a driving, the values
// are read off the step anchors.
LoewnerEvolution evolution_from_chain(MapChain chain, std::optional<Driving> driving = std::nullopt,
                                      std::optional<std::vector<Complex>> trace = std::nullopt);
// Recompute the trace of an evolution.
LoewnerEvolution with_trace(LoewnerEvolution e, double tip_offset = 0.1);

Complex eval_g(const LoewnerEvolution& e, double t, Complex z);
// Tip-limit mode accepts real arguments and returns boundary values.
Complex eval_f(const LoewnerEvolution& e, double t, Complex w, bool tip_limit = false);
// Centered finite-difference derivative of f_t.
Complex eval_f_prime(const LoewnerEvolution& e, double t, Complex w, double h);

// g_s applied to the trace points on (s, t], resampled to `samples` points.
HullCurve transition_hull(const LoewnerEvolution& e, double s, double t, std::size_t samples);
// Diameter of g_s(gamma(s, t]) together with the driving value at s.
double transition_diameter(const LoewnerEvolution& e, double s, double t);

double hcap_of_evolution(const LoewnerEvolution& e, double t);

// Trace endpoint only: gamma(T) in O(N) evaluations.
Complex trace_endpoint(const LoewnerEvolution& e, double tip_offset = 0.1);

}  // namespace loewner

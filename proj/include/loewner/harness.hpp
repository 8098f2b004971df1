#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "loewner/core.hpp"
#include "loewner/forward.hpp"
#include "loewner/metric.hpp"
#include "loewner/report.hpp"
#include "loewner/zipper.hpp"

namespace loewner {

// Families: segment-at-angle, circular-arc, log-spiral-arc,
// koch-like-quasi-arc. Returns n+1 vertices spaced by arc length.
HullCurve family_curve(const std::string& family, std::size_t n, const nlohmann::json& params = nlohmann::json::object());
std::vector<std::string> curve_families();

// Polyline 0 -> i*height -> length + i*height.
HullCurve hugging_curve(std::size_t n, double height = 1e-3, double length = 1.0);

// lambda on n grid points with increments sqrt(kappa dt) * (+-1).
Driving brownian_driving(double kappa, double T, std::size_t n, std::uint64_t seed);

// max over delta = 2^-k T (k = 3..12, delta <= 1/2) of
// omega(delta) / sqrt(delta log(1/delta)).
double fit_slit_constant(const Driving& d);

struct SlitOptions {
  double stability = 0.25;
  std::vector<double> profile_fractions{0.25, 0.125, 0.0625};
  std::size_t holder_samples = 60;
  double holder_residual_max = 0.5;
};

Report run_theorem_slit(const std::string& family, std::size_t n,
                        const nlohmann::json& params = nlohmann::json::object(), const SlitOptions& opt = {});

// Grid-snapped pairs s < t built from a few starts and lengths.
std::vector<std::pair<double, double>> default_pairs(const LoewnerEvolution& e);

struct JohnpropOptions {
  double C0_max = 50.0;
  double L_max = 50.0;
  double resolution = 0.01;  // relative to the hull diameter
};

struct JohnpropRow {
  double s, t;
  Complex z0;
  double C0;
  double L;
  double jump;        // |lambda_s - lambda_t|
  double trans_diam;  // diam K_{s,t}
};

struct JohnpropResult {
  double C0_hat = 0.0;
  double L_hat = 1.0;
  double lip_norm = 0.0;
  double lip_scan = 0.0;  // 4 max diam K_{s,t} / sqrt(t - s)
  bool conditions_hold = false;
  bool lip_bound_holds = false;
  double C0_max = 50.0;
  double L_max = 50.0;
  std::vector<JohnpropRow> rows;

  Report report(const std::string& prefix = "johnprop") const;
};

JohnpropResult check_johnprop_conditions(const LoewnerEvolution& e, const std::vector<std::pair<double, double>>& pairs,
                                         const JohnpropOptions& opt = {});

struct NonslitOptions {
  double beta = 0.0;  // 0: estimate from the chain
  double C0_max = 50.0;
  double L_max = 50.0;
  double resolution = 0.01;
  double conclusion_slack = 0.25;
};

Report check_nonslit_conditions(const LoewnerEvolution& e, const std::vector<std::pair<double, double>>& pairs,
                                const NonslitOptions& opt = {});

// Heights log-spaced over [1e-4, 1e-1] times the hull scale, capped at 1.
std::vector<double> holder_heights(double scale, std::size_t count = 8);
HolderEstimate holder_of(const LoewnerEvolution& e, double t, std::size_t samples = 60);

// Chain of the steps after s, mapped out by g_s.
LoewnerEvolution transition_evolution(const LoewnerEvolution& e, double s);

Report run_subinvariance_experiment(const HullCurve& curve, const std::vector<double>& s_fractions,
                                    std::size_t holder_samples = 60);

struct SimplicityResult {
  bool simple = true;
  double gap = 0.0;  // closest approach of parts far apart along the curve
};
// Points closer than tol*diam must be within 2*tol*diam along the curve,
// and the curve must stay tol*diam above the real axis away from its base.
SimplicityResult simplicity_test(const std::vector<Complex>& pts, double tol = 1e-3);

// Forward trace of lambda = c sqrt(1 - t) on [0, 1].
Report sqrt_collapse_scan(const std::vector<double>& cs, std::size_t n);

struct BrownianOptions {
  double kappa = 1.0;
  double T = 0.25;
  std::size_t n = 1 << 14;
  double c = 2.0 * 1.4142135623730951;
  std::size_t seeds = 100;
  std::size_t required = 95;
  std::size_t variance_seeds = 1000;
};
Report run_brownian_suite(const BrownianOptions& opt);

// Suites keyed by name: slit, johnprop, nonslit, subinv, brownian.
Report run_suite(const std::string& suite, const nlohmann::json& config);
nlohmann::json default_config(const std::string& suite);

}  // namespace loewner

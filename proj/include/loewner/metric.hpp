#pragma once

#include <cstdint>
#include <vector>

#include "loewner/core.hpp"
#include "loewner/forward.hpp"
#include "loewner/report.hpp"

namespace loewner {

double delta_omega(const DomainSpec& spec, Complex z);

// Smallest d (within resolution) such that a and b are joined inside
// Omega ∩ B(a,d) ∩ B(b,d) on a grid of the given cell size.
double internal_distance(const DomainSpec& spec, Complex a, Complex b, double resolution);
double internal_diameter(const DomainSpec& spec, const std::vector<Complex>& S, double resolution);

// Closed-form distance in H for the density 1/Im.
double hyperbolic_distance_h(Complex w0, Complex w1);
// Distance in H from w to the vertical line Re = anchor.
double dist_to_vertical_h(Complex w, double anchor);

double hyperbolic_distance(const LoewnerEvolution& e, double t, Complex z0, Complex z1);
double dist_to_geodesic(const LoewnerEvolution& e, double t, Complex z, double anchor);

// Omega_t = H \ K_t built from the trace (no connectivity check).
DomainSpec domain_at(const LoewnerEvolution& e, double t);

struct JohnVerdict {
  double L_min = 1.0;  // infinity when some vertex sits on the boundary
  Complex witness_x{};
  bool passed = false;
};
// alpha[0] is the tip.
JohnVerdict john_verify(const DomainSpec& spec, const std::vector<Complex>& alpha, double L);

struct InequalityScan {
  bool pass = true;
  // Smallest rhs - lhs over the samples (infinite when nothing was tested).
  double worst = 0.0;
  Complex worst_point{};
  // Smallest additive constant C that makes every sample pass.
  double c_required = 0.0;
  std::size_t samples = 0;
};

InequalityScan johncone_check(const LoewnerEvolution& e, double t, const std::vector<Complex>& alpha, double beta,
                              double C);

struct HolderEstimate {
  double beta_hat = 1.0;
  double c1_hat = 1.0;
  double fit_residual = 0.0;
  std::size_t sample_count = 0;
  // Raw slope gave beta <= 0 or non-finite derivatives were seen.
  bool degenerate = false;
  std::vector<double> heights;
  std::vector<double> max_derivative;
};

// Real interval outside which f_t is real on the real axis.
struct SupportInterval {
  double lo = 0.0;
  double hi = 0.0;
};
SupportInterval measure_support(const LoewnerEvolution& e, double t, double threshold = 1e-6);

HolderEstimate holder_exponent(const LoewnerEvolution& e, double t, const std::vector<double>& heights,
                               std::size_t per_height_samples);

// Growth bound along geodesics from z0 into D_K.
InequalityScan hyp_growth_check(const LoewnerEvolution& e, double t, Complex z0, double beta, double C,
                                std::size_t samples, std::uint64_t seed = 1);
// Growth bound anchored on the tail length of the geodesic from z0 to z1.
InequalityScan hypext_check(const LoewnerEvolution& e, double t, Complex z0, Complex z1, double beta, double C,
                            std::size_t samples);

// Points of the hyperbolic geodesic of Omega_t from z0 to z1.
std::vector<Complex> geodesic_points(const LoewnerEvolution& e, double t, Complex z0, Complex z1, std::size_t n);

// Smallest r with K inside B(x, r) for a real x.
struct RealDisk {
  double x = 0.0;
  double r = 0.0;
};
RealDisk hull_radius(const std::vector<Complex>& K);

Report distortion_suite(const LoewnerEvolution& e, double t, std::size_t samples, std::uint64_t seed = 1);

}  // namespace loewner

#pragma once

#include <optional>
#include <vector>

#include "loewner/core.hpp"
#include "loewner/forward.hpp"

namespace loewner {

// A continuum given as a polyline; a single point is allowed.
using Continuum = std::vector<Complex>;

struct ModulusProblem {
  DomainSpec domain;
  std::vector<Continuum> E;
  std::vector<Continuum> F;
  int grid_n = 256;
  // Working window; defaults to the padded bbox of E and F.
  std::optional<Box> window;
};

struct DensityGrid {
  double x0 = 0.0, y0 = 0.0, h = 0.0;
  int nx = 0, ny = 0;
  // Row-major |grad u| per cell; NaN outside the computational domain.
  std::vector<double> rho;
};

struct ModulusResult {
  double value = 0.0;  // +inf when E and F share a cell
  DensityGrid density;
  int iterations = 0;
  double residual = 0.0;
};

// Effective conductance between E and F of the 5-point grid on Omega.
ModulusResult discrete_modulus(const ModulusProblem& p);

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double modulus = 0.0;
  bool pass = false;
};

// rho(z, l) <= pi / mod(B(z, delta/2) <-> l) + 3, with 10% slack on the
// right. Computed in the mapped-out plane of Omega_t.
BoundCheck whitneyball_bound_check(const LoewnerEvolution& e, double t, Complex z, double anchor, int grid_n = 256);

struct CrossingBound {
  double mod_value = 0.0;
  double bound = 0.0;  // (log 2) / (2 pi)
  bool pass = false;
};

// Curves in Omega joining the arcs |w - z| = R and |w - z| = 2R.
CrossingBound annulus_crossing_bound(const DomainSpec& spec, Complex z, double R, int grid_n = 256);

// Polyline samples of the part of the circle |w - c| = r with Im w >= 0.
Continuum circle_arc(Complex c, double r, int n = 256);

}  // namespace loewner

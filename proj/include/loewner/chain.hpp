#pragma once

#include <array>
#include <vector>

#include "loewner/core.hpp"

namespace loewner {

enum class StepKind { Vertical, Tilted };

const char* to_string(StepKind kind);
StepKind step_kind_from_string(const std::string& s);

// One hydrodynamically normalized slit map with hcap 2*dt, anchored at lambda.
// Vertical: slit [lambda, lambda + 2i sqrt(dt)].
// Tilted: segment from lambda at angle alpha*pi; the driving value moves to
// lambda + tip_preimage() across the step.
struct ElementarySlitMap {
  StepKind kind = StepKind::Vertical;
  double lambda = 0.0;
  double dt = 0.0;
  double alpha = 0.5;
};

// Tilted-step parameters for a unit-free power map
//   F(z) = (z + a)^(1-alpha) (z - b)^alpha,  a = 2 sqrt(dt alpha/(1-alpha)),
//   b = 2 sqrt(dt (1-alpha)/alpha).
double tilted_tip_preimage(double alpha, double dt);
Complex tilted_tip(double alpha, double dt);
// Inverse of tilted_tip: the (alpha, dt) whose slit ends at tip (Im tip > 0).
std::pair<double, double> tilted_params_for_tip(Complex tip);
// alpha reproducing a driving increment dl over a step of length dt.
double tilted_alpha_for_increment(double dl, double dt);

// Precomputed evaluator for one step. g maps H minus the slit onto H;
// f is its inverse, defined on the closed half-plane (real inputs give the
// boundary values, the driving value maps to the tip).
class SlitKernel {
 public:
  explicit SlitKernel(const ElementarySlitMap& m);

  Complex g(Complex w) const;
  Complex f(Complex w) const;

  double lambda_before() const { return lambda_; }
  double lambda_after() const { return lambda_after_; }
  Complex tip() const { return lambda_ + tip_; }
  double slit_length() const { return std::abs(tip_); }

 private:
  static constexpr int kTerms = 30;

  Complex g_newton(Complex u) const;
  Complex f_direct(Complex z) const;
  Complex g_guess(Complex u) const;

  StepKind kind_;
  double lambda_, lambda_after_;
  double dt_, alpha_, sigma_;
  double a_, b_, zstar_;
  Complex tip_;
  double f_radius_, g_radius_;
  Complex rot1_, rot2_;
  Complex guess_sign_ = 1.0;
  bool series_ = false;
  std::array<double, kTerms + 1> fc_{};  // F(z) = z * sum fc_n (sigma/z)^n
  std::array<double, kTerms + 1> gc_{};  // G(u) = u * sum gc_n (sigma/u)^n
};

class MapChain {
 public:
  MapChain() = default;
  MapChain(CapacityGrid grid, std::vector<ElementarySlitMap> steps);

  const CapacityGrid& grid() const { return grid_; }
  const std::vector<ElementarySlitMap>& steps() const { return steps_; }
  const SlitKernel& kernel(std::size_t i) const { return kernels_[i]; }
  std::size_t size() const { return steps_.size(); }

  // g-maps of steps [i0, i1) applied in order. A point that lands on the
  // real axis from inside H is swallowed: domain-error with the step index.
  Complex apply_g(Complex z, std::size_t i0, std::size_t i1) const;
  // f-maps of steps i1-1 down to i0. Real inputs throw boundary-evaluation
  // unless boundary is set.
  Complex apply_f(Complex w, std::size_t i1, std::size_t i0, bool boundary = false) const;

  // Driving value after step i (at grid time t_{i+1}).
  double driving_after(std::size_t i) const { return kernels_[i].lambda_after(); }

 private:
  CapacityGrid grid_;
  std::vector<ElementarySlitMap> steps_;
  std::vector<SlitKernel> kernels_;
};

}  // namespace loewner

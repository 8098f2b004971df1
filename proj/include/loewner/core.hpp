#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace loewner {

using Complex = std::complex<double>;

enum class ErrorKind {
  InvalidArgument,
  InvalidGrid,
  DomainError,
  BoundaryEvaluation,
  MissingTrace,
  NotASimpleSlit,
  DegenerateStep,
  InvalidDomain,
  ResolutionError,
  Disconnected,
  InvalidCurve,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, long step = -1)
      : std::runtime_error(what), kind_(kind), step_(step) {}

  ErrorKind kind() const { return kind_; }
  // Step index for domain errors raised during map composition, -1 otherwise.
  long step() const { return step_; }

 private:
  ErrorKind kind_;
  long step_;
};

// Capacity-time grid: t_0 = 0 < t_1 < ... < t_{n-1} = T.
class CapacityGrid {
 public:
  CapacityGrid() = default;
  explicit CapacityGrid(std::vector<double> t_values);

  static CapacityGrid uniform(double T, std::size_t n);
  // Geometric head t_{k+1} = (1+growth) t_k from t_1 = head*T, uniform tail.
  // Useful for self-similar drivings whose early steps dominate the error.
  static CapacityGrid graded(double T, std::size_t n, double growth = 0.05,
                             double head = 1e-10);

  const std::vector<double>& times() const { return t_; }
  std::size_t size() const { return t_.size(); }
  double operator[](std::size_t i) const { return t_[i]; }
  double T() const { return t_.back(); }
  double spacing(std::size_t i) const { return t_[i + 1] - t_[i]; }
  double min_spacing() const;
  double max_spacing() const;
  bool is_uniform(double rel_tol = 1e-9) const;

  // Index of a grid time; tolerance 1e-12*T. Throws invalid-argument off grid.
  std::size_t index_of(double t) const;

 private:
  std::vector<double> t_;
};

class Driving {
 public:
  Driving() = default;
  Driving(CapacityGrid grid, std::vector<double> values);

  static Driving constant(const CapacityGrid& grid, double c);
  template <class F>
  static Driving sample(const CapacityGrid& grid, F&& f) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid[i]);
    return Driving(grid, std::move(v));
  }

  const CapacityGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double T() const { return grid_.T(); }
  double operator[](std::size_t i) const { return values_[i]; }

  // Linear interpolation; exact at grid nodes.
  double at(double t) const;
  double sup_norm() const;

 private:
  CapacityGrid grid_;
  std::vector<double> values_;
};

// Polyline in the closed upper half-plane starting on the real axis.
// `filled` marks a solid hull: the region bounded by the polyline and the
// real segment joining its endpoints (both endpoints on the real axis).
class HullCurve {
 public:
  HullCurve() = default;
  HullCurve(std::vector<Complex> points, bool simple = true, bool filled = false);

  const std::vector<Complex>& points() const { return pts_; }
  std::size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }
  bool simple() const { return simple_; }
  bool filled() const { return filled_; }
  double base() const { return pts_.empty() ? 0.0 : pts_.front().real(); }
  Complex tip() const { return pts_.back(); }

  double diameter() const;
  double arc_length() const;
  HullCurve transformed(double scale, double shift) const;

 private:
  std::vector<Complex> pts_;
  bool simple_ = true;
  bool filled_ = false;
};

struct Box {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  bool contains(Complex z) const {
    return z.real() >= xmin && z.real() <= xmax && z.imag() >= ymin && z.imag() <= ymax;
  }
  Box expanded(double margin) const { return {xmin - margin, xmax + margin, ymin, ymax + margin}; }
  Box including(Complex z) const;
};

// Omega = H \ K for a polyline hull K.
class DomainSpec {
 public:
  // Omega = H; bbox is the working window.
  static DomainSpec half_plane(const Box& window);
  // check_resolution = 0 skips the connectivity check (trusted hulls).
  explicit DomainSpec(HullCurve hull, int check_resolution = 256);
  DomainSpec(HullCurve hull, Box bbox, int check_resolution = 256);

  const HullCurve& hull() const { return hull_; }
  const Box& bbox() const { return bbox_; }
  bool empty_hull() const { return hull_.size() < 2 && !hull_.filled(); }

  // Segments of the hull boundary (outline for filled hulls).
  const std::vector<std::pair<Complex, Complex>>& segments() const { return segs_; }

  double dist_to_hull(Complex z) const;
  // delta_Omega(z) = min(Im z, dist(z, K)); 0 inside a filled hull.
  double delta(Complex z) const;
  bool inside_filled(Complex z) const;
  bool contains(Complex z, double tol = 0.0) const;
  // Closed axis-aligned box meets K.
  bool box_meets_hull(double x0, double y0, double x1, double y1) const;
  double box_dist_to_hull(double x0, double y0, double x1, double y1) const;
  bool segment_crosses_hull(Complex a, Complex b) const;

 private:
  DomainSpec() = default;
  void build_segments();
  void check_connected(int resolution) const;

  HullCurve hull_;
  Box bbox_;
  std::vector<std::pair<Complex, Complex>> segs_;
};

// Uniform n-point resampling by linear interpolation.
Driving resample_driving(const Driving& d, std::size_t n);

// Discrete Lip(1/2) semi-norm. Grids above 2e4 points need a window.
double lip_half_norm(const Driving& d, std::optional<double> window = std::nullopt);

struct ModulusRow {
  double delta;
  double omega;
};
std::vector<ModulusRow> modulus_of_continuity(const Driving& d, const std::vector<double>& deltas);

}  // namespace loewner

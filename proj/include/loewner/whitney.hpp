#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "loewner/core.hpp"

namespace loewner {

// Closed dyadic square [x, x + 2^level] x [y, y + 2^level].
struct WhitneySquare {
  int level = 0;
  double x = 0.0;
  double y = 0.0;

  double side() const;
  double diam() const { return side() * 1.4142135623730951; }
  Complex center() const { return {x + 0.5 * side(), y + 0.5 * side()}; }
  // Column index k of a standard square Q_{j,k}.
  long k() const;
  bool contains(Complex z, double tol = 0.0) const;
};

// Standard squares Q_{j,k} = [k 2^j, (k+1) 2^j] x [2^j, 2^{j+1}], stored as
// runs of consecutive k at one level.
struct SquareRun {
  int level;
  long k0;
  long k1;  // inclusive
};

struct StandardSquares {
  int j_min = 0;
  std::vector<SquareRun> runs;

  std::size_t count() const;
  double area() const;
  bool empty() const { return runs.empty(); }
  // Explicit squares; throws invalid-argument beyond `limit`.
  std::vector<WhitneySquare> squares(std::size_t limit = 1000000) const;
};

// Default level cutoff floor(log2 diam K) - 24.
int default_j_min(const HullCurve& K);

StandardSquares standard_squares_meeting(const HullCurve& K, int j_min);

struct WhitneyArea {
  double area = 0.0;
  // Bound on the contribution of levels below j_min.
  double tail = 0.0;
};
WhitneyArea whitney_area(const HullCurve& K, int j_min);

struct Interval {
  double low;
  double high;
  bool contains(double v) const { return v >= low && v <= high; }
};

struct HcapCalibration {
  double ratio_min;    // min hcap / Area_W over the family
  double ratio_max;    // max hcap / Area_W over the family
  double alignment;    // slack for non-dyadic placement
  double c_lo() const { return ratio_max * alignment; }
  double c_hi() const { return alignment / ratio_min; }
};
// Constants compiled in from data/hcap_calibration.json.
const HcapCalibration& hcap_calibration();

// [Area_W / c_hi, c_lo * (Area_W + tail)].
Interval hcap_estimate(const HullCurve& K);

struct CalibrationHull {
  std::string name;
  HullCurve hull;
  double hcap;  // reference value
};
// Vertical slits, filled half-disks and an L-shaped slit.
std::vector<CalibrationHull> hcap_calibration_family();

struct CalibrationRow {
  std::string name;
  double hcap;
  double area;
  double ratio;
};
struct CalibrationTable {
  std::vector<CalibrationRow> rows;
  HcapCalibration constants;
};
CalibrationTable calibrate_hcap(double alignment = 4.0);

// Adaptive decomposition of Omega = H \ K restricted to a window.
class WhitneyComplex {
 public:
  WhitneyComplex() = default;
  WhitneyComplex(std::vector<WhitneySquare> squares, int j_min, std::optional<DomainSpec> domain);

  const std::vector<WhitneySquare>& squares() const { return squares_; }
  std::size_t size() const { return squares_.size(); }
  const WhitneySquare& operator[](std::size_t i) const { return squares_[i]; }
  // Indices of squares whose closures meet square i.
  const std::vector<int>& neighbors(std::size_t i) const { return adj_[i]; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  const std::optional<DomainSpec>& domain() const { return domain_; }
  double area() const;

  // Index of a square containing z (closed), -1 if none.
  int locate(Complex z) const;
  // Squares whose closure contains z.
  std::vector<int> locate_all(Complex z) const;
  bool connected() const;

 private:
  int find(int level, std::int64_t ix, std::int64_t iy) const;
  void build_adjacency();

  std::vector<WhitneySquare> squares_;
  std::vector<std::vector<int>> adj_;
  std::unordered_map<std::uint64_t, int> index_;
  int j_min_ = 0;
  int j_max_ = 0;
  std::optional<DomainSpec> domain_;
};

// Window used when none is given: the domain bbox padded by half its span.
Box default_window(const DomainSpec& spec);

WhitneyComplex adaptive_whitney(const DomainSpec& spec, int j_min, std::optional<Box> window = std::nullopt);

// Fewest squares in an adjacency chain joining the squares of z0 and z1.
int chain_distance(const WhitneyComplex& w, Complex z0, Complex z1);

// Shortest paths for the density 1/delta over a lattice in each Whitney
// square. Graph paths are genuine paths in Omega, so values are upper
// estimates before the final smoothing pass.
class QuasiHyperbolicMetric {
 public:
  QuasiHyperbolicMetric(const DomainSpec& spec, Box window, double resolution, int lattice = 4);

  double distance(Complex z0, Complex z1) const;
  const WhitneyComplex& complex() const { return w_; }

  // Integral of |dz| / delta along a polyline.
  double path_length(const std::vector<Complex>& path) const;

 private:
  double edge_cost(Complex a, Complex b) const;
  std::vector<Complex> shortest_path(Complex z0, Complex z1) const;
  std::vector<Complex> smooth(std::vector<Complex> path) const;

  DomainSpec spec_;
  WhitneyComplex w_;
  int lattice_;
  std::vector<Complex> nodes_;
  std::vector<std::vector<int>> square_nodes_;
  std::vector<std::vector<std::pair<int, double>>> edges_;
};

double quasi_hyperbolic_distance(const DomainSpec& spec, Complex z0, Complex z1, double resolution);

}  // namespace loewner

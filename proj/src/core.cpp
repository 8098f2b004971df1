#include "loewner/core.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <sstream>

#include "loewner/geometry.hpp"

namespace loewner {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidGrid: return "invalid-grid";
    case ErrorKind::DomainError: return "domain-error";
    case ErrorKind::BoundaryEvaluation: return "boundary-evaluation";
    case ErrorKind::MissingTrace: return "missing-trace";
    case ErrorKind::NotASimpleSlit: return "not-a-simple-slit";
    case ErrorKind::DegenerateStep: return "degenerate-step";
    case ErrorKind::InvalidDomain: return "invalid-domain";
    case ErrorKind::ResolutionError: return "resolution-error";
    case ErrorKind::Disconnected: return "disconnected";
    case ErrorKind::InvalidCurve: return "invalid-curve";
  }
  return "unknown";
}

// ---------------------------------------------------------------- grid

CapacityGrid::CapacityGrid(std::vector<double> t_values) : t_(std::move(t_values)) {
  if (t_.size() < 2) throw Error(ErrorKind::InvalidGrid, "grid needs at least two times");
  if (t_.front() != 0.0) throw Error(ErrorKind::InvalidGrid, "grid must start at 0");
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (!std::isfinite(t_[i])) throw Error(ErrorKind::InvalidGrid, "non-finite grid time");
    if (i > 0 && !(t_[i] > t_[i - 1]))
      throw Error(ErrorKind::InvalidGrid, "grid times must be strictly increasing");
  }
}

CapacityGrid CapacityGrid::uniform(double T, std::size_t n) {
  if (n < 2 || !(T > 0)) throw Error(ErrorKind::InvalidArgument, "uniform grid needs n >= 2, T > 0");
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = T * (double(i) / double(n - 1));
  t.back() = T;
  return CapacityGrid(std::move(t));
}

CapacityGrid CapacityGrid::graded(double T, std::size_t n, double growth, double head) {
  if (n < 3 || !(T > 0) || !(growth > 0) || !(head > 0 && head < 1))
    throw Error(ErrorKind::InvalidArgument, "graded grid parameters out of range");
  std::vector<double> t{0.0, head * T};
  while (t.size() < n - 1) {
    double step = growth * t.back();
    double tail_step = (T - t.back()) / double(n - t.size());
    if (step >= tail_step) break;
    t.push_back(t.back() + step);
  }
  double start = t.back();
  std::size_t rest = n - t.size();
  for (std::size_t i = 1; i <= rest; ++i) t.push_back(start + (T - start) * (double(i) / double(rest)));
  t.back() = T;
  return CapacityGrid(std::move(t));
}

double CapacityGrid::min_spacing() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < t_.size(); ++i) m = std::min(m, spacing(i));
  return m;
}

double CapacityGrid::max_spacing() const {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < t_.size(); ++i) m = std::max(m, spacing(i));
  return m;
}

bool CapacityGrid::is_uniform(double rel_tol) const {
  double h = T() / double(t_.size() - 1);
  for (std::size_t i = 0; i < t_.size(); ++i)
    if (std::abs(t_[i] - h * double(i)) > rel_tol * T()) return false;
  return true;
}

std::size_t CapacityGrid::index_of(double t) const {
  double tol = 1e-12 * T();
  auto it = std::lower_bound(t_.begin(), t_.end(), t - tol);
  if (it == t_.end() || std::abs(*it - t) > tol) {
    std::ostringstream msg;
    msg << "time " << t << " is not on the grid";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  return std::size_t(it - t_.begin());
}

// ---------------------------------------------------------------- driving

Driving::Driving(CapacityGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw Error(ErrorKind::InvalidArgument, "driving values and grid differ in length");
  for (double v : values_)
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite driving value");
}

Driving Driving::constant(const CapacityGrid& grid, double c) {
  return Driving(grid, std::vector<double>(grid.size(), c));
}

double Driving::at(double t) const {
  const auto& ts = grid_.times();
  if (t <= ts.front()) return values_.front();
  if (t >= ts.back()) return values_.back();
  auto it = std::upper_bound(ts.begin(), ts.end(), t);
  std::size_t j = std::size_t(it - ts.begin());
  std::size_t i = j - 1;
  if (ts[i] == t) return values_[i];
  double s = (t - ts[i]) / (ts[j] - ts[i]);
  return values_[i] + s * (values_[j] - values_[i]);
}

double Driving::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Driving resample_driving(const Driving& d, std::size_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "resample needs n >= 2");
  CapacityGrid g = CapacityGrid::uniform(d.T(), n);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = d.at(g[i]);
  v.front() = d.values().front();
  v.back() = d.values().back();
  return Driving(std::move(g), std::move(v));
}

double lip_half_norm(const Driving& d, std::optional<double> window) {
  const auto& t = d.grid().times();
  const auto& v = d.values();
  std::size_t n = t.size();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "lip_half_norm needs two points");
  if (n > 20000 && !window)
    throw Error(ErrorKind::InvalidArgument, "grids above 2e4 points need a window |s-t| <= delta_max");
  double wmax = window ? *window : std::numeric_limits<double>::infinity();
  double best = 0.0;
  if (d.grid().is_uniform()) {
    double h = d.T() / double(n - 1);
    for (std::size_t lag = 1; lag < n; ++lag) {
      if (double(lag) * h > wmax * (1 + 1e-12)) break;
      double m = 0.0;
      for (std::size_t i = 0; i + lag < n; ++i) m = std::max(m, std::abs(v[i + lag] - v[i]));
      best = std::max(best, m / std::sqrt(double(lag) * h));
    }
    return best;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double dt = t[j] - t[i];
      if (dt > wmax) break;
      best = std::max(best, std::abs(v[j] - v[i]) / std::sqrt(dt));
    }
  return best;
}

std::vector<ModulusRow> modulus_of_continuity(const Driving& d, const std::vector<double>& deltas) {
  const auto& t = d.grid().times();
  const auto& v = d.values();
  double res = d.grid().min_spacing();
  double tol = 1e-12 * d.T();
  std::vector<ModulusRow> out;
  for (double delta : deltas) {
    if (!(delta > 0) || delta < res * (1 - 1e-9))
      throw Error(ErrorKind::InvalidArgument, "delta below grid resolution");
    // Sliding window [t_i, t_i + delta] with monotone deques for max and min.
    std::deque<std::size_t> qmax, qmin;
    double omega = 0.0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      while (j < t.size() && t[j] - t[i] <= delta + tol) {
        while (!qmax.empty() && v[qmax.back()] <= v[j]) qmax.pop_back();
        qmax.push_back(j);
        while (!qmin.empty() && v[qmin.back()] >= v[j]) qmin.pop_back();
        qmin.push_back(j);
        ++j;
      }
      while (qmax.front() < i) qmax.pop_front();
      while (qmin.front() < i) qmin.pop_front();
      omega = std::max(omega, v[qmax.front()] - v[qmin.front()]);
    }
    out.push_back({delta, omega});
  }
  return out;
}

// ---------------------------------------------------------------- curves

HullCurve::HullCurve(std::vector<Complex> points, bool simple, bool filled)
    : pts_(std::move(points)), simple_(simple), filled_(filled) {
  if (pts_.empty()) return;
  if (std::abs(pts_[0].imag()) > 1e-12 * std::max(1.0, std::abs(pts_[0])))
    throw Error(ErrorKind::InvalidCurve, "curve must start on the real axis");
  pts_[0] = Complex(pts_[0].real(), 0.0);
  for (std::size_t k = 1; k < pts_.size(); ++k) {
    if (!std::isfinite(pts_[k].real()) || !std::isfinite(pts_[k].imag()))
      throw Error(ErrorKind::InvalidCurve, "non-finite curve point");
    if (pts_[k] == pts_[k - 1]) throw Error(ErrorKind::InvalidCurve, "consecutive points coincide");
    if (pts_[k].imag() < 0) throw Error(ErrorKind::InvalidCurve, "curve point below the real axis");
    if (simple_ && !filled_ && pts_[k].imag() <= 0)
      throw Error(ErrorKind::NotASimpleSlit, "simple curve touches the real axis after its start");
  }
  if (filled_) {
    if (pts_.size() < 3 || std::abs(pts_.back().imag()) > 1e-12 * std::max(1.0, std::abs(pts_.back())))
      throw Error(ErrorKind::InvalidCurve, "filled hull outline must end on the real axis");
    pts_.back() = Complex(pts_.back().real(), 0.0);
  }
}

double HullCurve::diameter() const { return geom::diameter(pts_); }

double HullCurve::arc_length() const {
  double s = 0.0;
  for (std::size_t k = 1; k < pts_.size(); ++k) s += std::abs(pts_[k] - pts_[k - 1]);
  return s;
}

HullCurve HullCurve::transformed(double scale, double shift) const {
  std::vector<Complex> p(pts_.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = scale * pts_[k] + shift;
  return HullCurve(std::move(p), simple_, filled_);
}

Box Box::including(Complex z) const {
  return {std::min(xmin, z.real()), std::max(xmax, z.real()), std::min(ymin, z.imag()),
          std::max(ymax, z.imag())};
}

// ---------------------------------------------------------------- domain

DomainSpec DomainSpec::half_plane(const Box& window) {
  DomainSpec s;
  s.bbox_ = window;
  return s;
}

static Box hull_bbox(const HullCurve& h) {
  if (h.empty()) return {};
  Box b{h.points()[0].real(), h.points()[0].real(), 0.0, 0.0};
  for (Complex z : h.points()) b = b.including(z);
  return b;
}

DomainSpec::DomainSpec(HullCurve hull, int check_resolution)
    : DomainSpec(hull, hull_bbox(hull), check_resolution) {}

DomainSpec::DomainSpec(HullCurve hull, Box bbox, int check_resolution)
    : hull_(std::move(hull)), bbox_(bbox) {
  for (Complex z : hull_.points())
    if (!bbox_.contains(z)) bbox_ = bbox_.including(z);
  build_segments();
  if (check_resolution > 0 && hull_.size() >= 2) check_connected(check_resolution);
}

void DomainSpec::build_segments() {
  const auto& p = hull_.points();
  for (std::size_t k = 0; k + 1 < p.size(); ++k) segs_.push_back({p[k], p[k + 1]});
}

double DomainSpec::dist_to_hull(Complex z) const {
  if (hull_.filled() && inside_filled(z)) return 0.0;
  if (segs_.empty()) {
    if (hull_.size() == 1) return std::abs(z - hull_.points()[0]);
    return std::numeric_limits<double>::infinity();
  }
  double d = std::numeric_limits<double>::infinity();
  for (const auto& s : segs_) d = std::min(d, geom::dist_point_segment(z, s.first, s.second));
  return d;
}

double DomainSpec::delta(Complex z) const {
  if (z.imag() <= 0) return 0.0;
  return std::min(z.imag(), dist_to_hull(z));
}

bool DomainSpec::inside_filled(Complex z) const {
  return hull_.filled() && geom::point_in_polygon(z, hull_.points());
}

bool DomainSpec::contains(Complex z, double tol) const {
  if (!(z.imag() > tol)) return false;
  if (inside_filled(z)) return false;
  return dist_to_hull(z) > tol;
}

bool DomainSpec::box_meets_hull(double x0, double y0, double x1, double y1) const {
  for (const auto& s : segs_)
    if (geom::segment_meets_box(s.first, s.second, x0, y0, x1, y1)) return true;
  if (hull_.filled() && inside_filled(Complex(0.5 * (x0 + x1), 0.5 * (y0 + y1)))) return true;
  if (hull_.size() == 1) {
    Complex p = hull_.points()[0];
    return geom::dist_box_point(x0, y0, x1, y1, p) == 0.0;
  }
  return false;
}

double DomainSpec::box_dist_to_hull(double x0, double y0, double x1, double y1) const {
  if (box_meets_hull(x0, y0, x1, y1)) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  for (const auto& s : segs_) d = std::min(d, geom::dist_box_segment(x0, y0, x1, y1, s.first, s.second));
  if (hull_.size() == 1) d = geom::dist_box_point(x0, y0, x1, y1, hull_.points()[0]);
  return d;
}

bool DomainSpec::segment_crosses_hull(Complex a, Complex b) const {
  for (const auto& s : segs_)
    if (geom::segments_intersect(a, b, s.first, s.second)) return true;
  if (hull_.filled() && (inside_filled(a) || inside_filled(b))) return true;
  return false;
}

void DomainSpec::check_connected(int res) const {
  // Raster the hull into a padded grid and flood the complement from the border.
  Box b = bbox_;
  double span = std::max(b.width(), b.height());
  if (span <= 0) return;
  double h = span / res;
  // Irrational offsets keep axis-aligned hull edges off the cell boundaries.
  double x0 = b.xmin - 2.381966011250105 * h, y0 = -0.6180339887498949 * h;
  int nx = int(std::ceil((b.width() + 5 * h) / h));
  int ny = int(std::ceil((b.height() + 3 * h) / h));
  std::vector<char> blocked(std::size_t(nx) * ny, 0);
  auto at = [&](int i, int j) -> char& { return blocked[std::size_t(j) * nx + i]; };
  for (const auto& s : segs_) {
    double sx0 = std::min(s.first.real(), s.second.real()), sx1 = std::max(s.first.real(), s.second.real());
    double sy0 = std::min(s.first.imag(), s.second.imag()), sy1 = std::max(s.first.imag(), s.second.imag());
    int i0 = std::max(0, int(std::floor((sx0 - x0) / h)) - 1), i1 = std::min(nx - 1, int((sx1 - x0) / h) + 1);
    int j0 = std::max(0, int(std::floor((sy0 - y0) / h)) - 1), j1 = std::min(ny - 1, int((sy1 - y0) / h) + 1);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) {
        double cx0 = x0 + i * h, cy0 = y0 + j * h;
        // Only cells the segment passes through the interior of; touching
        // corners would close artificial pockets along thin slits.
        double e = 1e-9 * h;
        if (geom::segment_meets_box(s.first, s.second, cx0 + e, cy0 + e, cx0 + h - e, cy0 + h - e))
          at(i, j) = 1;
      }
  }
  if (hull_.filled())
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        if (inside_filled(Complex(x0 + (i + 0.5) * h, y0 + (j + 0.5) * h))) at(i, j) = 1;
  std::vector<char> seen(blocked.size(), 0);
  std::queue<std::pair<int, int>> q;
  auto push = [&](int i, int j) {
    if (i < 0 || j < 0 || i >= nx || j >= ny) return;
    std::size_t id = std::size_t(j) * nx + i;
    if (seen[id] || blocked[id]) return;
    seen[id] = 1;
    q.push({i, j});
  };
  for (int i = 0; i < nx; ++i) push(i, ny - 1);
  for (int j = 0; j < ny; ++j) {
    push(0, j);
    push(nx - 1, j);
  }
  while (!q.empty()) {
    auto [i, j] = q.front();
    q.pop();
    push(i + 1, j);
    push(i - 1, j);
    push(i, j + 1);
    push(i, j - 1);
  }
  // A free cell whose center is well away from K but unreachable is a pocket.
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      std::size_t id = std::size_t(j) * nx + i;
      if (blocked[id] || seen[id]) continue;
      Complex c(x0 + (i + 0.5) * h, y0 + (j + 0.5) * h);
      if (inside_filled(c)) continue;
      if (dist_to_hull(c) > 1.5 * h && c.imag() > 1.5 * h)
        throw Error(ErrorKind::InvalidDomain, "complement of the hull is not connected");
    }
}

}  // namespace loewner

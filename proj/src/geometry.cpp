#include "loewner/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace loewner::geom {

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

double dist_point_segment(Complex p, Complex a, Complex b) {
  Complex ab = b - a;
  double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double s = ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

static int orient(Complex a, Complex b, Complex c) {
  double v = cross(b - a, c - a);
  return (v > 0) - (v < 0);
}

static bool on_segment(Complex a, Complex b, Complex p) {
  return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

bool segments_intersect(Complex a, Complex b, Complex c, Complex d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

double dist_segment_segment(Complex a, Complex b, Complex c, Complex d) {
  if (segments_intersect(a, b, c, d)) return 0.0;
  return std::min({dist_point_segment(a, c, d), dist_point_segment(b, c, d),
                   dist_point_segment(c, a, b), dist_point_segment(d, a, b)});
}

bool segment_meets_box(Complex a, Complex b, double x0, double y0, double x1, double y1) {
  // Liang-Barsky clipping on the closed box.
  double t0 = 0.0, t1 = 1.0;
  double dx = b.real() - a.real(), dy = b.imag() - a.imag();
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.real() - x0, x1 - a.real(), a.imag() - y0, y1 - a.imag()};
  for (int k = 0; k < 4; ++k) {
    if (p[k] == 0.0) {
      if (q[k] < 0.0) return false;
    } else {
      double r = q[k] / p[k];
      if (p[k] < 0.0) {
        if (r > t1) return false;
        t0 = std::max(t0, r);
      } else {
        if (r < t0) return false;
        t1 = std::min(t1, r);
      }
    }
  }
  return t0 <= t1;
}

double dist_box_point(double x0, double y0, double x1, double y1, Complex p) {
  double dx = std::max({x0 - p.real(), 0.0, p.real() - x1});
  double dy = std::max({y0 - p.imag(), 0.0, p.imag() - y1});
  return std::hypot(dx, dy);
}

double dist_box_segment(double x0, double y0, double x1, double y1, Complex a, Complex b) {
  if (segment_meets_box(a, b, x0, y0, x1, y1)) return 0.0;
  const Complex c[4] = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
  double d = std::min(dist_box_point(x0, y0, x1, y1, a), dist_box_point(x0, y0, x1, y1, b));
  for (const Complex& v : c) d = std::min(d, dist_point_segment(v, a, b));
  return d;
}

bool point_in_polygon(Complex p, const std::vector<Complex>& poly) {
  bool in = false;
  std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    Complex a = poly[i], b = poly[j];
    if ((a.imag() > p.imag()) != (b.imag() > p.imag())) {
      double x = a.real() + (p.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (p.real() < x) in = !in;
    }
  }
  return in;
}

std::vector<Complex> convex_hull(std::vector<Complex> pts) {
  auto less = [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  };
  std::sort(pts.begin(), pts.end(), less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Complex> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

double diameter(const std::vector<Complex>& pts) {
  if (pts.size() < 2) return 0.0;
  std::vector<Complex> h = convex_hull(pts);
  double best = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i + 1; j < h.size(); ++j) best = std::max(best, std::abs(h[i] - h[j]));
  return best;
}

double dist_point_polyline(Complex p, const std::vector<Complex>& poly) {
  if (poly.empty()) return std::numeric_limits<double>::infinity();
  if (poly.size() == 1) return std::abs(p - poly[0]);
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < poly.size(); ++i)
    d = std::min(d, dist_point_segment(p, poly[i], poly[i + 1]));
  return d;
}

double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double h = 0.0;
  for (Complex p : a) h = std::max(h, dist_point_polyline(p, b));
  for (Complex p : b) h = std::max(h, dist_point_polyline(p, a));
  return h;
}

}  // namespace loewner::geom

#include "loewner/metric.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>

#include "loewner/geometry.hpp"

namespace loewner {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t index_at(const LoewnerEvolution& e, double t) { return e.grid().index_of(t); }

Complex g_at(const LoewnerEvolution& e, std::size_t i, Complex z) { return e.chain.apply_g(z, 0, i); }
Complex f_at(const LoewnerEvolution& e, std::size_t i, Complex w, bool boundary = false) {
  return e.chain.apply_f(w, i, 0, boundary);
}

Complex f_prime_at(const LoewnerEvolution& e, std::size_t i, Complex w, double h) {
  return (f_at(e, i, w + h) - f_at(e, i, w - h)) / (2.0 * h);
}

void record(InequalityScan& s, double lhs, double rhs_no_c, double C, Complex x) {
  double margin = rhs_no_c + C - lhs;
  if (s.samples == 0 || margin < s.worst) {
    s.worst = margin;
    s.worst_point = x;
  }
  s.c_required = std::max(s.c_required, lhs - rhs_no_c);
  ++s.samples;
  // Round-off allowance: several checks are exact equalities in closed form.
  if (!(margin >= -1e-12 * std::max(1.0, std::abs(lhs)))) s.pass = false;
}

InequalityScan empty_scan() {
  InequalityScan s;
  s.worst = kInf;
  s.c_required = -kInf;
  return s;
}

}  // namespace

double delta_omega(const DomainSpec& spec, Complex z) {
  if (z.imag() < 0) throw Error(ErrorKind::InvalidArgument, "point below the real axis");
  return spec.delta(z);
}

// ---------------------------------------------------------------- internal distance

namespace {

bool joined_in_lens(const DomainSpec& spec, const std::vector<int>& segs, Complex a, Complex b, double d, double res) {
  double x0 = std::max(a.real(), b.real()) - d, x1 = std::min(a.real(), b.real()) + d;
  double y0 = std::max(0.0, std::max(a.imag(), b.imag()) - d), y1 = std::min(a.imag(), b.imag()) + d;
  if (x0 > x1 || y0 > y1) return false;
  double h = std::max(res, std::sqrt((x1 - x0) * (y1 - y0) / 4e6));
  int nx = std::max(1, int(std::ceil((x1 - x0) / h))), ny = std::max(1, int(std::ceil((y1 - y0) / h)));
  const auto& all = spec.segments();
  std::vector<int> local;
  for (int s : segs) {
    const auto& sg = all[s];
    if (std::max(sg.first.real(), sg.second.real()) < x0 - h || std::min(sg.first.real(), sg.second.real()) > x1 + h ||
        std::max(sg.first.imag(), sg.second.imag()) < y0 - h || std::min(sg.first.imag(), sg.second.imag()) > y1 + h)
      continue;
    local.push_back(s);
  }
  auto crosses = [&](Complex p, Complex q) {
    for (int s : local)
      if (geom::segments_intersect(p, q, all[s].first, all[s].second)) return true;
    return spec.hull().filled() && (spec.inside_filled(p) || spec.inside_filled(q));
  };
  auto center = [&](int i, int j) { return Complex(x0 + (i + 0.5) * h, y0 + (j + 0.5) * h); };
  auto in_lens = [&](Complex c) { return std::abs(c - a) <= d && std::abs(c - b) <= d; };
  std::vector<char> free(std::size_t(nx) * ny, 0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      Complex c = center(i, j);
      if (c.imag() > 0 && in_lens(c) && !spec.inside_filled(c)) {
        bool on = false;
        for (int s : local)
          if (geom::dist_point_segment(c, all[s].first, all[s].second) == 0.0) on = true;
        free[std::size_t(j) * nx + i] = !on;
      }
    }
  // Seed: cells adjacent to a reachable by a clear segment.
  std::vector<char> seen(free.size(), 0);
  std::deque<int> q;
  auto attach = [&](Complex p, auto&& fn) {
    int ci = int(std::floor((p.real() - x0) / h)), cj = int(std::floor((p.imag() - y0) / h));
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        int i = ci + di, j = cj + dj;
        if (i < 0 || j < 0 || i >= nx || j >= ny) continue;
        std::size_t k = std::size_t(j) * nx + i;
        if (free[k] && !crosses(p, center(i, j))) fn(k);
      }
  };
  attach(a, [&](std::size_t k) {
    if (!seen[k]) {
      seen[k] = 1;
      q.push_back(int(k));
    }
  });
  std::vector<char> goal(free.size(), 0);
  attach(b, [&](std::size_t k) { goal[k] = 1; });
  while (!q.empty()) {
    int k = q.front();
    q.pop_front();
    if (goal[k]) return true;
    int i = k % nx, j = k / nx;
    const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
    for (int m = 0; m < 4; ++m) {
      int ii = i + di[m], jj = j + dj[m];
      if (ii < 0 || jj < 0 || ii >= nx || jj >= ny) continue;
      std::size_t kk = std::size_t(jj) * nx + ii;
      if (!free[kk] || seen[kk]) continue;
      if (crosses(center(i, j), center(ii, jj))) continue;
      seen[kk] = 1;
      q.push_back(int(kk));
    }
  }
  return false;
}

}  // namespace

double internal_distance(const DomainSpec& spec, Complex a, Complex b, double resolution) {
  if (!(resolution > 0)) throw Error(ErrorKind::InvalidArgument, "resolution must be positive");
  if (!spec.contains(a) || !spec.contains(b)) throw Error(ErrorKind::InvalidArgument, "points must lie in the domain");
  double lo = std::abs(a - b);
  if (lo == 0.0) return 0.0;
  if (!spec.segment_crosses_hull(a, b)) return lo;
  std::vector<int> segs(spec.segments().size());
  for (std::size_t i = 0; i < segs.size(); ++i) segs[i] = int(i);
  Box box = spec.bbox().including(a).including(b);
  double hi = lo + 2.0 * std::hypot(box.width(), box.height()) + 2.0 * resolution;
  if (!joined_in_lens(spec, segs, a, b, hi, resolution))
    throw Error(ErrorKind::Disconnected, "points are not joined in the domain at this resolution");
  while (hi - lo > resolution) {
    double mid = 0.5 * (lo + hi);
    if (joined_in_lens(spec, segs, a, b, mid, resolution))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double internal_diameter(const DomainSpec& spec, const std::vector<Complex>& S, double resolution) {
  double d = 0.0;
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = i + 1; j < S.size(); ++j) d = std::max(d, internal_distance(spec, S[i], S[j], resolution));
  if (S.size() == 1 && !spec.contains(S[0])) throw Error(ErrorKind::InvalidArgument, "point must lie in the domain");
  return d;
}

// ---------------------------------------------------------------- hyperbolic

double hyperbolic_distance_h(Complex w0, Complex w1) {
  if (!(w0.imag() > 0) || !(w1.imag() > 0)) throw Error(ErrorKind::InvalidArgument, "points must lie in H");
  return 2.0 * std::asinh(std::abs(w0 - w1) / (2.0 * std::sqrt(w0.imag() * w1.imag())));
}

double dist_to_vertical_h(Complex w, double anchor) {
  if (!(w.imag() > 0)) throw Error(ErrorKind::InvalidArgument, "point must lie in H");
  return std::asinh(std::abs(w.real() - anchor) / w.imag());
}

double hyperbolic_distance(const LoewnerEvolution& e, double t, Complex z0, Complex z1) {
  std::size_t i = index_at(e, t);
  return hyperbolic_distance_h(g_at(e, i, z0), g_at(e, i, z1));
}

double dist_to_geodesic(const LoewnerEvolution& e, double t, Complex z, double anchor) {
  std::size_t i = index_at(e, t);
  return dist_to_vertical_h(g_at(e, i, z), anchor);
}

DomainSpec domain_at(const LoewnerEvolution& e, double t) {
  std::size_t i = index_at(e, t);
  if (i == 0) return DomainSpec::half_plane({e.driving[0] - 1.0, e.driving[0] + 1.0, 0.0, 1.0});
  return DomainSpec(e.hull_at(t), 0);
}

// ---------------------------------------------------------------- John curves

JohnVerdict john_verify(const DomainSpec& spec, const std::vector<Complex>& alpha, double L) {
  if (alpha.empty()) throw Error(ErrorKind::InvalidCurve, "empty curve");
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (!spec.contains(alpha[k])) throw Error(ErrorKind::InvalidCurve, "curve leaves the domain");
    if (k > 0 && spec.segment_crosses_hull(alpha[k - 1], alpha[k]))
      throw Error(ErrorKind::InvalidCurve, "curve crosses the hull");
  }
  JohnVerdict v;
  v.L_min = 1.0;
  v.witness_x = alpha[0];
  double diam = 0.0;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    for (std::size_t j = 0; j < k; ++j) diam = std::max(diam, std::abs(alpha[k] - alpha[j]));
    double d = spec.delta(alpha[k]);
    double ratio = d > 0 ? diam / d : kInf;
    if (ratio > v.L_min) {
      v.L_min = ratio;
      v.witness_x = alpha[k];
    }
  }
  v.passed = v.L_min <= L;
  return v;
}

InequalityScan johncone_check(const LoewnerEvolution& e, double t, const std::vector<Complex>& alpha, double beta,
                              double C) {
  if (!(beta > 0)) throw Error(ErrorKind::InvalidArgument, "beta must be positive");
  InequalityScan s = empty_scan();
  if (alpha.size() < 2) return s;
  std::size_t i = index_at(e, t);
  DomainSpec spec = domain_at(e, t);
  Complex z = alpha[0];
  Complex wz = g_at(e, i, z);
  double dz = spec.delta(z);
  for (std::size_t k = 1; k < alpha.size(); ++k) {
    double lhs = hyperbolic_distance_h(g_at(e, i, alpha[k]), wz);
    double rhs = std::log(spec.delta(alpha[k]) / dz) / beta;
    record(s, lhs, rhs, C, alpha[k]);
  }
  return s;
}

// ---------------------------------------------------------------- Hölder exponent

SupportInterval measure_support(const LoewnerEvolution& e, double t, double threshold) {
  std::size_t i = index_at(e, t);
  const auto& v = e.driving.values();
  double lmin = *std::min_element(v.begin(), v.begin() + i + 1), lmax = *std::max_element(v.begin(), v.begin() + i + 1);
  if (i == 0) return {v[0], v[0]};
  double pad = 3.0 * std::sqrt(e.grid()[i]);
  double a = lmin - pad, b = lmax + pad;
  const int n = 4000;
  auto im = [&](double u) { return f_at(e, i, Complex(u, 0.0), true).imag(); };
  int first = -1, last = -1;
  for (int k = 0; k <= n; ++k) {
    double u = a + (b - a) * k / n;
    if (im(u) > threshold) {
      if (first < 0) first = k;
      last = k;
    }
  }
  if (first < 0) return {0.5 * (lmin + lmax), 0.5 * (lmin + lmax)};
  auto refine = [&](double out, double in) {
    for (int it = 0; it < 50; ++it) {
      double mid = 0.5 * (out + in);
      (im(mid) > threshold ? in : out) = mid;
    }
    return in;
  };
  double h = (b - a) / n;
  double lo = first > 0 ? refine(a + (first - 1) * h, a + first * h) : a;
  double hi = last < n ? refine(a + (last + 1) * h, a + last * h) : b;
  return {lo, hi};
}

HolderEstimate holder_exponent(const LoewnerEvolution& e, double t, const std::vector<double>& heights,
                               std::size_t per_height_samples) {
  if (heights.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two heights");
  if (per_height_samples < 2) throw Error(ErrorKind::InvalidArgument, "need at least two samples per height");
  for (double y : heights)
    if (!(y > 0 && y <= 1)) throw Error(ErrorKind::InvalidArgument, "heights must lie in (0, 1]");
  std::size_t i = index_at(e, t);
  SupportInterval supp = measure_support(e, t);
  double width = supp.hi - supp.lo;
  double pad = width > 0 ? 0.1 * width : 1.0;
  HolderEstimate est;
  std::vector<double> lx, ly;
  for (double y : heights) {
    double a = supp.lo - pad - y, b = supp.hi + pad + y;
    std::size_t n = per_height_samples;
    double step = (b - a) / double(n - 1);
    auto dv = [&](double x) {
      double v = std::abs(f_prime_at(e, i, Complex(x, y), y / 100.0));
      ++est.sample_count;
      return v;
    };
    std::vector<std::pair<double, double>> vals;
    bool bad = false;
    for (std::size_t k = 0; k < n; ++k) {
      double x = a + step * double(k);
      double v = dv(x);
      if (!std::isfinite(v)) {
        bad = true;
        continue;
      }
      vals.push_back({v, x});
    }
    if (vals.empty()) {
      est.degenerate = true;
      continue;
    }
    std::sort(vals.rbegin(), vals.rend());
    double best = vals[0].first;
    // Local pattern search around the largest grid values.
    for (std::size_t c = 0; c < std::min<std::size_t>(3, vals.size()); ++c) {
      double x = vals[c].second, v = vals[c].first, s = step;
      while (s > y / 20.0) {
        double vl = dv(x - s), vr = dv(x + s);
        if (std::isfinite(vl) && vl > v && vl >= vr) {
          v = vl;
          x -= s;
        } else if (std::isfinite(vr) && vr > v) {
          v = vr;
          x += s;
        } else {
          s *= 0.5;
        }
      }
      best = std::max(best, v);
    }
    if (bad) est.degenerate = true;
    est.heights.push_back(y);
    est.max_derivative.push_back(best);
    lx.push_back(std::log(y));
    ly.push_back(std::log(best));
  }
  std::size_t m = lx.size();
  if (m < 2) {
    est.degenerate = true;
    est.beta_hat = 1e-6;
    est.fit_residual = kInf;
    return est;
  }
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < m; ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= double(m);
  my /= double(m);
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < m; ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  double slope = sxx > 0 ? sxy / sxx : 0.0;
  double icpt = my - slope * mx;
  double ss = 0;
  for (std::size_t k = 0; k < m; ++k) {
    double r = ly[k] - (icpt + slope * lx[k]);
    ss += r * r;
  }
  est.fit_residual = std::sqrt(ss / double(m));
  est.beta_hat = 1.0 + slope;
  est.c1_hat = std::exp(icpt);
  if (!(est.beta_hat > 0)) {
    est.degenerate = true;
    est.beta_hat = 1e-6;
  }
  est.beta_hat = std::min(est.beta_hat, 1.0);
  return est;
}

// ---------------------------------------------------------------- growth along geodesics

std::vector<Complex> geodesic_points(const LoewnerEvolution& e, double t, Complex z0, Complex z1, std::size_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "need at least two geodesic points");
  std::size_t i = index_at(e, t);
  Complex w0 = g_at(e, i, z0), w1 = g_at(e, i, z1);
  std::vector<Complex> out;
  out.reserve(n);
  double dx = w1.real() - w0.real();
  double scale = std::max(w0.imag(), w1.imag());
  if (std::abs(dx) <= 1e-12 * scale) {
    double l0 = std::log(w0.imag()), l1 = std::log(w1.imag());
    for (std::size_t k = 0; k < n; ++k) {
      double s = double(k) / double(n - 1);
      out.push_back(Complex(w0.real() + s * dx, std::exp(l0 + s * (l1 - l0))));
    }
  } else {
    double c = (std::norm(w1) - std::norm(w0)) / (2.0 * dx);
    double R = std::abs(w0 - c);
    double th0 = std::arg(w0 - c), th1 = std::arg(w1 - c);
    // log tan(theta/2) is hyperbolic arclength along the semicircle.
    double s0 = std::log(std::tan(0.5 * th0)), s1 = std::log(std::tan(0.5 * th1));
    for (std::size_t k = 0; k < n; ++k) {
      double s = s0 + (s1 - s0) * double(k) / double(n - 1);
      double th = 2.0 * std::atan(std::exp(s));
      out.push_back(c + R * Complex(std::cos(th), std::sin(th)));
    }
  }
  out.front() = w0;
  out.back() = w1;
  for (auto& w : out) w = f_at(e, i, w);
  out.front() = z0;
  out.back() = z1;
  return out;
}

namespace {

double growth_scale(const LoewnerEvolution& e, double t, double beta) {
  double d = e.hull_at(t).diameter();
  if (!(d > 0)) throw Error(ErrorKind::InvalidArgument, "hull is empty");
  return std::max(std::pow(d, beta), d);
}

}  // namespace

InequalityScan hyp_growth_check(const LoewnerEvolution& e, double t, Complex z0, double beta, double C,
                                std::size_t samples, std::uint64_t seed) {
  if (!(beta > 0)) throw Error(ErrorKind::InvalidArgument, "beta must be positive");
  std::size_t i = index_at(e, t);
  DomainSpec spec = domain_at(e, t);
  if (!spec.contains(z0)) throw Error(ErrorKind::InvalidArgument, "z0 must lie in the domain");
  const auto& K = spec.hull().points();
  double d = e.hull_at(t).diameter();
  double M = growth_scale(e, t, beta);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Box box = spec.bbox().expanded(100.0 * d);
  Complex w0 = g_at(e, i, z0);
  InequalityScan s = empty_scan();
  std::size_t made = 0, tries = 0;
  const std::size_t per_path = 24;
  while (made < samples && tries < 100 * samples + 100) {
    ++tries;
    Complex p;
    if (made % 2 == 0) {
      p = Complex(box.xmin + U(rng) * box.width(), box.ymax * U(rng));
    } else {
      Complex k = K[std::size_t(U(rng) * double(K.size() - 1))];
      double r = d * std::pow(10.0, -3.0 + 5.0 * U(rng));
      double th = M_PI * U(rng);
      p = k + r * Complex(std::cos(th), std::sin(th));
    }
    if (!spec.contains(p) || spec.dist_to_hull(p) > 100.0 * d) continue;
    std::vector<Complex> pts;
    try {
      pts = geodesic_points(e, t, z0, p, per_path);
    } catch (const Error&) {
      continue;
    }
    ++made;
    for (Complex x : pts) {
      double dx = spec.delta(x);
      if (!(dx > 0)) continue;
      double lhs = hyperbolic_distance_h(w0, g_at(e, i, x));
      record(s, lhs, std::log(M / dx) / beta, C, x);
    }
  }
  return s;
}

InequalityScan hypext_check(const LoewnerEvolution& e, double t, Complex z0, Complex z1, double beta, double C,
                            std::size_t samples) {
  if (!(beta > 0)) throw Error(ErrorKind::InvalidArgument, "beta must be positive");
  std::size_t i = index_at(e, t);
  double M = growth_scale(e, t, beta);
  std::vector<Complex> pts = geodesic_points(e, t, z0, z1, std::max<std::size_t>(samples, 2));
  std::vector<double> tail(pts.size(), 0.0);
  for (std::size_t k = pts.size() - 1; k-- > 0;) tail[k] = tail[k + 1] + std::abs(pts[k + 1] - pts[k]);
  Complex w0 = g_at(e, i, z0);
  InequalityScan s = empty_scan();
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    double lhs = k == 0 ? 0.0 : hyperbolic_distance_h(w0, g_at(e, i, pts[k]));
    record(s, lhs, std::log(M / tail[k]) / beta, C, pts[k]);
  }
  return s;
}

// ---------------------------------------------------------------- distortion

RealDisk hull_radius(const std::vector<Complex>& K) {
  if (K.empty()) return {};
  double a = K[0].real(), b = a;
  for (Complex z : K) {
    a = std::min(a, z.real());
    b = std::max(b, z.real());
  }
  auto reach = [&](double x) {
    double r = 0.0;
    for (Complex z : K) r = std::max(r, std::abs(z - x));
    return r;
  };
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = reach(c), fd = reach(d);
  for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = reach(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = reach(d);
    }
  }
  double x = 0.5 * (a + b);
  return {x, reach(x)};
}

Report distortion_suite(const LoewnerEvolution& e, double t, std::size_t samples, std::uint64_t seed) {
  std::size_t i = index_at(e, t);
  if (i == 0) throw Error(ErrorKind::InvalidArgument, "distortion suite needs t > 0");
  DomainSpec spec = domain_at(e, t);
  const auto& K = spec.hull().points();
  double diam = spec.hull().diameter();
  RealDisk rad = hull_radius(K);
  SupportInterval supp = measure_support(e, t);
  double sdiam = supp.hi - supp.lo, sc = 0.5 * (supp.lo + supp.hi);
  double hcap = 2.0 * e.grid()[i];
  double tol = 1e-3 * diam;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Report rep;
  auto add = [&](const std::string& name, double margin, nlohmann::json params, double slack) {
    rep.push_back({name, margin >= -slack, margin, std::move(params)});
  };

  double far = 0.0;
  for (Complex z : K) far = std::max(far, std::abs(z - sc));
  add("supp_hull_in_double_ball", sdiam - far, {{"support_lo", supp.lo}, {"support_hi", supp.hi}, {"max_dist", far}}, tol);

  double sfar = std::max(std::abs(supp.lo - rad.x), std::abs(supp.hi - rad.x));
  add("supp_support_in_double_ball", 2.0 * rad.r - sfar, {{"rad", rad.r}, {"center", rad.x}, {"max_dist", sfar}}, tol);

  double wz = 0.0;
  for (int k = 0; k <= 64; ++k) {
    double w = supp.lo + sdiam * k / 64.0;
    for (Complex z : K) wz = std::max(wz, std::abs(z - w));
  }
  add("supp_support_to_hull", 4.0 * rad.r - wz, {{"rad", rad.r}, {"max_dist", wz}}, tol);

  double half = 0.5 * sdiam;
  add("supp_hcap_support", half * half - hcap, {{"hcap", hcap}, {"support_half_width", half}}, 1e-3 * hcap);
  add("supp_support_radius", 4.0 * rad.r * rad.r - half * half, {{"rad", rad.r}, {"support_half_width", half}},
      1e-3 * hcap);

  double disp = 0.0;
  Complex disp_at{};
  for (std::size_t k = 0; k < samples; ++k) {
    Complex w(sc + (U(rng) - 0.5) * 8.0 * rad.r, 4.0 * diam * U(rng) + 1e-9 * diam);
    double dv = std::abs(f_at(e, i, w) - w);
    if (dv > disp) {
      disp = dv;
      disp_at = w;
    }
  }
  add("supp_displacement", 3.0 * rad.r - disp,
      {{"rad", rad.r}, {"sup_displacement", disp}, {"at_re", disp_at.real()}, {"at_im", disp_at.imag()}}, tol);

  double worst_fp = 0.0;
  std::size_t far_count = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    double r = 7.0 * diam * (1.0 + 4.0 * U(rng));
    double th = M_PI * U(rng);
    Complex z = Complex(sc, 0.0) + r * Complex(std::cos(th), std::sin(th));
    if (!(z.imag() > 0) || spec.dist_to_hull(z) < 7.0 * diam) continue;
    double fp = std::abs(f_prime_at(e, i, z, 1e-4 * diam) - 1.0);
    worst_fp = std::max(worst_fp, fp);
    ++far_count;
  }
  add("fardist_derivative", 0.5 - worst_fp, {{"max_deviation", worst_fp}, {"samples", far_count}}, 0.0);

  double near_c = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    Complex w(sc + (U(rng) - 0.5) * 4.0 * std::max(sdiam, diam), 10.0 * diam * std::pow(10.0, -4.0 * U(rng)));
    double fp = std::abs(f_prime_at(e, i, w, 1e-3 * w.imag()));
    near_c = std::max(near_c, w.imag() / (diam * fp));
  }
  add("neardist_constant", std::isfinite(near_c) ? near_c : -kInf, {{"fitted_constant", near_c}}, 0.0);

  // (1/pi) int Im f(u) du with u = sc + R sin(theta) to tame the endpoint roots.
  double R = 0.5 * sdiam * (1.0 + 1e-6) + 1e-12;
  auto mass = [&](int panels) {
    static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                 0.9061798459386640};
    static const double gw[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                                 0.2369268850561891};
    double sum = 0.0, h = M_PI / panels;
    for (int p = 0; p < panels; ++p)
      for (int k = 0; k < 5; ++k) {
        double th = -0.5 * M_PI + h * (p + 0.5 * (1.0 + gx[k]));
        double u = sc + R * std::sin(th);
        sum += 0.5 * h * gw[k] * f_at(e, i, Complex(u, 0.0), true).imag() * R * std::cos(th);
      }
    return sum / M_PI;
  };
  int panels = 16;
  double m_prev = mass(panels), m = m_prev;
  for (int it = 0; it < 6; ++it) {
    panels *= 2;
    m = mass(panels);
    if (std::abs(m - m_prev) < 1e-6 * hcap) break;
    m_prev = m;
  }
  add("mu_total_mass", 1e-2 * hcap - std::abs(m - hcap), {{"mass", m}, {"hcap", hcap}}, 0.0);
  return rep;
}

}  // namespace loewner

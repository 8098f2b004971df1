#include "loewner/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <deque>
#include <limits>
#include <queue>

#include "loewner/geometry.hpp"
#include "loewner/zipper.hpp"

#ifndef LOEWNER_HCAP_RATIO_MIN
#error "hcap calibration constants missing"
#endif

namespace loewner {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

std::uint64_t cell_key(int level, std::int64_t ix, std::int64_t iy) {
  return mix(std::uint64_t(level + 4096) * 0x9e3779b97f4a7c15ULL ^ mix(std::uint64_t(ix)) ^
             (mix(std::uint64_t(iy)) << 1));
}

struct XInterval {
  double x0, x1;
};

// x-extent of the part of segment ab inside the closed strip y0 <= y <= y1.
bool clip_to_strip(Complex a, Complex b, double y0, double y1, XInterval& out) {
  double ay = a.imag(), by = b.imag();
  double t0 = 0.0, t1 = 1.0;
  double dy = by - ay;
  if (dy == 0.0) {
    if (ay < y0 || ay > y1) return false;
  } else {
    double ta = (y0 - ay) / dy, tb = (y1 - ay) / dy;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  double xa = a.real() + t0 * (b.real() - a.real());
  double xb = a.real() + t1 * (b.real() - a.real());
  // Snap endpoints that sit on the strip boundary.
  if (t0 == 0.0) xa = a.real();
  if (t1 == 1.0) xb = b.real();
  out = {std::min(xa, xb), std::max(xa, xb)};
  return true;
}

// Slices of the filled region at height y (even-odd on the outline).
void filled_slices(const std::vector<Complex>& p, double y, std::vector<XInterval>& out) {
  std::vector<double> xs;
  std::size_t n = p.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    Complex a = p[i], b = p[j];
    if ((a.imag() > y) != (b.imag() > y))
      xs.push_back(a.real() + (y - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag()));
  }
  std::sort(xs.begin(), xs.end());
  for (std::size_t k = 0; k + 1 < xs.size(); k += 2) out.push_back({xs[k], xs[k + 1]});
}

std::vector<XInterval> merge(std::vector<XInterval> v) {
  std::sort(v.begin(), v.end(), [](const XInterval& a, const XInterval& b) { return a.x0 < b.x0; });
  std::vector<XInterval> out;
  for (const auto& iv : v) {
    if (!out.empty() && iv.x0 <= out.back().x1)
      out.back().x1 = std::max(out.back().x1, iv.x1);
    else
      out.push_back(iv);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- squares

double WhitneySquare::side() const { return std::ldexp(1.0, level); }

long WhitneySquare::k() const { return long(std::floor(x / side() + 0.5)); }

bool WhitneySquare::contains(Complex z, double tol) const {
  double s = side();
  return z.real() >= x - tol && z.real() <= x + s + tol && z.imag() >= y - tol && z.imag() <= y + s + tol;
}

std::size_t StandardSquares::count() const {
  std::size_t c = 0;
  for (const auto& r : runs) c += std::size_t(r.k1 - r.k0 + 1);
  return c;
}

double StandardSquares::area() const {
  double a = 0.0;
  for (const auto& r : runs) a += double(r.k1 - r.k0 + 1) * std::ldexp(1.0, 2 * r.level);
  return a;
}

std::vector<WhitneySquare> StandardSquares::squares(std::size_t limit) const {
  if (count() > limit) throw Error(ErrorKind::InvalidArgument, "too many standard squares to list");
  std::vector<WhitneySquare> out;
  for (const auto& r : runs) {
    double s = std::ldexp(1.0, r.level);
    for (long k = r.k0; k <= r.k1; ++k) out.push_back({r.level, double(k) * s, s});
  }
  return out;
}

int default_j_min(const HullCurve& K) {
  double d = K.size() >= 2 ? K.diameter() : 0.0;
  if (!(d > 0)) return -24;
  return int(std::floor(std::log2(d))) - 24;
}

StandardSquares standard_squares_meeting(const HullCurve& K, int j_min) {
  StandardSquares out;
  out.j_min = j_min;
  if (K.size() < 2) return out;
  const auto& p = K.points();
  double ymax = 0.0;
  for (Complex z : p) ymax = std::max(ymax, z.imag());
  if (!(ymax > 0)) return out;
  int j_top = int(std::floor(std::log2(ymax)));
  std::vector<XInterval> ivs;
  for (int j = j_min; j <= j_top; ++j) {
    double s = std::ldexp(1.0, j);
    ivs.clear();
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
      XInterval iv;
      if (clip_to_strip(p[k], p[k + 1], s, 2 * s, iv)) ivs.push_back(iv);
    }
    if (K.filled()) filled_slices(p, 2 * s, ivs);
    if (ivs.empty()) continue;
    std::vector<SquareRun> runs;
    for (const auto& iv : ivs) {
      long k0 = long(std::ceil(iv.x0 / s)) - 1, k1 = long(std::floor(iv.x1 / s));
      runs.push_back({j, k0, k1});
    }
    std::sort(runs.begin(), runs.end(), [](const SquareRun& a, const SquareRun& b) { return a.k0 < b.k0; });
    std::size_t first = out.runs.size();
    for (const auto& r : runs) {
      if (out.runs.size() > first && r.k0 <= out.runs.back().k1 + 1)
        out.runs.back().k1 = std::max(out.runs.back().k1, r.k1);
      else
        out.runs.push_back(r);
    }
  }
  return out;
}

WhitneyArea whitney_area(const HullCurve& K, int j_min) {
  WhitneyArea r;
  StandardSquares sq = standard_squares_meeting(K, j_min);
  r.area = sq.area();
  if (K.size() < 2) return r;
  // Below the cutoff every strip meets K inside the band Im <= 2^j_min; an
  // x-interval of width w needs at most w/2^j + 2 columns at level j.
  const auto& p = K.points();
  double band = std::ldexp(1.0, j_min);
  std::vector<XInterval> ivs;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    XInterval iv;
    if (clip_to_strip(p[k], p[k + 1], 0.0, band, iv)) ivs.push_back(iv);
  }
  if (K.filled()) ivs.push_back({std::min(p.front().real(), p.back().real()), std::max(p.front().real(), p.back().real())});
  ivs = merge(std::move(ivs));
  double W = 0.0;
  for (const auto& iv : ivs) W += iv.x1 - iv.x0;
  r.tail = W * band + (2.0 * double(ivs.size()) / 3.0) * band * band;
  return r;
}

const HcapCalibration& hcap_calibration() {
  static const HcapCalibration c{LOEWNER_HCAP_RATIO_MIN, LOEWNER_HCAP_RATIO_MAX, LOEWNER_HCAP_ALIGNMENT};
  return c;
}

Interval hcap_estimate(const HullCurve& K) {
  if (K.size() < 2) return {0.0, 0.0};
  WhitneyArea a = whitney_area(K, default_j_min(K));
  const HcapCalibration& c = hcap_calibration();
  return {a.area / c.c_hi(), c.c_lo() * (a.area + a.tail)};
}

static std::string fmt(const char* name, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%g", name, v);
  return buf;
}

static HullCurve half_disk(double r, int n) {
  std::vector<Complex> p;
  p.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    double th = M_PI * (1.0 - double(k) / n);
    p.push_back(r * Complex(std::cos(th), std::sin(th)));
  }
  p.front() = Complex(-r, 0.0);
  p.back() = Complex(r, 0.0);
  return HullCurve(std::move(p), false, true);
}

static double l_shape_hcap(int per_unit) {
  std::vector<Complex> p;
  for (int k = 0; k <= per_unit; ++k) p.push_back(Complex(0.0, double(k) / per_unit));
  for (int k = 1; k <= per_unit; ++k) p.push_back(Complex(double(k) / per_unit, 1.0));
  return 2.0 * extract_driving(HullCurve(std::move(p))).T();
}

std::vector<CalibrationHull> hcap_calibration_family() {
  std::vector<CalibrationHull> fam;
  for (double h : {0.25, 0.5, 1.0, 2.0, 4.0})
    fam.push_back({fmt("slit h", h), HullCurve({Complex(0, 0), Complex(0, h)}), 0.5 * h * h});
  for (double r : {0.5, 1.0, 2.0}) fam.push_back({fmt("half-disk r", r), half_disk(r, 2048), r * r});
  // Reference capacity of the L from the zipper: the fitted chain hull
  // converges to the polyline as vertices are added.
  fam.push_back({"L-shape", HullCurve({Complex(0, 0), Complex(0, 1), Complex(1, 1)}), l_shape_hcap(2000)});
  return fam;
}

CalibrationTable calibrate_hcap(double alignment) {
  CalibrationTable t;
  t.constants = {kInf, 0.0, alignment};
  for (const auto& h : hcap_calibration_family()) {
    double a = whitney_area(h.hull, default_j_min(h.hull)).area;
    double ratio = h.hcap / a;
    t.rows.push_back({h.name, h.hcap, a, ratio});
    t.constants.ratio_min = std::min(t.constants.ratio_min, ratio);
    t.constants.ratio_max = std::max(t.constants.ratio_max, ratio);
  }
  return t;
}

// ---------------------------------------------------------------- complex

WhitneyComplex::WhitneyComplex(std::vector<WhitneySquare> squares, int j_min, std::optional<DomainSpec> domain)
    : squares_(std::move(squares)), j_min_(j_min), j_max_(j_min), domain_(std::move(domain)) {
  for (std::size_t i = 0; i < squares_.size(); ++i) {
    const auto& q = squares_[i];
    j_min_ = std::min(j_min_, q.level);
    j_max_ = std::max(j_max_, q.level);
    double s = q.side();
    index_[cell_key(q.level, std::int64_t(std::floor(q.x / s)), std::int64_t(std::floor(q.y / s)))] = int(i);
  }
  build_adjacency();
}

int WhitneyComplex::find(int level, std::int64_t ix, std::int64_t iy) const {
  auto it = index_.find(cell_key(level, ix, iy));
  if (it == index_.end()) return -1;
  // Guard against hash collisions.
  const auto& q = squares_[it->second];
  double s = q.side();
  if (q.level != level || std::int64_t(std::floor(q.x / s)) != ix || std::int64_t(std::floor(q.y / s)) != iy) return -1;
  return it->second;
}

void WhitneyComplex::build_adjacency() {
  adj_.assign(squares_.size(), {});
  for (std::size_t i = 0; i < squares_.size(); ++i) {
    const auto& q = squares_[i];
    double x0 = q.x, y0 = q.y, x1 = q.x + q.side(), y1 = q.y + q.side();
    for (int j = std::max(j_min_, q.level - 3); j <= std::min(j_max_, q.level + 3); ++j) {
      double s = std::ldexp(1.0, j);
      auto i0 = std::int64_t(std::floor(x0 / s)) - 1, i1 = std::int64_t(std::floor(x1 / s));
      auto k0 = std::int64_t(std::floor(y0 / s)) - 1, k1 = std::int64_t(std::floor(y1 / s));
      for (auto iy = k0; iy <= k1; ++iy)
        for (auto ix = i0; ix <= i1; ++ix) {
          int n = find(j, ix, iy);
          if (n < 0 || std::size_t(n) == i) continue;
          const auto& r = squares_[n];
          double rs = r.side();
          if (r.x <= x1 && r.x + rs >= x0 && r.y <= y1 && r.y + rs >= y0) adj_[i].push_back(n);
        }
    }
  }
}

double WhitneyComplex::area() const {
  double a = 0.0;
  for (const auto& q : squares_) a += q.side() * q.side();
  return a;
}

std::vector<int> WhitneyComplex::locate_all(Complex z) const {
  std::vector<int> out;
  for (int j = j_min_; j <= j_max_; ++j) {
    double s = std::ldexp(1.0, j);
    auto ix = std::int64_t(std::floor(z.real() / s)), iy = std::int64_t(std::floor(z.imag() / s));
    for (auto dy : {0, -1})
      for (auto dx : {0, -1}) {
        int n = find(j, ix + dx, iy + dy);
        if (n >= 0 && squares_[n].contains(z)) out.push_back(n);
      }
  }
  return out;
}

int WhitneyComplex::locate(Complex z) const {
  auto all = locate_all(z);
  return all.empty() ? -1 : all.front();
}

bool WhitneyComplex::connected() const {
  if (squares_.empty()) return true;
  std::vector<char> seen(squares_.size(), 0);
  std::deque<int> q{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!q.empty()) {
    int i = q.front();
    q.pop_front();
    for (int n : adj_[i])
      if (!seen[n]) {
        seen[n] = 1;
        ++count;
        q.push_back(n);
      }
  }
  return count == squares_.size();
}

Box default_window(const DomainSpec& spec) {
  Box b = spec.bbox();
  if (spec.empty_hull()) return b;
  double span = std::max(b.width(), b.height());
  return b.expanded(0.5 * span);
}

WhitneyComplex adaptive_whitney(const DomainSpec& spec, int j_min, std::optional<Box> window) {
  Box win = window ? *window : default_window(spec);
  win.ymin = 0.0;
  double span = std::max(win.width(), win.ymax);
  if (!(span > 0)) throw Error(ErrorKind::InvalidArgument, "empty window");
  int J = int(std::ceil(std::log2(span)));
  if (J < j_min) throw Error(ErrorKind::InvalidArgument, "j_min above the window scale");
  double S = std::ldexp(1.0, J);

  const auto& segs = spec.segments();
  const auto& hp = spec.hull().points();
  bool single = spec.hull().size() == 1;
  bool filled = spec.hull().filled();

  struct Node {
    int level;
    double x, y;
    std::vector<int> cand;
  };
  std::vector<Node> stack;
  std::vector<int> all(segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i) all[i] = int(i);
  long kx0 = long(std::floor(win.xmin / S)), kx1 = std::max(kx0, long(std::ceil(win.xmax / S)) - 1);
  for (long k = kx0; k <= kx1; ++k) stack.push_back({J, double(k) * S, 0.0, all});

  std::vector<WhitneySquare> accepted;
  while (!stack.empty()) {
    Node n = std::move(stack.back());
    stack.pop_back();
    double s = std::ldexp(1.0, n.level), diam = s * std::sqrt(2.0);
    double x1 = n.x + s, y1 = n.y + s;
    double reach = 4.0 * diam;
    double dK = kInf;
    std::vector<int> keep;
    for (int i : n.cand) {
      double d = geom::dist_box_segment(n.x, n.y, x1, y1, segs[i].first, segs[i].second);
      if (d <= reach) {
        keep.push_back(i);
        dK = std::min(dK, d);
      }
    }
    if (single) dK = geom::dist_box_point(n.x, n.y, x1, y1, hp[0]);
    if (filled && dK > 0 && spec.inside_filled(Complex(n.x + 0.5 * s, n.y + 0.5 * s))) continue;
    double d = std::min(n.y, dK);
    if (dK == 0.0 || d < 0.5 * diam) {
      if (n.level <= j_min) continue;
      double h = 0.5 * s;
      for (int c = 0; c < 4; ++c)
        stack.push_back({n.level - 1, n.x + (c & 1) * h, n.y + (c >> 1) * h, keep});
      continue;
    }
    if (d <= 4.0 * diam) accepted.push_back({n.level, n.x, n.y});
  }
  WhitneyComplex w(std::move(accepted), j_min, spec);
  if (!w.connected()) throw Error(ErrorKind::InvalidDomain, "Whitney complex is disconnected at this resolution");
  return w;
}

int chain_distance(const WhitneyComplex& w, Complex z0, Complex z1) {
  int a = w.locate(z0), b = w.locate(z1);
  if (a < 0 || b < 0) throw Error(ErrorKind::ResolutionError, "point not covered by the Whitney complex");
  if (a == b) return 1;
  std::vector<int> dist(w.size(), -1);
  std::deque<int> q{a};
  dist[a] = 1;
  while (!q.empty()) {
    int i = q.front();
    q.pop_front();
    for (int n : w.neighbors(i)) {
      if (dist[n] >= 0) continue;
      dist[n] = dist[i] + 1;
      if (n == b) return dist[n];
      q.push_back(n);
    }
  }
  throw Error(ErrorKind::ResolutionError, "no chain joins the two squares");
}

// ---------------------------------------------------------------- quasi-hyperbolic

namespace {

struct PointKey {
  std::uint64_t operator()(Complex z) const {
    double x = z.real() + 0.0, y = z.imag() + 0.0;
    std::uint64_t a, b;
    std::memcpy(&a, &x, 8);
    std::memcpy(&b, &y, 8);
    return mix(a ^ mix(b));
  }
};
struct PointEq {
  bool operator()(Complex a, Complex b) const { return a == b; }
};

}  // namespace

QuasiHyperbolicMetric::QuasiHyperbolicMetric(const DomainSpec& spec, Box window, double resolution, int lattice)
    : spec_(spec), lattice_(lattice) {
  if (!(resolution > 0)) throw Error(ErrorKind::InvalidArgument, "resolution must be positive");
  if (lattice < 1) throw Error(ErrorKind::InvalidArgument, "lattice must be positive");
  int j_min = int(std::floor(std::log2(resolution)));
  w_ = adaptive_whitney(spec, j_min, window);

  std::unordered_map<Complex, int, PointKey, PointEq> ids;
  auto node = [&](Complex z) {
    auto [it, fresh] = ids.emplace(z, int(nodes_.size()));
    if (fresh) nodes_.push_back(z);
    return it->second;
  };
  std::size_t n = w_.size();
  std::vector<std::vector<int>> own(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& q = w_[i];
    double s = q.side();
    for (int b = 0; b <= lattice; ++b)
      for (int a = 0; a <= lattice; ++a)
        own[i].push_back(node(Complex(q.x + s * (double(a) / lattice), q.y + s * (double(b) / lattice))));
  }
  square_nodes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& list = square_nodes_[i];
    list = own[i];
    const auto& q = w_[i];
    double tol = 1e-12 * q.side();
    for (int nb : w_.neighbors(i)) {
      if (w_[nb].level >= q.level) continue;
      for (int id : own[nb])
        if (q.contains(nodes_[id], tol)) list.push_back(id);
    }
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  edges_.assign(nodes_.size(), {});
  for (std::size_t i = 0; i < n; ++i) {
    const auto& list = square_nodes_[i];
    for (std::size_t a = 0; a < list.size(); ++a)
      for (std::size_t b = a + 1; b < list.size(); ++b) {
        double c = edge_cost(nodes_[list[a]], nodes_[list[b]]);
        edges_[list[a]].push_back({list[b], c});
        edges_[list[b]].push_back({list[a], c});
      }
  }
}

double QuasiHyperbolicMetric::edge_cost(Complex a, Complex b) const {
  static const double gx[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
  static const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  double len = std::abs(b - a);
  if (len == 0.0) return 0.0;
  double dmin = std::min(spec_.delta(a), spec_.delta(b));
  int panels = dmin > 0 ? std::clamp(int(std::ceil(len / (0.5 * dmin))), 1, 256) : 256;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    double t0 = double(p) / panels, h = 1.0 / panels;
    for (int k = 0; k < 3; ++k) {
      double t = t0 + 0.5 * h * (1.0 + gx[k]);
      double d = spec_.delta(a + t * (b - a));
      if (!(d > 0)) return kInf;
      sum += 0.5 * h * gw[k] / d;
    }
  }
  return len * sum;
}

double QuasiHyperbolicMetric::path_length(const std::vector<Complex>& path) const {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) total += edge_cost(path[k], path[k + 1]);
  return total;
}

std::vector<Complex> QuasiHyperbolicMetric::shortest_path(Complex z0, Complex z1) const {
  auto s0 = w_.locate_all(z0), s1 = w_.locate_all(z1);
  if (s0.empty() || s1.empty()) throw Error(ErrorKind::ResolutionError, "point not covered by the Whitney complex");
  std::size_t N = nodes_.size();
  const int src = int(N), dst = int(N + 1);
  std::vector<double> dist(N + 2, kInf);
  std::vector<int> prev(N + 2, -1);
  std::vector<double> to_dst(N, kInf);
  for (int sq : s1)
    for (int id : square_nodes_[sq]) to_dst[id] = std::min(to_dst[id], edge_cost(nodes_[id], z1));
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[src] = 0.0;
  for (int a : s0)
    for (int b : s1)
      if (a == b) {
        double c = edge_cost(z0, z1);
        if (c < dist[dst]) {
          dist[dst] = c;
          prev[dst] = src;
        }
      }
  for (int sq : s0)
    for (int id : square_nodes_[sq]) {
      double c = edge_cost(z0, nodes_[id]);
      if (c < dist[id]) {
        dist[id] = c;
        prev[id] = src;
        pq.push({c, id});
      }
    }
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u] || d >= dist[dst]) continue;
    if (to_dst[u] < kInf && d + to_dst[u] < dist[dst]) {
      dist[dst] = d + to_dst[u];
      prev[dst] = u;
    }
    for (auto [v, c] : edges_[u])
      if (d + c < dist[v]) {
        dist[v] = d + c;
        prev[v] = u;
        pq.push({dist[v], v});
      }
  }
  if (!(dist[dst] < kInf)) throw Error(ErrorKind::ResolutionError, "no path joins the two points");
  std::vector<Complex> path{z1};
  for (int v = prev[dst]; v != src; v = prev[v]) path.push_back(nodes_[v]);
  path.push_back(z0);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<Complex> QuasiHyperbolicMetric::smooth(std::vector<Complex> path) const {
  // Split each edge once, then relax interior vertices by local search.
  std::vector<Complex> p{path.front()};
  for (std::size_t k = 1; k < path.size(); ++k) {
    p.push_back(0.5 * (path[k - 1] + path[k]));
    p.push_back(path[k]);
  }
  auto valid = [&](Complex a, Complex b) { return b.imag() > 0 && !spec_.segment_crosses_hull(a, b); };
  static const Complex dirs[8] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {0.7071, 0.7071}, {-0.7071, 0.7071}, {0.7071, -0.7071}, {-0.7071, -0.7071}};
  for (int pass = 0; pass < 12; ++pass) {
    bool moved = false;
    for (std::size_t k = 1; k + 1 < p.size(); ++k) {
      double base = edge_cost(p[k - 1], p[k]) + edge_cost(p[k], p[k + 1]);
      double step = 0.25 * std::min(std::abs(p[k] - p[k - 1]), std::abs(p[k + 1] - p[k])) / double(1 + pass / 3);
      for (const Complex& d : dirs) {
        Complex c = p[k] + step * d;
        if (!valid(p[k - 1], c) || !valid(c, p[k + 1])) continue;
        double cost = edge_cost(p[k - 1], c) + edge_cost(c, p[k + 1]);
        if (cost < base) {
          base = cost;
          p[k] = c;
          moved = true;
        }
      }
    }
    if (!moved && pass >= 3) break;
  }
  return p;
}

double QuasiHyperbolicMetric::distance(Complex z0, Complex z1) const {
  if (!spec_.contains(z0) || !spec_.contains(z1)) throw Error(ErrorKind::InvalidArgument, "endpoints must lie in the domain");
  if (z0 == z1) return 0.0;
  auto path = shortest_path(z0, z1);
  double raw = path_length(path);
  double refined = path_length(smooth(path));
  return std::min(raw, refined);
}

double quasi_hyperbolic_distance(const DomainSpec& spec, Complex z0, Complex z1, double resolution) {
  if (!spec.contains(z0) || !spec.contains(z1)) throw Error(ErrorKind::InvalidArgument, "endpoints must lie in the domain");
  Box b = spec.bbox().including(z0).including(z1);
  double span = std::max({b.width(), b.height(), std::abs(z1 - z0)});
  b = b.expanded(0.5 * span);
  double res = std::min({resolution, 0.25 * spec.delta(z0), 0.25 * spec.delta(z1)});
  QuasiHyperbolicMetric m(spec, b, res);
  return m.distance(z0, z1);
}

}  // namespace loewner

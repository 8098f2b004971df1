#include "loewner/modulus.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "loewner/geometry.hpp"
#include "loewner/metric.hpp"

namespace loewner {

namespace {

enum Cell : char { Blocked = 0, Free = 1, InE = 2, InF = 3 };

Box continuum_bbox(const std::vector<Continuum>& a, const std::vector<Continuum>& b) {
  bool first = true;
  Box box;
  for (const auto* set : {&a, &b})
    for (const auto& c : *set)
      for (Complex z : c) {
        if (first) {
          box = {z.real(), z.real(), z.imag(), z.imag()};
          first = false;
        } else {
          box = box.including(z);
        }
      }
  return box;
}

}  // namespace

Continuum circle_arc(Complex c, double r, int n) {
  Continuum out;
  // Angles where the circle stays in the closed upper half-plane.
  double s = std::clamp(-c.imag() / r, -1.0, 1.0);
  double a0 = std::asin(s), a1 = M_PI - a0;
  if (c.imag() >= r) {
    a0 = 0.0;
    a1 = 2.0 * M_PI;
  }
  for (int k = 0; k <= n; ++k) {
    double th = a0 + (a1 - a0) * k / n;
    Complex z = c + r * Complex(std::cos(th), std::sin(th));
    out.push_back(Complex(z.real(), std::max(0.0, z.imag())));
  }
  return out;
}

ModulusResult discrete_modulus(const ModulusProblem& p) {
  if (p.grid_n < 64) throw Error(ErrorKind::InvalidArgument, "grid_n must be at least 64");
  if (p.E.empty() || p.F.empty()) throw Error(ErrorKind::InvalidArgument, "E and F must be non-empty");
  Box win;
  if (p.window) {
    win = *p.window;
  } else {
    win = continuum_bbox(p.E, p.F);
    double span = std::max(win.width(), win.height());
    win = {win.xmin - 0.05 * span, win.xmax + 0.05 * span, 0.0, win.ymax + 0.05 * span};
  }
  win.ymin = std::max(0.0, win.ymin);
  double span = std::max(win.width(), win.height());
  if (!(span > 0)) throw Error(ErrorKind::ResolutionError, "degenerate window");
  double h = span / p.grid_n;
  int nx = std::max(1, int(std::ceil(win.width() / h))), ny = std::max(1, int(std::ceil(win.height() / h)));
  std::size_t N = std::size_t(nx) * ny;
  auto idx = [&](int i, int j) { return std::size_t(j) * nx + i; };
  auto cx = [&](int i) { return win.xmin + i * h; };
  auto cy = [&](int j) { return win.ymin + j * h; };

  std::vector<char> cell(N, Free);
  const DomainSpec& dom = p.domain;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      Complex c(cx(i) + 0.5 * h, cy(j) + 0.5 * h);
      if (dom.inside_filled(c)) cell[idx(i, j)] = Blocked;
    }
  auto mark_segment = [&](Complex a, Complex b, auto&& fn) {
    int i0 = std::max(0, int(std::floor((std::min(a.real(), b.real()) - win.xmin) / h)) - 1);
    int i1 = std::min(nx - 1, int(std::floor((std::max(a.real(), b.real()) - win.xmin) / h)) + 1);
    int j0 = std::max(0, int(std::floor((std::min(a.imag(), b.imag()) - win.ymin) / h)) - 1);
    int j1 = std::min(ny - 1, int(std::floor((std::max(a.imag(), b.imag()) - win.ymin) / h)) + 1);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i)
        if (geom::segment_meets_box(a, b, cx(i), cy(j), cx(i + 1), cy(j + 1))) fn(idx(i, j));
  };
  for (const auto& s : dom.segments()) mark_segment(s.first, s.second, [&](std::size_t k) { cell[k] = Blocked; });

  // Dirichlet marks take precedence over hull blocking.
  std::vector<char> inE(N, 0), inF(N, 0);
  auto mark_continuum = [&](const Continuum& c, std::vector<char>& flag) {
    if (c.size() == 1) {
      if (!win.contains(c[0])) return;
      int i = int(std::floor((c[0].real() - win.xmin) / h)), j = int(std::floor((c[0].imag() - win.ymin) / h));
      flag[idx(std::clamp(i, 0, nx - 1), std::clamp(j, 0, ny - 1))] = 1;
      return;
    }
    for (std::size_t k = 0; k + 1 < c.size(); ++k) mark_segment(c[k], c[k + 1], [&](std::size_t m) { flag[m] = 1; });
  };
  for (const auto& c : p.E) mark_continuum(c, inE);
  for (const auto& c : p.F) mark_continuum(c, inF);
  std::size_t nE = 0, nF = 0;
  bool touching = false;
  for (std::size_t k = 0; k < N; ++k) {
    if (inE[k] && inF[k]) touching = true;
    if (inE[k]) {
      cell[k] = InE;
      ++nE;
    } else if (inF[k]) {
      cell[k] = InF;
      ++nF;
    }
  }
  if (nE == 0 || nF == 0) throw Error(ErrorKind::ResolutionError, "E or F is not resolved on the grid");

  ModulusResult res;
  res.density = {win.xmin, win.ymin, h, nx, ny, std::vector<double>(N, std::nan(""))};
  if (touching) {
    res.value = std::numeric_limits<double>::infinity();
    return res;
  }

  // Keep free cells reachable from both E and F.
  auto flood = [&](char seed) {
    std::vector<char> seen(N, 0);
    std::deque<std::size_t> q;
    for (std::size_t k = 0; k < N; ++k)
      if (cell[k] == seed) {
        seen[k] = 1;
        q.push_back(k);
      }
    while (!q.empty()) {
      std::size_t k = q.front();
      q.pop_front();
      int i = int(k % nx), j = int(k / nx);
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int m = 0; m < 4; ++m) {
        int ii = i + di[m], jj = j + dj[m];
        if (ii < 0 || jj < 0 || ii >= nx || jj >= ny) continue;
        std::size_t kk = idx(ii, jj);
        if (seen[kk] || cell[kk] != Free) continue;
        seen[kk] = 1;
        q.push_back(kk);
      }
    }
    return seen;
  };
  std::vector<char> fromE = flood(InE), fromF = flood(InF);
  std::vector<int> unk(N, -1);
  int n = 0;
  for (std::size_t k = 0; k < N; ++k)
    if (cell[k] == Free && fromE[k] && fromF[k]) unk[k] = n++;

  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(std::max(n, 1));
  trip.reserve(std::size_t(n) * 5);
  const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      int r = unk[idx(i, j)];
      if (r < 0) continue;
      double diag = 0.0;
      for (int m = 0; m < 4; ++m) {
        int ii = i + di[m], jj = j + dj[m];
        if (ii < 0 || jj < 0 || ii >= nx || jj >= ny) continue;
        std::size_t kk = idx(ii, jj);
        if (unk[kk] >= 0) {
          trip.emplace_back(r, unk[kk], -1.0);
          diag += 1.0;
        } else if (cell[kk] == InE) {
          diag += 1.0;
        } else if (cell[kk] == InF) {
          diag += 1.0;
          rhs[r] += 1.0;
        }
      }
      trip.emplace_back(r, r, diag);
    }
  std::vector<double> u(N, 0.0);
  for (std::size_t k = 0; k < N; ++k)
    if (cell[k] == InF) u[k] = 1.0;
  if (n > 0) {
    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::IncompleteCholesky<double>>
        cg;
    cg.setTolerance(1e-10);
    cg.setMaxIterations(20 * n + 100);
    cg.compute(A);
    Eigen::VectorXd x = cg.solve(rhs);
    res.iterations = int(cg.iterations());
    res.residual = cg.error();
    for (std::size_t k = 0; k < N; ++k)
      if (unk[k] >= 0) u[k] = x[unk[k]];
  }
  auto active = [&](std::size_t k) { return unk[k] >= 0 || cell[k] == InE || cell[k] == InF; };
  double energy = 0.0;
  std::vector<double> local(N, 0.0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      std::size_t k = idx(i, j);
      if (!active(k)) continue;
      for (int m = 0; m < 2; ++m) {
        int ii = i + di[2 * m], jj = j + dj[2 * m];
        if (ii >= nx || jj >= ny) continue;
        std::size_t kk = idx(ii, jj);
        if (!active(kk)) continue;
        double d = u[kk] - u[k];
        energy += d * d;
        local[k] += 0.5 * d * d;
        local[kk] += 0.5 * d * d;
      }
    }
  for (std::size_t k = 0; k < N; ++k)
    if (active(k)) res.density.rho[k] = std::sqrt(local[k]) / h;
  res.value = energy;
  return res;
}

BoundCheck whitneyball_bound_check(const LoewnerEvolution& e, double t, Complex z, double anchor, int grid_n) {
  BoundCheck out;
  out.lhs = dist_to_geodesic(e, t, z, anchor);
  std::size_t ti = e.grid().index_of(t);
  DomainSpec spec = domain_at(e, t);
  double dz = spec.delta(z);
  if (!(dz > 0)) throw Error(ErrorKind::InvalidArgument, "z must lie in the domain");
  Continuum ball;
  Continuum circle = circle_arc(z, 0.5 * dz, 128);
  for (Complex c : circle) ball.push_back(e.chain.apply_g(c, 0, ti));
  Complex w = e.chain.apply_g(z, 0, ti);
  if (out.lhs == 0.0 || geom::point_in_polygon(Complex(anchor, w.imag()), ball)) {
    out.modulus = std::numeric_limits<double>::infinity();
    out.rhs = std::numeric_limits<double>::infinity();
    out.pass = true;
    return out;
  }
  // Window around the ball and the nearby part of the line.
  Box b{anchor, anchor, 0.0, 0.0};
  for (Complex c : ball) b = b.including(c);
  double D = std::max({b.width(), b.height(), std::abs(w.real() - anchor)});
  Box win{0.5 * (b.xmin + b.xmax) - 4.0 * D, 0.5 * (b.xmin + b.xmax) + 4.0 * D, 0.0, 8.0 * D};
  ModulusProblem p{DomainSpec::half_plane(win), {ball}, {{Complex(anchor, 0.0), Complex(anchor, win.ymax)}}, grid_n, win};
  out.modulus = discrete_modulus(p).value;
  out.rhs = M_PI / out.modulus + 3.0;
  out.pass = out.lhs <= 1.1 * out.rhs;
  return out;
}

CrossingBound annulus_crossing_bound(const DomainSpec& spec, Complex z, double R, int grid_n) {
  if (!(R > 0)) throw Error(ErrorKind::InvalidArgument, "R must be positive");
  CrossingBound out;
  out.bound = std::log(2.0) / (2.0 * M_PI);
  Box win{z.real() - 2.0 * R, z.real() + 2.0 * R, std::max(0.0, z.imag() - 2.0 * R), z.imag() + 2.0 * R};
  win = win.expanded(0.02 * R);
  win.ymin = std::max(0.0, z.imag() - 2.02 * R);
  ModulusProblem p{spec, {circle_arc(z, R)}, {circle_arc(z, 2.0 * R)}, grid_n, win};
  out.mod_value = discrete_modulus(p).value;
  out.pass = out.mod_value >= 0.8 * out.bound;
  return out;
}

}  // namespace loewner

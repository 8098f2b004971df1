#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include <json.hpp>

#include "loewner/whitney.hpp"
#include "oracle_values.hpp"

using namespace loewner;

namespace {

HullCurve slit(double h) { return HullCurve({Complex(0, 0), Complex(0, h)}); }

// Exact for dyadic-side squares; independent of the implementation's test.
bool wsquare_ok(const DomainSpec& S, const WhitneySquare& q) {
  double s = q.side();
  double d = std::min(q.y, S.box_dist_to_hull(q.x, q.y, q.x + s, q.y + s));
  return d >= 0.5 * q.diam() && d <= 4.0 * q.diam();
}

}  // namespace

TEST_CASE("standard squares of a vertical slit") {
  CHECK(standard_squares_meeting(HullCurve(), -5).empty());
  auto sq = standard_squares_meeting(slit(1.0), -20);
  CHECK(long(sq.count()) == oracle::slit_squares_j20);
  for (const auto& r : sq.runs) {
    CHECK(r.level <= 0);
    CHECK(r.k0 == -1);
    CHECK(r.k1 == 0);
  }
  auto sq2 = standard_squares_meeting(slit(2.0), -19);
  REQUIRE(sq2.runs.size() == sq.runs.size());
  for (std::size_t i = 0; i < sq.runs.size(); ++i) {
    CHECK(sq2.runs[i].level == sq.runs[i].level + 1);
    CHECK(sq2.runs[i].k0 == sq.runs[i].k0);
    CHECK(sq2.runs[i].k1 == sq.runs[i].k1);
  }
}

TEST_CASE("Whitney area") {
  auto a = whitney_area(slit(1.0), -20);
  CHECK(a.area == oracle::slit_area_j20);
  CHECK(a.area + a.tail == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(a.tail <= 1e-10);
  auto a2 = whitney_area(slit(2.0), -19);
  CHECK(a2.area == 4.0 * a.area);
  CHECK((a.area + a.tail) / 0.5 == doctest::Approx(16.0 / 3.0));
  CHECK(whitney_area(slit(4.0), -18).area / 8.0 == a.area / 0.5);
}

TEST_CASE("brute-force enumeration agrees on polylines") {
  HullCurve ell({Complex(0, 0), Complex(0, 1), Complex(1, 1)});
  auto s = standard_squares_meeting(ell, -10);
  CHECK(long(s.count()) == oracle::lshape_squares_j10);
  CHECK(s.area() == doctest::Approx(oracle::lshape_area_j10).epsilon(1e-14));
  HullCurve tilted({Complex(0, 0), Complex(0.3, 0.7), Complex(-0.2, 1.3)});
  auto t = standard_squares_meeting(tilted, -12);
  CHECK(long(t.count()) == oracle::tilted_squares_j12);
  CHECK(t.area() == doctest::Approx(oracle::tilted_area_j12).epsilon(1e-14));
  for (const auto& q : t.squares()) {
    CHECK(q.y == q.side());
    CHECK(q.x == q.k() * q.side());
  }
}

TEST_CASE("hcap estimates") {
  CHECK(hcap_estimate(slit(std::sqrt(2.0))).contains(1.0));
  std::vector<Complex> disk;
  for (int k = 0; k <= 512; ++k) disk.push_back(std::polar(1.0, M_PI - M_PI * k / 512));
  disk.front() = Complex(-1, 0);
  disk.back() = Complex(1, 0);
  CHECK(hcap_estimate(HullCurve(disk, true, true)).contains(1.0));
  for (const auto& h : hcap_calibration_family()) CHECK(hcap_estimate(h.hull).contains(h.hcap));
  // hcap(rK) = r^2 hcap(K); the interval follows up to the alignment factor.
  HullCurve K({Complex(0, 0), Complex(0.2, 0.9), Complex(0.7, 1.1)});
  auto i1 = hcap_estimate(K), i3 = hcap_estimate(K.transformed(3.0, 0.0));
  double a = hcap_calibration().alignment;
  CHECK(i3.low >= 9.0 * i1.low / a);
  CHECK(i3.high <= 9.0 * i1.high * a);
}

TEST_CASE("calibration data matches a fresh calibration") {
  std::ifstream in(std::string(LOEWNER_DATA_DIR) + "/hcap_calibration.json");
  REQUIRE(in);
  auto j = nlohmann::json::parse(in);
  auto table = calibrate_hcap(j["constants"]["alignment"].get<double>());
  CHECK(table.constants.ratio_min == doctest::Approx(j["constants"]["ratio_min"].get<double>()).epsilon(1e-9));
  CHECK(table.constants.ratio_max == doctest::Approx(j["constants"]["ratio_max"].get<double>()).epsilon(1e-9));
  CHECK(hcap_calibration().ratio_min == table.constants.ratio_min);
  REQUIRE(table.rows.size() == j["hulls"].size());
  REQUIRE(table.rows.size() == 9);
  double lo = 1e9, hi = 0.0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    CHECK(table.rows[i].name == j["hulls"][i]["name"].get<std::string>());
    CHECK(table.rows[i].hcap == doctest::Approx(j["hulls"][i]["hcap"].get<double>()).epsilon(1e-9));
    lo = std::min(lo, table.rows[i].ratio);
    hi = std::max(hi, table.rows[i].ratio);
  }
  CHECK(hi / lo <= 64.0);
}

TEST_CASE("L-shaped slit capacity against a conformal map") {
  for (const auto& h : hcap_calibration_family())
    if (h.hull.size() == 3 && h.hull.points()[2] == Complex(1, 1))
      CHECK(h.hcap == doctest::Approx(oracle::l_shape_hcap).epsilon(1e-4));
}

TEST_CASE("adaptive decomposition of H") {
  auto w = adaptive_whitney(DomainSpec::half_plane({0, 1, 0, 1}), -5);
  REQUIRE(w.size() > 0);
  for (const auto& q : w.squares()) {
    CHECK(q.y == q.side());
    CHECK(q.x == q.k() * q.side());
  }
}

TEST_CASE("adaptive decomposition of H minus a slit") {
  DomainSpec S(slit(1.0));
  auto w = adaptive_whitney(S, -8);
  int bad = 0;
  for (const auto& q : w.squares())
    if (!wsquare_ok(S, q)) ++bad;
  CHECK(bad == 0);
  int cnt[3] = {0, 0, 0};
  for (const auto& q : w.squares())
    if (q.level >= -6 && q.level <= -4 && std::abs(q.center() - Complex(0, 0.5)) < 0.45) ++cnt[-q.level - 4];
  CHECK(double(cnt[1]) / cnt[0] >= 1.5);
  CHECK(double(cnt[1]) / cnt[0] <= 2.5);
  CHECK(double(cnt[2]) / cnt[1] >= 1.5);
  CHECK(double(cnt[2]) / cnt[1] <= 2.5);

  double sum = 0.0;
  for (const auto& q : w.squares()) sum += q.side() * q.side();
  CHECK(w.area() == doctest::Approx(sum));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    std::size_t a = std::size_t(u(rng) * w.size());
    Complex p = w[a].center() + (u(rng) - 0.5) * 0.98 * w[a].side() + Complex(0, (u(rng) - 0.5) * 0.98 * w[a].side());
    // An interior point of one square lies in no other square's interior.
    int owners = 0;
    for (int k : w.locate_all(p))
      if (w[k].contains(p, -1e-12 * w[k].side())) ++owners;
    CHECK(owners == 1);
  }
  for (std::size_t i = 0; i < w.size(); ++i)
    for (int k : w.neighbors(i)) {
      const auto& back = w.neighbors(k);
      CHECK(std::find(back.begin(), back.end(), int(i)) != back.end());
    }
  CHECK(w.connected());
}

TEST_CASE("chain distance") {
  auto wh = adaptive_whitney(DomainSpec::half_plane({0, 1, 0, 512}), -3);
  CHECK(chain_distance(wh, Complex(0.3, 1.5), Complex(0.4, 1.6)) == 1);
  CHECK(chain_distance(wh, Complex(0, 1.5), Complex(0, 1.5 * 256)) == 9);
  DomainSpec S(slit(1.0));
  auto w = adaptive_whitney(S, -7, Box{-3, 3, 0, 4});
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ux(-2, 2), uy(0.1, 2.5);
  for (int i = 0; i < 20; ++i) {
    Complex a(ux(rng), uy(rng)), b(ux(rng), uy(rng));
    if (S.delta(a) < 0.05 || S.delta(b) < 0.05) continue;
    CHECK(chain_distance(w, a, b) == chain_distance(w, b, a));
  }
}

TEST_CASE("quasi-hyperbolic distance") {
  auto H = DomainSpec::half_plane({-1, 1, 0, 1});
  double k1 = quasi_hyperbolic_distance(H, Complex(0, 1), Complex(0, M_E), 0.05);
  CHECK(k1 >= 0.9);
  CHECK(k1 <= 1.1);
  double k2 = quasi_hyperbolic_distance(H, Complex(0, 1), Complex(0, std::exp(-2.0)), 0.05);
  CHECK(k2 >= 1.8);
  CHECK(k2 <= 2.2);

  DomainSpec S(slit(1.0));
  QuasiHyperbolicMetric m(S, Box{-4, 4, 0, 6}, 1.0 / 64);
  Complex a(-0.1, 0.5), b(0.1, 0.5);
  double k = m.distance(a, b);
  // Any path from a to b passes above the tip, so it gains at least
  // log(1/0.1) on the way out and back in by comparison with 1/Im.
  CHECK(k >= 2.0 * std::log(0.5 / 0.1));
  auto pull = [](Complex z) { return Complex(0, 1) * std::sqrt(-(z * z + 1.0)); };
  auto rho = [&](Complex z, Complex w) {
    Complex p = pull(z), q = pull(w);
    return std::acosh(1.0 + std::norm(p - q) / (2.0 * p.imag() * q.imag()));
  };
  CHECK(k >= 0.5 * rho(a, b));
  CHECK(k <= 2.0 * rho(a, b));

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ux(-2, 2), uy(0.05, 2.5);
  for (int i = 0; i < 20; ++i) {
    Complex p[3];
    for (auto& z : p) {
      do z = Complex(ux(rng), uy(rng));
      while (S.delta(z) < 0.05);
    }
    CHECK(m.distance(p[0], p[2]) <= 1.05 * (m.distance(p[0], p[1]) + m.distance(p[1], p[2])));
  }
  CHECK_THROWS_AS(quasi_hyperbolic_distance(S, Complex(0, 0.5), b, 0.05), Error);
}

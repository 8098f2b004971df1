#include <doctest.h>

#include <cmath>

#include "loewner/geometry.hpp"
#include "loewner/harness.hpp"
#include "loewner/zipper.hpp"
#include "oracle_values.hpp"

using namespace loewner;

namespace {

HullCurve vertical(double h, int n) {
  std::vector<Complex> p;
  for (int k = 0; k <= n; ++k) p.push_back(Complex(0, h * k / n));
  return HullCurve(p);
}

HullCurve quarter_circle(int n) {
  std::vector<Complex> q;
  for (int k = 0; k <= n; ++k) {
    double th = M_PI - M_PI / 2 * k / n;
    q.push_back(Complex(1 + std::cos(th), std::sin(th)));
  }
  q[0] = 0.0;
  return HullCurve(q);
}

}  // namespace

TEST_CASE("vertical segment zips to zero driving") {
  auto z = extract_driving(vertical(2.0, 50));
  CHECK(z.T() == doctest::Approx(1.0).epsilon(1e-3));
  for (double v : z.driving.values()) CHECK(std::abs(v) <= 1e-3);
}

TEST_CASE("translation equivariance") {
  auto c = quarter_circle(100);
  auto z0 = extract_driving(c), z1 = extract_driving(c.transformed(1.0, 0.75));
  REQUIRE(z0.capacity_times.size() == z1.capacity_times.size());
  for (std::size_t k = 0; k < z0.capacity_times.size(); ++k) {
    CHECK(z1.capacity_times[k] == doctest::Approx(z0.capacity_times[k]).epsilon(1e-9));
    CHECK(z1.driving[k] == doctest::Approx(z0.driving[k] + 0.75).epsilon(1e-9));
  }
}

TEST_CASE("tilted segment capacity and driving") {
  auto seg = family_curve("segment-at-angle", 200, {{"angle", M_PI / 3}});
  auto z = extract_driving(seg);
  CHECK(z.T() == doctest::Approx(oracle::seg_T_pi3).epsilon(1e-4));
  CHECK(z.driving.values().back() / std::sqrt(z.T()) == doctest::Approx(oracle::seg_c_pi3).epsilon(1e-3));
}

TEST_CASE("quarter circle round trip") {
  auto q = quarter_circle(200);
  auto z = extract_driving(q);
  auto ef = solve_forward(z.driving, {StepKind::Tilted, true, 0.1});
  CHECK(geom::hausdorff(ef.trace_points(), q.points()) <= 2e-2);
  auto ez = evolution_from_zipper(z);
  double worst = 0.0;
  for (std::size_t k = 1; k < q.size(); ++k)
    worst = std::max(worst, std::abs(ez.chain.apply_f(Complex(z.driving[k], 0), k, 0, true) - q.points()[k]));
  CHECK(worst <= 1e-6);
}

TEST_CASE("capacity parameterization") {
  auto cp = capacity_parameterize(vertical(2.0, 50), 4);
  const double want[] = {0.0, 1.0, std::sqrt(2.0), std::sqrt(3.0), 2.0};
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(cp.points()[k] - Complex(0, want[k])) <= 1e-2);
  auto again = capacity_parameterize(cp, 4);
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(again.points()[k] - cp.points()[k]) <= 1e-2);

  auto ray = family_curve("segment-at-angle", 200, {{"angle", M_PI / 3}});
  auto rp = capacity_parameterize(ray, 10);
  double unit = std::abs(rp.points()[10]) / std::sqrt(10.0);
  for (int k = 1; k <= 10; ++k) CHECK(std::abs(rp.points()[k]) == doctest::Approx(unit * std::sqrt(double(k))).epsilon(0.02));
}

TEST_CASE("transition diameter profile") {
  auto z = extract_driving(vertical(2.0, 64));
  auto p = transition_diameter_profile(z, z.T() / 4);
  REQUIRE(!p.rows.empty());
  for (const auto& r : p.rows) CHECK(r.diam == doctest::Approx(p.rows.front().diam).epsilon(0.05));

  auto q = extract_driving(quarter_circle(200));
  double prev = 1e9;
  for (double f : {4.0, 8.0, 16.0}) {
    auto pr = transition_diameter_profile(q, q.T() / f);
    CHECK(pr.max < prev);
    prev = pr.max;
    double slack = 10.0 * std::sqrt(q.driving.grid().max_spacing());
    for (const auto& r : pr.rows)
      CHECK(std::abs(q.driving.at(r.s) - q.driving.at(r.s + q.T() / f)) <= 4.0 * r.diam + slack);
  }
  CHECK_THROWS_AS(transition_diameter_profile(q, 1e-12), Error);
}

TEST_CASE("weak Lipschitz check") {
  auto g = CapacityGrid::uniform(0.5, 1001);
  CHECK(weak_lip_check(Driving::constant(g, 0.0), 0.1).pass);
  auto lin = weak_lip_check(Driving::sample(g, [](double t) { return t; }), 1.0);
  CHECK(lin.pass);
  CHECK(lin.worst_ratio == doctest::Approx(oracle::weaklip_linear_ratio).epsilon(1e-9));
  auto sq = weak_lip_check(Driving::sample(g, [](double t) { return std::sqrt(t); }), 0.5);
  CHECK_FALSE(sq.pass);
  CHECK(sq.worst_ratio == doctest::Approx(oracle::weaklip_sqrt_ratio).epsilon(1e-9));
  CHECK(sq.worst_s == oracle::weaklip_sqrt_s);
  CHECK(sq.worst_t == doctest::Approx(oracle::weaklip_sqrt_t));
}

TEST_CASE("zipper input errors") {
  auto kind = [](const std::vector<Complex>& p) {
    try {
      extract_driving(HullCurve(p, false));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  CHECK(kind({Complex(0, 0), Complex(0, 1), Complex(0.5, 0.0), Complex(1, 1)}) == ErrorKind::NotASimpleSlit);
}

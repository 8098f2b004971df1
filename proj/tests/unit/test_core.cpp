#include <doctest.h>

#include <cmath>
#include <functional>

#include "loewner/core.hpp"
#include "oracle_values.hpp"

using namespace loewner;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no loewner::Error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("capacity grid validation") {
  CHECK(kind_of([] { CapacityGrid({0.0, 0.5, 0.5}); }) == ErrorKind::InvalidGrid);
  CHECK(kind_of([] { CapacityGrid({0.1, 0.5}); }) == ErrorKind::InvalidGrid);
  CHECK(kind_of([] { CapacityGrid({0.0, std::nan("")}); }) == ErrorKind::InvalidGrid);
  auto g = CapacityGrid::uniform(2.0, 5);
  CHECK(g.size() == 5);
  CHECK(g.T() == 2.0);
  CHECK(g.is_uniform());
  CHECK(g.index_of(1.0) == 2);
  CHECK(kind_of([&] { g.index_of(0.7); }) == ErrorKind::InvalidArgument);
  auto gr = CapacityGrid::graded(1.0, 200);
  CHECK(gr[0] == 0.0);
  CHECK(gr.T() == doctest::Approx(1.0));
  CHECK_FALSE(gr.is_uniform());
  for (std::size_t i = 0; i + 1 < gr.size(); ++i) CHECK(gr.spacing(i) > 0.0);
}

TEST_CASE("hull curve invariants") {
  CHECK_NOTHROW(HullCurve({Complex(0, 0), Complex(0, 1)}));
  CHECK(kind_of([] { HullCurve({Complex(0, 0.1), Complex(0, 1)}); }) == ErrorKind::InvalidCurve);
  CHECK(kind_of([] { HullCurve({Complex(0, 0), Complex(0, 1), Complex(1, 0)}); }) == ErrorKind::NotASimpleSlit);
  CHECK(kind_of([] { HullCurve({Complex(0, 0), Complex(0, 1), Complex(0, 1)}); }) == ErrorKind::InvalidCurve);
  HullCurve h({Complex(0, 0), Complex(0, 1), Complex(1, 1)});
  CHECK(h.diameter() == doctest::Approx(std::sqrt(2.0)));
  CHECK(h.arc_length() == doctest::Approx(2.0));
  auto h2 = h.transformed(2.0, 3.0);
  CHECK(h2.tip() == Complex(5, 2));
}

TEST_CASE("domain spec distances") {
  auto H = DomainSpec::half_plane({-1, 1, 0, 1});
  CHECK(H.delta(Complex(3, 2)) == 2.0);
  DomainSpec S(HullCurve({Complex(0, 0), Complex(0, 1)}));
  CHECK(S.delta(Complex(0, 2)) == doctest::Approx(1.0));
  CHECK(S.delta(Complex(0.5, 0.5)) == doctest::Approx(0.5));
  CHECK(S.contains(Complex(0.5, 0.5)));
  CHECK_FALSE(S.contains(Complex(0, 0.5)));
  CHECK(S.segment_crosses_hull(Complex(-0.1, 0.5), Complex(0.1, 0.5)));
  CHECK_FALSE(S.segment_crosses_hull(Complex(-0.1, 1.5), Complex(0.1, 1.5)));
}

TEST_CASE("disconnecting hull is rejected") {
  // Closed loop cuts off its interior from infinity.
  std::vector<Complex> loop{Complex(0, 0), Complex(0, 1), Complex(1, 1), Complex(1, 0.2), Complex(0, 0.2)};
  CHECK(kind_of([&] { DomainSpec(HullCurve(loop, false)); }) == ErrorKind::InvalidDomain);
}

TEST_CASE("resample_driving") {
  auto c = resample_driving(Driving::constant(CapacityGrid({0.0, 0.3, 1.0}), 3.0), 5);
  for (double v : c.values()) CHECK(v == 3.0);
  auto lin = resample_driving(Driving(CapacityGrid({0.0, 1.0}), {0.0, 1.0}), 3);
  CHECK(lin[0] == 0.0);
  CHECK(lin[1] == doctest::Approx(0.5));
  CHECK(lin[2] == 1.0);
  auto s = Driving::sample(CapacityGrid::uniform(1.0, 1000), [](double t) { return std::sqrt(t); });
  auto r = resample_driving(s, 100);
  double dev = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) dev = std::max(dev, std::abs(r[i] - std::sqrt(r.grid()[i])));
  CHECK(dev <= 0.02);
  CHECK(dev == doctest::Approx(oracle::resample_sqrt_dev).epsilon(1e-6));
  CHECK(kind_of([&] { resample_driving(s, 1); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("lip_half_norm") {
  auto g = CapacityGrid::uniform(1.0, 1001);
  CHECK(lip_half_norm(Driving::constant(g, 2.0)) == 0.0);
  CHECK(lip_half_norm(Driving::sample(g, [](double t) { return t; })) == doctest::Approx(1.0));
  auto s = Driving::sample(CapacityGrid::uniform(1.0, 10001), [](double t) { return std::sqrt(t); });
  CHECK(lip_half_norm(s) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("modulus_of_continuity") {
  auto g = CapacityGrid::uniform(1.0, 1001);
  for (const auto& row : modulus_of_continuity(Driving::constant(g, 0.0), {0.01, 0.1})) CHECK(row.omega == 0.0);
  for (const auto& row : modulus_of_continuity(Driving::sample(g, [](double t) { return t; }), {0.01, 0.25}))
    CHECK(row.omega == doctest::Approx(row.delta));
  auto rows = modulus_of_continuity(Driving::sample(g, [](double t) { return std::sqrt(t); }), {0.01});
  CHECK(rows[0].omega == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(kind_of([&] { modulus_of_continuity(Driving::constant(g, 0.0), {1e-5}); }) == ErrorKind::InvalidArgument);
}

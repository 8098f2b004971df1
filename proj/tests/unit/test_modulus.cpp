#include <doctest.h>

#include <cmath>

#include "loewner/modulus.hpp"
#include "oracle_values.hpp"

using namespace loewner;

namespace {

double half_annulus(double R, int grid) {
  ModulusProblem p{DomainSpec::half_plane({-R, R, 0, R}), {circle_arc(0, 1)}, {circle_arc(0, R)}, grid, std::nullopt};
  return discrete_modulus(p).value;
}

}  // namespace

TEST_CASE("half-annulus moduli") {
  CHECK(half_annulus(M_E, 256) == doctest::Approx(oracle::half_annulus_e).epsilon(0.05));
  CHECK(half_annulus(M_E * M_E, 256) == doctest::Approx(oracle::half_annulus_e2).epsilon(0.05));
}

TEST_CASE("similarity invariance") {
  auto H = DomainSpec::half_plane({-10, 10, 0, 10});
  ModulusProblem p{H, {circle_arc(3.0, 0.5)}, {circle_arc(3.0, 0.5 * M_E)}, 256, std::nullopt};
  CHECK(discrete_modulus(p).value == doctest::Approx(half_annulus(M_E, 256)).epsilon(0.02));
}

TEST_CASE("removing part of the hull never lowers the modulus") {
  Continuum E{Complex(-2, 0), Complex(-2, 1)}, F{Complex(2, 0), Complex(2, 1)};
  Box win{-3, 3, 0, 3};
  double v_big = discrete_modulus({DomainSpec(HullCurve({Complex(0, 0), Complex(0, 1.5)}), win), {E}, {F}, 128, win}).value;
  double v_small = discrete_modulus({DomainSpec(HullCurve({Complex(0, 0), Complex(0, 0.5)}), win), {E}, {F}, 128, win}).value;
  double v_none = discrete_modulus({DomainSpec::half_plane(win), {E}, {F}, 128, win}).value;
  CHECK(v_big <= v_small);
  CHECK(v_small <= v_none);
}

TEST_CASE("touching and unresolved sets") {
  auto H = DomainSpec::half_plane({-2, 2, 0, 2});
  ModulusProblem touch{H, {{Complex(-1, 0.5), Complex(0.1, 0.5)}}, {{Complex(0, 0.2), Complex(0, 1)}}, 64, std::nullopt};
  CHECK(std::isinf(discrete_modulus(touch).value));
  ModulusProblem tiny{H, {{Complex(-1, 0.5)}}, {{Complex(5, 0.5)}}, 64, Box{-2, 2, 0, 2}};
  try {
    discrete_modulus(tiny);
    FAIL("expected a resolution error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResolutionError);
  }
}

TEST_CASE("line exactly on a cell boundary is still resolved") {
  // x = 0 falls on a grid line of this window.
  auto H = DomainSpec::half_plane({-4, 4, 0, 8});
  ModulusProblem p{H, {circle_arc(Complex(2, 3), 0.5)}, {{Complex(0, 0), Complex(0, 8)}}, 64, Box{-4, 4, 0, 8}};
  CHECK(discrete_modulus(p).value > 0.0);
}

TEST_CASE("whitney ball bound") {
  auto e = solve_forward(Driving::constant(CapacityGrid::uniform(1e-12, 2), 0.0));
  Complex z = (Complex(0, 0.1) - 1.0) / (Complex(0, 0.1) + 1.0);
  auto b = whitneyball_bound_check(e, 0.0, z, 0.0, 256);
  CHECK(b.lhs == doctest::Approx(std::log(10.0)).epsilon(1e-9));
  CHECK(b.rhs >= 2.3);
  CHECK(b.rhs <= 6.0);
  CHECK(b.pass);
  auto scaled = whitneyball_bound_check(e, 0.0, 7.0 * z, 0.0, 256);
  CHECK(scaled.lhs == doctest::Approx(b.lhs).epsilon(1e-9));
  CHECK(scaled.rhs == doctest::Approx(b.rhs).epsilon(0.02));
  auto on = whitneyball_bound_check(e, 0.0, Complex(0, 2), 0.0, 256);
  CHECK(on.pass);
  CHECK(std::isinf(on.rhs));
}

TEST_CASE("annulus crossing bound") {
  auto c = annulus_crossing_bound(DomainSpec::half_plane({-2, 2, 0, 2}), 0, 1, 256);
  CHECK(c.bound == doctest::Approx(oracle::crossing_bound));
  CHECK(c.mod_value >= c.bound);
  double prev = c.mod_value;
  for (double h : {0.8, 1.9}) {
    auto s = annulus_crossing_bound(DomainSpec(HullCurve({Complex(1.5, 0), Complex(1.5, h)})), 0, 1, 256);
    CHECK(s.mod_value <= prev);
    CHECK(s.pass);
    prev = s.mod_value;
  }
}

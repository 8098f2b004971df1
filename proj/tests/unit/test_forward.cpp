#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "loewner/forward.hpp"
#include "oracle_values.hpp"

using namespace loewner;

namespace {

const LoewnerEvolution& zero_chain() {
  static const LoewnerEvolution e = solve_forward(Driving::constant(CapacityGrid::uniform(1.0, 4001), 0.0));
  return e;
}

template <class F>
ErrorKind kind_of(F&& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.kind();
  }
  FAIL("no loewner::Error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("vertical slit closed form") {
  const auto& e = zero_chain();
  CHECK(std::abs(e.trace_points().front()) == 0.0);
  CHECK(std::abs(e.trace_points().back() - Complex(0, 2)) <= 5e-3);
  CHECK(std::abs(eval_g(e, 1.0, Complex(0, 3)) - Complex(0, oracle::sqrt5)) <= 2e-3);
  CHECK(std::abs(eval_f(e, 1.0, Complex(0, oracle::sqrt5)) - Complex(0, 3)) <= 2e-3);
  CHECK(std::abs(eval_g(e, 1.0, Complex(0, 100)) - Complex(0, oracle::sqrt9996)) <= 1e-6);
  // Intermediate times follow 2i sqrt(t).
  CHECK(std::abs(e.hull_at(0.25).tip() - Complex(0, 1)) <= 5e-3);
}

TEST_CASE("identity at t = 0") {
  const auto& e = zero_chain();
  Complex z(0.3, 0.7);
  CHECK(eval_g(e, 0.0, z) == z);
  CHECK(eval_f(e, 0.0, z) == z);
  CHECK(hcap_of_evolution(e, 0.0) == 0.0);
  CHECK(hcap_of_evolution(e, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("translation by a constant driving") {
  auto e = solve_forward(Driving::constant(CapacityGrid::uniform(1.0, 2001), 1.0));
  CHECK(std::abs(e.trace_points().back() - Complex(1, 2)) <= 5e-3);
}

TEST_CASE("3 sqrt(t) traces a ray") {
  auto d = Driving::sample(CapacityGrid::graded(1.0, 8001), [](double t) { return 3.0 * std::sqrt(t); });
  auto e = solve_forward(d, {StepKind::Tilted, true, 0.1});
  std::vector<double> args;
  for (std::size_t i = 1; i < e.trace_points().size(); ++i) args.push_back(std::arg(e.trace_points()[i]));
  auto sorted = args;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  double med = sorted[sorted.size() / 2], dev = 0.0;
  for (double a : args) dev = std::max(dev, std::abs(a - med));
  CHECK(dev <= 0.01);
  // A segment at angle alpha*pi has driving 2(1-2alpha)/sqrt(alpha(1-alpha)) sqrt(t).
  CHECK(med == doctest::Approx(oracle::alpha_c3 * M_PI).epsilon(0.01));
}

TEST_CASE("scaling symmetry") {
  double r = 2.0;
  auto g1 = CapacityGrid::uniform(0.5, 801);
  auto d1 = Driving::sample(g1, [](double t) { return std::sin(3.0 * t); });
  std::vector<double> t2;
  for (double t : g1.times()) t2.push_back(r * r * t);
  auto d2 = Driving::sample(CapacityGrid(t2), [&](double t) { return r * std::sin(3.0 * t / (r * r)); });
  auto e1 = solve_forward(d1), e2 = solve_forward(d2);
  double worst = 0.0;
  for (std::size_t k = 0; k < e1.trace_points().size(); ++k)
    worst = std::max(worst, std::abs(e2.trace_points()[k] - r * e1.trace_points()[k]));
  CHECK(worst <= 1e-2 * r);
  CHECK(hcap_of_evolution(e2, r * r * 0.5) == doctest::Approx(2.0 * r * r * 0.5));
}

TEST_CASE("inverse map distortion") {
  const auto& e = zero_chain();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(-5, 5), uy(1e-3, 5);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Complex w(ux(rng), uy(rng));
    worst = std::max(worst, std::abs(eval_f(e, 1.0, w) - w));
  }
  CHECK(worst <= 6.0);
}

TEST_CASE("transition hulls") {
  const auto& e = zero_chain();
  CHECK(transition_diameter(e, 0.0, 1.0) == doctest::Approx(2.0).epsilon(2.5e-3));
  CHECK(transition_diameter(e, 0.25, 1.0) >= std::sqrt(1.5));
  auto s = Driving::sample(CapacityGrid::uniform(1.0, 1001), [](double t) { return std::sin(5.0 * t); });
  auto es = solve_forward(s);
  double slack = 10.0 * std::sqrt(s.grid().max_spacing());
  for (auto [a, b] : {std::pair{0.0, 0.5}, std::pair{0.2, 0.3}, std::pair{0.5, 1.0}})
    CHECK(std::abs(s.at(a) - s.at(b)) <= 4.0 * transition_diameter(es, a, b) + slack);
}

TEST_CASE("forward errors") {
  const auto& e = zero_chain();
  CHECK(kind_of([&] { eval_g(e, 1.0, Complex(0, 1)); }) == ErrorKind::DomainError);
  CHECK(kind_of([&] { eval_f(e, 1.0, Complex(0.5, 0.0)); }) == ErrorKind::BoundaryEvaluation);
  CHECK_NOTHROW(eval_f(e, 1.0, Complex(0.5, 0.0), true));
  CHECK(kind_of([&] { hcap_of_evolution(e, 0.33333); }) == ErrorKind::InvalidArgument);
  auto bare = solve_forward(Driving::constant(CapacityGrid::uniform(1.0, 11), 0.0), {StepKind::Vertical, false, 0.1});
  CHECK(kind_of([&] { transition_hull(bare, 0.0, 1.0, 10); }) == ErrorKind::MissingTrace);
}

TEST_CASE("swallowed point carries its step") {
  try {
    eval_g(zero_chain(), 1.0, Complex(0, 1));
    FAIL("expected a domain error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::DomainError);
    CHECK(err.step() >= 0);
  }
}

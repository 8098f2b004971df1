#include <doctest.h>

#include <cmath>

#include "loewner/harness.hpp"
#include "oracle_values.hpp"

using namespace loewner;

namespace {

const CheckResult* find(const Report& r, const std::string& name) {
  for (const auto& c : r)
    if (c.check == name) return &c;
  return nullptr;
}

LoewnerEvolution chain_of(const Driving& d) { return solve_forward(d); }

}  // namespace

TEST_CASE("curve families") {
  for (const auto& fam : curve_families()) {
    CAPTURE(fam);
    auto c = family_curve(fam, 200);
    CHECK(c.size() == 201);
    CHECK(c.points().front().imag() == 0.0);
    for (std::size_t k = 1; k < c.size(); ++k) CHECK(c.points()[k].imag() > 0.0);
    CHECK(simplicity_test(c.points()).simple);
  }
  CHECK_THROWS_AS(family_curve("no-such-family", 10), Error);
  auto seg = family_curve("segment-at-angle", 10, {{"angle", M_PI / 3}, {"length", 2.0}});
  CHECK(std::abs(seg.tip() - std::polar(2.0, M_PI / 3)) <= 1e-12);
  auto hug = hugging_curve(400);
  CHECK(hug.tip() == Complex(1.0, 1e-3));
}

TEST_CASE("simplicity test") {
  CHECK(simplicity_test({Complex(0, 0), Complex(0, 1), Complex(1, 1)}).simple);
  // Comes back across its own first segment.
  std::vector<Complex> loop{Complex(0, 0), Complex(0, 1), Complex(1, 1), Complex(1, 0.5), Complex(-0.5, 0.5)};
  CHECK_FALSE(simplicity_test(loop).simple);
}

TEST_CASE("Brownian driving") {
  auto z = brownian_driving(0.0, 1.0, 100, 1);
  for (double v : z.values()) CHECK(v == 0.0);
  auto a = brownian_driving(2.0, 1.0, 100, 9), b = brownian_driving(2.0, 1.0, 100, 9);
  CHECK(a.values() == b.values());
  double sum = 0.0, sum2 = 0.0;
  for (std::uint64_t s = 1; s <= 1000; ++s) {
    double v = brownian_driving(1.0, 0.25, 1025, 5000 + s).values().back();
    sum += v;
    sum2 += v * v;
  }
  double var = sum2 / 1000 - (sum / 1000) * (sum / 1000);
  CHECK(var == doctest::Approx(0.25).epsilon(0.1));
}

TEST_CASE("slit constants") {
  auto vert = run_theorem_slit("segment-at-angle", 300, {{"angle", M_PI / 2}});
  CHECK(all_passed(vert));
  auto c = find(vert, "slit_constant_stable");
  REQUIRE(c);
  CHECK(c->params.at("C_hat").get<double>() <= 1e-10);

  auto pi3 = run_theorem_slit("segment-at-angle", 300, {{"angle", M_PI / 3}});
  CHECK(all_passed(pi3));
  auto c3 = find(pi3, "slit_constant_stable");
  REQUIRE(c3);
  CHECK(c3->params.at("C_hat").get<double>() <= oracle::seg_c_pi3);
  CHECK(c3->params.at("C_hat").get<double>() > 0.1);
}

TEST_CASE("default pairs sit on the grid") {
  auto e = chain_of(Driving::constant(CapacityGrid::uniform(1.0, 101), 0.0));
  auto pairs = default_pairs(e);
  CHECK(pairs.size() >= 10);
  for (auto [s, t] : pairs) {
    CHECK(s < t);
    CHECK_NOTHROW(e.grid().index_of(s));
    CHECK_NOTHROW(e.grid().index_of(t));
  }
}

TEST_CASE("johnprop conditions") {
  auto zero = chain_of(Driving::constant(CapacityGrid::uniform(1.0, 201), 0.0));
  auto r = check_johnprop_conditions(zero, default_pairs(zero));
  CHECK(r.C0_hat <= 4.0);
  CHECK(r.L_hat == doctest::Approx(1.0));
  CHECK(r.lip_norm == 0.0);
  CHECK(r.conditions_hold);
  CHECK(r.lip_bound_holds);
  CHECK(all_passed(r.report()));

  auto sq = chain_of(Driving::sample(CapacityGrid::uniform(1.0, 201), [](double t) { return 0.5 * std::sqrt(t); }));
  auto rs = check_johnprop_conditions(sq, default_pairs(sq));
  CHECK(std::isfinite(rs.C0_hat));
  CHECK(std::isfinite(rs.L_hat));
  CHECK(rs.lip_norm == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("planted hugging violation is flagged") {
  nlohmann::json cfg = default_config("johnprop");
  nlohmann::json keep = nlohmann::json::array();
  for (const auto& s : cfg["scenarios"])
    if (s["name"] == "hug") keep.push_back(s);
  cfg["scenarios"] = keep;
  for (const char* suite : {"johnprop", "nonslit"}) {
    CAPTURE(suite);
    Report r = run_suite(suite, cfg);
    auto flag = find(r, std::string("hug/") + suite + "_violation_flagged");
    REQUIRE(flag);
    CHECK(flag->passed);
    // No conclusion is asserted for the violating chain.
    CHECK(all_passed(r));
  }
}

TEST_CASE("nonslit conditions on the zero chain") {
  auto zero = chain_of(Driving::constant(CapacityGrid::uniform(1.0, 201), 0.0));
  Report r = check_nonslit_conditions(zero, default_pairs(zero));
  CHECK(all_passed(r));
  for (const char* name : {"nonslit_condition_i", "nonslit_condition_ii", "nonslit_condition_iii",
                           "nonslit_condition_iv", "nonslit_conclusion"}) {
    auto c = find(r, name);
    REQUIRE(c);
    CHECK(c->passed);
  }
}

TEST_CASE("subinvariance on the vertical slit") {
  auto c = family_curve("segment-at-angle", 200, {{"angle", M_PI / 2}});
  Report r = run_subinvariance_experiment(c, {0.0, 0.5}, 40);
  CHECK(all_passed(r));
}

TEST_CASE("collapse scan records simplicity") {
  Report r = sqrt_collapse_scan({0.0, 6.0}, 1000);
  REQUIRE(r.size() == 2);
  CHECK(r[0].params.at("simple").get<bool>());
  CHECK_FALSE(r[1].params.at("simple").get<bool>());
  CHECK_FALSE(r[0].params.at("asserted").get<bool>());
}

TEST_CASE("report bookkeeping") {
  Report r;
  r.push_back({"a", true, 1.0, {}});
  r.push_back({"b", false, -1.0, {{"asserted", false}}});
  CHECK(all_passed(r));
  r.push_back({"c", false, -1.0, {}});
  CHECK_FALSE(all_passed(r));
  auto back = report_from_json(to_json(r));
  REQUIRE(back.size() == 3);
  CHECK(back[1].check == "b");
  CHECK(back[2].margin == -1.0);
}

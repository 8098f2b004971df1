#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "loewner/io.hpp"

using namespace loewner;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "loewner_io_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("driving JSON types") {
  auto c = driving_from_json({{"type", "constant"}, {"T", 2.0}, {"n", 5}, {"params", {{"value", 1.5}}}});
  CHECK(c.size() == 5);
  CHECK(c.T() == 2.0);
  for (double v : c.values()) CHECK(v == 1.5);
  auto l = driving_from_json({{"type", "linear"}, {"T", 1.0}, {"n", 3}, {"params", {{"intercept", 1.0}, {"slope", 2.0}}}});
  CHECK(l[2] == doctest::Approx(3.0));
  auto s = driving_from_json({{"type", "sqrt"}, {"T", 1.0}, {"n", 5}, {"params", {{"c", 3.0}}}});
  CHECK(s[4] == doctest::Approx(3.0));
  auto b = driving_from_json({{"type", "brownian"}, {"T", 1.0}, {"n", 17}, {"params", {{"kappa", 0.0}, {"seed", 4}}}});
  CHECK(b.sup_norm() == 0.0);
  CHECK_THROWS_AS(driving_from_json({{"type", "bogus"}, {"T", 1.0}, {"n", 3}}), Error);
}

TEST_CASE("driving JSON round trip") {
  auto d = Driving(CapacityGrid({0.0, 0.1, 0.5, 1.0}), {0.0, 0.2, -0.3, 1.0});
  auto j = driving_to_json(d);
  CHECK(j.contains("times"));
  auto back = driving_from_json(j);
  CHECK(back.values() == d.values());
  CHECK(back.grid().times() == d.grid().times());
  auto u = driving_to_json(Driving::constant(CapacityGrid::uniform(1.0, 4), 0.0));
  CHECK_FALSE(u.contains("times"));
}

TEST_CASE("curve CSV round trip") {
  auto path = scratch("curve.csv").string();
  std::vector<Complex> pts{Complex(0, 0), Complex(0.1, 0.5), Complex(-0.2, 1.0 / 3.0)};
  write_curve_csv(path, pts);
  auto c = read_curve_csv(path);
  REQUIRE(c.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(c.points()[k] == pts[k]);
  std::ofstream(path) << "0 0\n0 1\n";
  CHECK(read_curve_csv(path).size() == 2);
  std::ofstream(path) << "re,im\n0,0\nfoo\n";
  CHECK_THROWS_AS(read_curve_csv(path), Error);
}

TEST_CASE("squares CSV") {
  auto path = scratch("squares.csv").string();
  write_squares_csv(path, standard_squares_meeting(HullCurve({Complex(0, 0), Complex(0, 1)}), -2));
  std::ifstream in(path);
  std::string header, line;
  std::getline(in, header);
  CHECK(header == "j,k_or_cx,cy,side");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 6);
}

TEST_CASE("modulus problem JSON") {
  nlohmann::json j{{"hull", {{0, 0}, {0, 1}}},
                   {"E", {{{-1, 0}, {-1, 1}}}},
                   {"F", {{{1, 0}, {1, 1}}}},
                   {"window", {-2, 2, 0, 2}},
                   {"grid", 96}};
  auto p = modulus_problem_from_json(j);
  CHECK(p.grid_n == 96);
  CHECK(p.E.size() == 1);
  CHECK(p.window->xmax == 2.0);
  CHECK(p.domain.hull().size() == 2);
  j["window"] = {1, 2};
  CHECK_THROWS_AS(modulus_problem_from_json(j), Error);
}

TEST_CASE("SVG output") {
  auto path = scratch("plot.svg").string();
  auto canvas = canvas_for({Complex(0, 0), Complex(0, 2)});
  canvas.polyline({Complex(0, 0), Complex(0, 2)});
  canvas.square(0.0, 1.0, 1.0);
  canvas.point(Complex(0, 2));
  canvas.save(path);
  std::ifstream in(path);
  std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(all.find("<svg") == 0);
  CHECK(all.find("<polyline") != std::string::npos);
  CHECK(all.find("<rect") != std::string::npos);
  CHECK(all.find("</svg>") != std::string::npos);
}

TEST_CASE("JSON read errors") {
  auto path = scratch("bad.json").string();
  std::ofstream(path) << "{not json";
  CHECK_THROWS_AS(read_json(path), Error);
  CHECK_THROWS_AS(read_json(scratch("missing.json").string() + ".none"), Error);
}

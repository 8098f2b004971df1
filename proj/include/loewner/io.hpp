#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "loewner/core.hpp"
#include "loewner/forward.hpp"
#include "loewner/modulus.hpp"
#include "loewner/report.hpp"
#include "loewner/whitney.hpp"

namespace loewner {

// Driving JSON: {"type", "T", "n", "params", "values"}. Types constant,
// linear, sqrt and brownian are generated from params on a uniform grid;
// samples reads "values" (and "times" when the grid is not uniform).
Driving driving_from_json(const nlohmann::json& j);
nlohmann::json driving_to_json(const Driving& d, const std::string& type = "samples",
                               const nlohmann::json& params = nlohmann::json::object());

// CSV with header re,im.
HullCurve read_curve_csv(const std::string& path);
void write_curve_csv(const std::string& path, const std::vector<Complex>& pts);
// CSV with header t,re,im.
void write_trace_csv(const std::string& path, const LoewnerEvolution& e);
// CSV with header j,k_or_cx,cy,side. Standard squares carry the column
// index k, complex squares their center x.
void write_squares_csv(const std::string& path, const StandardSquares& sq);
void write_squares_csv(const std::string& path, const WhitneyComplex& w);

// Hull points as [[re, im], ...].
std::vector<Complex> points_from_json(const nlohmann::json& j);
nlohmann::json points_to_json(const std::vector<Complex>& pts);

// problem.json: {"hull": [[re,im],...], "filled": bool, "E": [[[re,im],...]],
// "F": [...], "window": [xmin, xmax, ymin, ymax], "grid": n}.
ModulusProblem modulus_problem_from_json(const nlohmann::json& j);

nlohmann::json read_json(const std::string& path);
void write_json(const std::string& path, const nlohmann::json& j);

// SVG of a region [-X, X] x [0, Y] of H.
class SvgCanvas {
 public:
  SvgCanvas(double X, double Y, int width = 800);
  void polyline(const std::vector<Complex>& pts, const std::string& color = "black", double stroke = 1.0);
  void square(double x, double y, double side, const std::string& color = "steelblue");
  void point(Complex z, const std::string& color = "red", double r = 3.0);
  void save(const std::string& path) const;

 private:
  double sx(double x) const;
  double sy(double y) const;
  double X_, Y_;
  int w_, h_;
  std::vector<std::string> items_;
};

// Viewport covering the points with a margin.
SvgCanvas canvas_for(const std::vector<Complex>& pts);

}  // namespace loewner

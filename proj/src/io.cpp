#include "loewner/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "loewner/harness.hpp"

namespace loewner {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out.precision(17);
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

Driving driving_from_json(const nlohmann::json& j) {
  std::string type = j.value("type", "samples");
  nlohmann::json p = j.value("params", nlohmann::json::object());
  if (type == "samples") {
    auto values = j.at("values").get<std::vector<double>>();
    CapacityGrid grid = j.contains("times") ? CapacityGrid(j.at("times").get<std::vector<double>>())
                                            : CapacityGrid::uniform(j.at("T").get<double>(), values.size());
    return Driving(grid, std::move(values));
  }
  double T = j.at("T").get<double>();
  std::size_t n = j.at("n").get<std::size_t>();
  CapacityGrid grid = CapacityGrid::uniform(T, n);
  if (type == "constant") return Driving::constant(grid, p.value("value", 0.0));
  if (type == "linear") {
    double a = p.value("intercept", 0.0), b = p.value("slope", 1.0);
    return Driving::sample(grid, [=](double t) { return a + b * t; });
  }
  if (type == "sqrt") {
    double c = p.value("c", 1.0);
    return Driving::sample(grid, [=](double t) { return c * std::sqrt(t); });
  }
  if (type == "brownian") return brownian_driving(p.value("kappa", 1.0), T, n, p.value("seed", std::uint64_t(1)));
  throw Error(ErrorKind::InvalidArgument, "unknown driving type: " + type);
}

nlohmann::json driving_to_json(const Driving& d, const std::string& type, const nlohmann::json& params) {
  nlohmann::json j{{"type", type}, {"T", d.T()}, {"n", d.size()}, {"params", params}, {"values", d.values()}};
  if (!d.grid().is_uniform()) j["times"] = d.grid().times();
  return j;
}

HullCurve read_curve_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
  std::string line;
  std::vector<Complex> pts;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.find("re") != std::string::npos) continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double x, y;
    if (!(ss >> x >> y)) throw Error(ErrorKind::InvalidArgument, "bad curve row: " + line);
    pts.emplace_back(x, y);
  }
  return HullCurve(std::move(pts));
}

void write_curve_csv(const std::string& path, const std::vector<Complex>& pts) {
  auto out = open_out(path);
  out << "re,im\n";
  for (Complex z : pts) out << z.real() << ',' << z.imag() << '\n';
}

void write_trace_csv(const std::string& path, const LoewnerEvolution& e) {
  auto out = open_out(path);
  out << "t,re,im\n";
  const auto& tr = e.trace_points();
  for (std::size_t k = 0; k < tr.size(); ++k) out << e.grid()[k] << ',' << tr[k].real() << ',' << tr[k].imag() << '\n';
}

void write_squares_csv(const std::string& path, const StandardSquares& sq) {
  auto out = open_out(path);
  out << "j,k_or_cx,cy,side\n";
  for (const auto& q : sq.squares()) out << q.level << ',' << q.k() << ',' << q.center().imag() << ',' << q.side() << '\n';
}

void write_squares_csv(const std::string& path, const WhitneyComplex& w) {
  auto out = open_out(path);
  out << "j,k_or_cx,cy,side\n";
  for (const auto& q : w.squares())
    out << q.level << ',' << q.center().real() << ',' << q.center().imag() << ',' << q.side() << '\n';
}

std::vector<Complex> points_from_json(const nlohmann::json& j) {
  std::vector<Complex> pts;
  for (const auto& p : j) pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  return pts;
}

nlohmann::json points_to_json(const std::vector<Complex>& pts) {
  nlohmann::json j = nlohmann::json::array();
  for (Complex z : pts) j.push_back({z.real(), z.imag()});
  return j;
}

ModulusProblem modulus_problem_from_json(const nlohmann::json& j) {
  std::optional<Box> window;
  if (j.contains("window")) {
    auto w = j.at("window").get<std::vector<double>>();
    if (w.size() != 4) throw Error(ErrorKind::InvalidArgument, "window needs 4 numbers");
    window = Box{w[0], w[1], w[2], w[3]};
  }
  std::vector<Complex> hull = j.contains("hull") ? points_from_json(j.at("hull")) : std::vector<Complex>{};
  std::vector<Continuum> E, F;
  for (const auto& c : j.at("E")) E.push_back(points_from_json(c));
  for (const auto& c : j.at("F")) F.push_back(points_from_json(c));
  DomainSpec dom = [&] {
    if (hull.size() >= 2) {
      HullCurve h(hull, true, j.value("filled", false));
      return window ? DomainSpec(h, *window) : DomainSpec(h);
    }
    Box b = window.value_or(Box{-1, 1, 0, 1});
    return DomainSpec::half_plane(b);
  }();
  return ModulusProblem{dom, E, F, j.value("grid", 256), window};
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::InvalidArgument, path + ": " + ex.what());
  }
}

void write_json(const std::string& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

SvgCanvas::SvgCanvas(double X, double Y, int width) : X_(X), Y_(Y), w_(width) {
  h_ = std::max(1, int(std::lround(width * Y / (2.0 * X))));
}

double SvgCanvas::sx(double x) const { return (x + X_) / (2.0 * X_) * w_; }
double SvgCanvas::sy(double y) const { return h_ - y / Y_ * h_; }

void SvgCanvas::polyline(const std::vector<Complex>& pts, const std::string& color, double stroke) {
  std::string s = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + num(stroke) + "\" points=\"";
  for (Complex z : pts) s += num(sx(z.real())) + "," + num(sy(z.imag())) + " ";
  items_.push_back(s + "\"/>");
}

void SvgCanvas::square(double x, double y, double side, const std::string& color) {
  double px = sx(x), py = sy(y + side), ps = side / (2.0 * X_) * w_;
  items_.push_back("<rect x=\"" + num(px) + "\" y=\"" + num(py) + "\" width=\"" + num(ps) + "\" height=\"" + num(ps) +
                   "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"0.3\"/>");
}

void SvgCanvas::point(Complex z, const std::string& color, double r) {
  items_.push_back("<circle cx=\"" + num(sx(z.real())) + "\" cy=\"" + num(sy(z.imag())) + "\" r=\"" + num(r) +
                   "\" fill=\"" + color + "\"/>");
}

void SvgCanvas::save(const std::string& path) const {
  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_ << "\" viewBox=\"0 0 "
      << w_ << ' ' << h_ << "\">\n";
  out << "<line x1=\"0\" y1=\"" << h_ << "\" x2=\"" << w_ << "\" y2=\"" << h_ << "\" stroke=\"gray\"/>\n";
  for (const auto& s : items_) out << s << '\n';
  out << "</svg>\n";
}

SvgCanvas canvas_for(const std::vector<Complex>& pts) {
  double X = 0.0, Y = 0.0;
  for (Complex z : pts) {
    X = std::max(X, std::abs(z.real()));
    Y = std::max(Y, z.imag());
  }
  double m = std::max({X, Y, 1e-9});
  X += 0.2 * m;
  Y += 0.2 * m;
  return SvgCanvas(std::max(X, 0.5 * Y), Y);
}

}  // namespace loewner

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "loewner/core.hpp"
#include "loewner/forward.hpp"
#include "loewner/harness.hpp"
#include "loewner/metric.hpp"
#include "loewner/modulus.hpp"
#include "loewner/report.hpp"
#include "loewner/whitney.hpp"
#include "loewner/zipper.hpp"

namespace py = pybind11;
using namespace loewner;
using nlohmann::json;

namespace {

// JSON crosses the boundary as text; the Python side wraps json.dumps/loads.
json parse(const std::string& s) { return s.empty() ? json::object() : json::parse(s); }

}  // namespace

PYBIND11_MODULE(_loewner, m) {
  m.doc() = "Loewner evolution, zipper, Whitney and modulus tools";

  static py::exception<Error> error(m, "LoewnerError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      inst.attr("kind") = to_string(e.kind());
      inst.attr("step") = e.step();
      PyErr_SetObject(error.ptr(), inst.ptr());
    }
  });

  py::enum_<StepKind>(m, "StepKind").value("vertical", StepKind::Vertical).value("tilted", StepKind::Tilted);

  py::class_<CapacityGrid>(m, "CapacityGrid")
      .def(py::init<std::vector<double>>(), py::arg("times"))
      .def_static("uniform", &CapacityGrid::uniform, py::arg("T"), py::arg("n"))
      .def_static("graded", &CapacityGrid::graded, py::arg("T"), py::arg("n"), py::arg("growth") = 0.05,
                  py::arg("head") = 1e-10)
      .def_property_readonly("times", &CapacityGrid::times)
      .def_property_readonly("T", &CapacityGrid::T)
      .def("__len__", &CapacityGrid::size);

  py::class_<Driving>(m, "Driving")
      .def(py::init<CapacityGrid, std::vector<double>>(), py::arg("grid"), py::arg("values"))
      .def_static("constant", &Driving::constant, py::arg("grid"), py::arg("value"))
      .def_property_readonly("grid", &Driving::grid)
      .def_property_readonly("values", &Driving::values)
      .def_property_readonly("T", &Driving::T)
      .def("at", &Driving::at)
      .def("sup_norm", &Driving::sup_norm)
      .def("__len__", &Driving::size);

  py::class_<HullCurve>(m, "HullCurve")
      .def(py::init<std::vector<Complex>, bool, bool>(), py::arg("points"), py::arg("simple") = true,
           py::arg("filled") = false)
      .def_property_readonly("points", &HullCurve::points)
      .def_property_readonly("simple", &HullCurve::simple)
      .def_property_readonly("filled", &HullCurve::filled)
      .def_property_readonly("tip", &HullCurve::tip)
      .def("diameter", &HullCurve::diameter)
      .def("arc_length", &HullCurve::arc_length)
      .def("transformed", &HullCurve::transformed, py::arg("scale"), py::arg("shift"))
      .def("__len__", &HullCurve::size);

  py::class_<Box>(m, "Box")
      .def(py::init([](double x0, double x1, double y0, double y1) { return Box{x0, x1, y0, y1}; }),
           py::arg("xmin"), py::arg("xmax"), py::arg("ymin"), py::arg("ymax"))
      .def_readwrite("xmin", &Box::xmin)
      .def_readwrite("xmax", &Box::xmax)
      .def_readwrite("ymin", &Box::ymin)
      .def_readwrite("ymax", &Box::ymax);

  py::class_<DomainSpec>(m, "DomainSpec")
      .def(py::init<HullCurve, int>(), py::arg("hull"), py::arg("check_resolution") = 256)
      .def(py::init<HullCurve, Box, int>(), py::arg("hull"), py::arg("bbox"), py::arg("check_resolution") = 256)
      .def_static("half_plane", &DomainSpec::half_plane, py::arg("window"))
      .def_property_readonly("bbox", &DomainSpec::bbox)
      .def("delta", &DomainSpec::delta)
      .def("contains", &DomainSpec::contains, py::arg("z"), py::arg("tol") = 0.0);

  m.def("resample_driving", &resample_driving, py::arg("driving"), py::arg("n"));
  m.def("lip_half_norm", &lip_half_norm, py::arg("driving"), py::arg("window") = py::none());

  py::class_<LoewnerEvolution>(m, "LoewnerEvolution")
      .def_property_readonly("T", &LoewnerEvolution::T)
      .def_property_readonly("driving", [](const LoewnerEvolution& e) { return e.driving; })
      .def_property_readonly("grid", &LoewnerEvolution::grid)
      .def_property_readonly("trace", &LoewnerEvolution::trace_points)
      .def("hull_at", &LoewnerEvolution::hull_at, py::arg("t"));

  m.def(
      "solve_forward",
      [](const Driving& d, StepKind kind, bool trace, double tip_offset) {
        return solve_forward(d, {kind, trace, tip_offset});
      },
      py::arg("driving"), py::arg("kind") = StepKind::Vertical, py::arg("trace") = true, py::arg("tip_offset") = 0.1);
  m.def("eval_g", &eval_g, py::arg("evolution"), py::arg("t"), py::arg("z"));
  m.def("eval_f", &eval_f, py::arg("evolution"), py::arg("t"), py::arg("w"), py::arg("tip_limit") = false);
  m.def("trace_endpoint", &trace_endpoint, py::arg("evolution"), py::arg("tip_offset") = 0.1);
  m.def("hcap_of_evolution", &hcap_of_evolution, py::arg("evolution"), py::arg("t"));
  m.def("transition_diameter", &transition_diameter, py::arg("evolution"), py::arg("s"), py::arg("t"));

  py::class_<ZipperResult>(m, "ZipperResult")
      .def_readonly("driving", &ZipperResult::driving)
      .def_readonly("capacity_times", &ZipperResult::capacity_times)
      .def_readonly("vertices", &ZipperResult::vertices)
      .def_property_readonly("T", &ZipperResult::T);
  m.def(
      "extract_driving", [](const HullCurve& c, StepKind kind) { return extract_driving(c, {kind}); },
      py::arg("curve"), py::arg("kind") = StepKind::Tilted);
  m.def(
      "capacity_parameterize",
      [](const HullCurve& c, std::size_t n, StepKind kind) { return capacity_parameterize(c, n, {kind}); },
      py::arg("curve"), py::arg("n"), py::arg("kind") = StepKind::Tilted);

  m.def("default_j_min", &default_j_min, py::arg("hull"));
  m.def(
      "whitney_area",
      [](const HullCurve& K, int j_min) {
        WhitneyArea a = whitney_area(K, j_min);
        return py::make_tuple(a.area, a.tail);
      },
      py::arg("hull"), py::arg("j_min"));
  m.def(
      "standard_square_count", [](const HullCurve& K, int j_min) { return standard_squares_meeting(K, j_min).count(); },
      py::arg("hull"), py::arg("j_min"));
  m.def(
      "hcap_estimate",
      [](const HullCurve& K) {
        Interval iv = hcap_estimate(K);
        return py::make_tuple(iv.low, iv.high);
      },
      py::arg("hull"));
  m.def("quasi_hyperbolic_distance", &quasi_hyperbolic_distance, py::arg("domain"), py::arg("z0"), py::arg("z1"),
        py::arg("resolution"));
  m.def("internal_distance", &internal_distance, py::arg("domain"), py::arg("z0"), py::arg("z1"),
        py::arg("resolution") = 0.01);

  py::class_<ModulusResult>(m, "ModulusResult")
      .def_readonly("value", &ModulusResult::value)
      .def_readonly("iterations", &ModulusResult::iterations)
      .def_readonly("residual", &ModulusResult::residual);
  m.def(
      "discrete_modulus",
      [](const DomainSpec& dom, std::vector<Continuum> E, std::vector<Continuum> F, int grid_n,
         std::optional<Box> window) { return discrete_modulus({dom, std::move(E), std::move(F), grid_n, window}); },
      py::arg("domain"), py::arg("E"), py::arg("F"), py::arg("grid_n") = 256, py::arg("window") = py::none());
  m.def("circle_arc", &circle_arc, py::arg("center"), py::arg("radius"), py::arg("n") = 256);

  m.def(
      "family_curve",
      [](const std::string& family, std::size_t n, const std::string& params) {
        return family_curve(family, n, parse(params));
      },
      py::arg("family"), py::arg("n"), py::arg("params") = "");
  m.def("curve_families", &curve_families);
  m.def("brownian_driving", &brownian_driving, py::arg("kappa"), py::arg("T"), py::arg("n"), py::arg("seed"));
  m.def(
      "_run_suite", [](const std::string& suite, const std::string& config) {
        return to_json(run_suite(suite, parse(config))).dump();
      },
      py::arg("suite"), py::arg("config") = "", py::call_guard<py::gil_scoped_release>());
  m.def(
      "_default_config", [](const std::string& suite) { return default_config(suite).dump(); }, py::arg("suite"));
}

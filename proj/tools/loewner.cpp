#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <json.hpp>

#include "loewner/forward.hpp"
#include "loewner/harness.hpp"
#include "loewner/io.hpp"
#include "loewner/metric.hpp"
#include "loewner/modulus.hpp"
#include "loewner/whitney.hpp"
#include "loewner/zipper.hpp"

using namespace loewner;
using nlohmann::json;

namespace {

Driving load_driving(const json& j, std::size_t steps) {
  json d = j;
  if (steps > 0 && d.value("type", "samples") != "samples") d["n"] = steps + 1;
  Driving drv = driving_from_json(d);
  if (steps > 0 && drv.size() != steps + 1) drv = resample_driving(drv, steps + 1);
  return drv;
}

void print_report(const Report& r) {
  for (const auto& c : r) {
    bool asserted = !c.params.is_object() || c.params.value("asserted", true);
    std::cout << (c.passed ? "PASS " : (asserted ? "FAIL " : "note ")) << c.check << "  margin=" << c.margin << '\n';
  }
}

// chain.json: {"driving": {...}, "kind": ..., "steps": N} or {"curve": [[re, im], ...]}.
LoewnerEvolution load_chain(const json& j) {
  if (j.contains("curve")) {
    ZipperOptions zo{step_kind_from_string(j.value("kind", "tilted"))};
    return evolution_from_zipper(extract_driving(HullCurve(points_from_json(j.at("curve"))), zo));
  }
  Driving d = load_driving(j.at("driving"), j.value("steps", std::size_t(0)));
  return solve_forward(d, {step_kind_from_string(j.value("kind", "vertical")), true, j.value("tip_offset", 0.1)});
}

void save_svg(const std::string& path, const std::vector<Complex>& pts) {
  SvgCanvas c = canvas_for(pts);
  c.polyline(pts);
  c.save(path);
}

json calibration_json(const CalibrationTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) rows.push_back({{"name", r.name}, {"hcap", r.hcap}, {"area", r.area}, {"ratio", r.ratio}});
  return {{"provenance",
           {{"generator", "loewner whitney --calibrate"},
            {"method", "ratio hcap / Area_W over the calibration hulls; Area_W at the default level cutoff"},
            {"hcap_reference",
             "slits [0, ih]: h^2/2; half-disks of radius r: r^2; L-shape: zipper capacity at 2000 points per unit length"},
            {"interval", "[Area_W * ratio_min / alignment, ratio_max * alignment * (Area_W + tail)]"}}},
          {"hulls", rows},
          {"constants",
           {{"ratio_min", t.constants.ratio_min},
            {"ratio_max", t.constants.ratio_max},
            {"alignment", t.constants.alignment}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loewner chains: forward and inverse solvers, Whitney geometry, metrics and verification harness"};
  app.require_subcommand(1);

  // forward
  auto* fwd = app.add_subcommand("forward", "Solve the Loewner equation for a driving function");
  std::string f_driving, f_out, f_svg, f_kind = "vertical";
  std::size_t f_steps = 0;
  bool f_trace = false;
  double f_tip = 0.1;
  fwd->add_option("--driving", f_driving, "Driving JSON")->required();
  fwd->add_option("--steps", f_steps, "Number of steps (resamples the driving)");
  fwd->add_option("--kind", f_kind, "vertical|tilted");
  fwd->add_flag("--trace", f_trace, "Write the full trace");
  fwd->add_option("--tip-offset", f_tip, "Tip offset factor");
  fwd->add_option("--out", f_out, "trace.csv")->required();
  fwd->add_option("--svg", f_svg, "SVG plot of the trace");

  // zip
  auto* zip = app.add_subcommand("zip", "Extract the driving function of a curve");
  std::string z_curve, z_out, z_kind = "tilted";
  double z_profile = 0.0;
  zip->add_option("--curve", z_curve, "Curve CSV (re,im)")->required();
  zip->add_option("--out", z_out, "driving.json")->required();
  zip->add_option("--kind", z_kind, "tilted|vertical");
  zip->add_option("--profile", z_profile, "Transition diameter profile at this delta");

  // whitney
  auto* wh = app.add_subcommand("whitney", "Standard squares, Whitney complexes and hcap calibration");
  std::string w_hull, w_out, w_svg;
  int w_jmin = 0;
  bool w_complex = false, w_filled = false, w_calibrate = false;
  wh->add_option("--hull", w_hull, "Hull curve CSV");
  wh->add_option("--jmin", w_jmin, "Level cutoff (default floor(log2 diam) - 24)");
  wh->add_flag("--filled", w_filled, "Treat the hull as solid");
  wh->add_flag("--complex", w_complex, "Write the adaptive Whitney complex of H minus the hull");
  wh->add_flag("--calibrate", w_calibrate, "Recompute hcap calibration constants");
  wh->add_option("--out", w_out, "squares.csv, or the calibration JSON with --calibrate")->required();
  wh->add_option("--svg", w_svg, "SVG plot of the squares");

  // analyze
  auto* an = app.add_subcommand("analyze", "Metric and distortion checks on a chain");
  std::string a_chain, a_suite = "distortion", a_out;
  double a_t = -1.0;
  std::size_t a_samples = 1000;
  std::uint64_t a_seed = 1;
  an->add_option("--chain", a_chain, "chain.json")->required();
  an->add_option("--suite", a_suite, "distortion|holder|john")->check(CLI::IsMember({"distortion", "holder", "john"}));
  an->add_option("--t", a_t, "Time (default T)");
  an->add_option("--samples", a_samples, "Random samples");
  an->add_option("--seed", a_seed, "RNG seed");
  an->add_option("--out", a_out, "report.json")->required();

  // modulus
  auto* mo = app.add_subcommand("modulus", "Discrete modulus of a curve family");
  std::string m_problem, m_out;
  int m_grid = 0;
  mo->add_option("--problem", m_problem, "problem.json")->required();
  mo->add_option("--grid", m_grid, "Grid resolution");
  mo->add_option("--out", m_out, "result.json")->required();

  // harness
  auto* ha = app.add_subcommand("harness", "Verification suites");
  std::string h_suite, h_config, h_out = "reports";
  bool h_svg = false;
  ha->add_option("--suite", h_suite, "slit|johnprop|nonslit|subinv|brownian")
      ->required()
      ->check(CLI::IsMember({"slit", "johnprop", "nonslit", "subinv", "brownian"}));
  ha->add_option("--config", h_config, "Config JSON (defaults built in)");
  ha->add_option("--out", h_out, "Report directory");
  ha->add_flag("--svg", h_svg, "Plot scenario hulls");
  bool h_dump = false;
  ha->add_flag("--print-config", h_dump, "Print the default config and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fwd) {
      Driving d = load_driving(read_json(f_driving), f_steps);
      ForwardOptions o{step_kind_from_string(f_kind), f_trace, f_tip};
      if (f_trace) {
        LoewnerEvolution e = solve_forward(d, o);
        write_trace_csv(f_out, e);
        if (!f_svg.empty()) save_svg(f_svg, e.trace_points());
        Complex tip = e.trace_points().back();
        std::cout << json{{"steps", d.size() - 1}, {"tip", {tip.real(), tip.imag()}}}.dump() << '\n';
      } else {
        o.trace = false;
        LoewnerEvolution e = solve_forward(d, o);
        Complex tip = trace_endpoint(e, f_tip);
        std::vector<Complex> pts{Complex(d[0], 0.0), tip};
        std::ofstream out(f_out);
        out.precision(17);
        out << "t,re,im\n" << 0.0 << ',' << d[0] << ",0\n" << d.T() << ',' << tip.real() << ',' << tip.imag() << '\n';
        if (!f_svg.empty()) save_svg(f_svg, pts);
        std::cout << json{{"steps", d.size() - 1}, {"tip", {tip.real(), tip.imag()}}}.dump() << '\n';
      }
      return 0;
    }
    if (*zip) {
      ZipperResult z = extract_driving(read_curve_csv(z_curve), {step_kind_from_string(z_kind)});
      json j = driving_to_json(z.driving, "samples", {{"source", z_curve}, {"kind", z_kind}});
      if (z_profile > 0) {
        DiameterProfile p = transition_diameter_profile(z, z_profile);
        json rows = json::array();
        for (const auto& r : p.rows) rows.push_back({r.s, r.diam});
        j["profile"] = {{"delta", z_profile}, {"max", p.max}, {"rows", rows}};
      }
      write_json(z_out, j);
      json summary{{"T", z.driving.T()}, {"n", z.driving.size()}, {"lambda_T", z.driving.values().back()}};
      if (j.contains("profile")) summary["profile_max"] = j["profile"]["max"];
      std::cout << summary.dump() << '\n';
      return 0;
    }
    if (*wh) {
      if (w_calibrate) {
        CalibrationTable t = calibrate_hcap();
        write_json(w_out, calibration_json(t));
        for (const auto& r : t.rows) std::cout << r.name << " hcap=" << r.hcap << " area=" << r.area << " ratio=" << r.ratio << '\n';
        return 0;
      }
      if (w_hull.empty()) throw Error(ErrorKind::InvalidArgument, "--hull is required");
      HullCurve raw = read_curve_csv(w_hull);
      HullCurve K(raw.points(), !w_filled, w_filled);
      int jmin = wh->count("--jmin") ? w_jmin : default_j_min(K);
      std::vector<Complex> outline = K.points();
      SvgCanvas canvas = canvas_for(outline);
      if (w_complex) {
        DomainSpec spec(K);
        WhitneyComplex c = adaptive_whitney(spec, jmin);
        write_squares_csv(w_out, c);
        for (const auto& q : c.squares()) canvas.square(q.x, q.y, q.side());
        std::cout << json{{"squares", c.size()}, {"j_min", jmin}, {"connected", c.connected()}}.dump() << '\n';
      } else {
        WhitneyArea a = whitney_area(K, jmin);
        StandardSquares sq = standard_squares_meeting(K, jmin);
        write_squares_csv(w_out, sq);
        Interval iv = hcap_estimate(K);
        if (!w_svg.empty())
          for (const auto& q : sq.squares()) canvas.square(q.x, q.y, q.side());
        std::cout << json{{"squares", sq.count()}, {"j_min", jmin}, {"area", a.area}, {"tail", a.tail},
                          {"hcap_interval", {iv.low, iv.high}}}
                         .dump()
                  << '\n';
      }
      if (!w_svg.empty()) {
        canvas.polyline(outline, "black", 1.5);
        canvas.save(w_svg);
      }
      return 0;
    }
    if (*an) {
      json cj = read_json(a_chain);
      LoewnerEvolution e = load_chain(cj);
      double t = a_t >= 0 ? e.grid()[e.grid().index_of(a_t)] : e.T();
      Report r;
      if (a_suite == "distortion") {
        r = distortion_suite(e, t, a_samples, a_seed);
      } else if (a_suite == "holder") {
        HolderEstimate h = holder_of(e, t, std::max<std::size_t>(a_samples / 10, 20));
        r.push_back({"holder_exponent", !h.degenerate && h.beta_hat > 0, h.beta_hat,
                     {{"beta_hat", h.beta_hat}, {"c1_hat", h.c1_hat}, {"fit_residual", h.fit_residual},
                      {"heights", h.heights}, {"max_derivative", h.max_derivative}}});
      } else {
        r = check_johnprop_conditions(e, default_pairs(e)).report();
      }
      write_json(a_out, to_json(r));
      print_report(r);
      return all_passed(r) ? 0 : 1;
    }
    if (*mo) {
      json pj = read_json(m_problem);
      ModulusProblem p = modulus_problem_from_json(pj);
      if (m_grid > 0) p.grid_n = m_grid;
      ModulusResult res = discrete_modulus(p);
      json out{{"grid", p.grid_n}, {"iterations", res.iterations}, {"residual", res.residual}};
      out["value"] = std::isfinite(res.value) ? json(res.value) : json(nullptr);
      out["infinite"] = !std::isfinite(res.value);
      write_json(m_out, out);
      std::cout << out.dump() << '\n';
      return 0;
    }
    if (*ha) {
      if (h_dump) {
        std::cout << default_config(h_suite).dump(2) << '\n';
        return 0;
      }
      json cfg = h_config.empty() ? json::object() : read_json(h_config);
      Report r = run_suite(h_suite, cfg);
      std::filesystem::create_directories(h_out);
      write_json(h_out + "/" + h_suite + ".json", to_json(r));
      if (h_svg) {
        json full = default_config(h_suite);
        full.update(cfg);
        if (full.contains("scenarios"))
          for (const auto& sc : full.at("scenarios")) {
            std::vector<Complex> pts;
            std::size_t n = sc.value("n", std::size_t(400));
            if (sc.contains("family"))
              pts = family_curve(sc.at("family"), n, sc.value("params", json::object())).points();
            else if (sc.contains("curve"))
              pts = family_curve(sc.at("curve").value("family", ""), n, sc.at("curve").value("params", json::object())).points();
            else {
              json dj = sc.at("driving");
              if (!dj.contains("T")) dj["T"] = sc.value("T", 1.0);
              pts = load_chain({{"driving", dj}, {"steps", n}}).trace_points();
            }
            save_svg(h_out + "/" + h_suite + "_" + sc.at("name").get<std::string>() + ".svg", pts);
          }
      }
      print_report(r);
      return all_passed(r) ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

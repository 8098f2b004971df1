#pragma once

#include <vector>

#include "loewner/chain.hpp"
#include "loewner/core.hpp"
#include "loewner/forward.hpp"

namespace loewner {

struct ZipperOptions {
  StepKind step_kind = StepKind::Tilted;
};

struct ZipperResult {
  Driving driving;
  std::vector<double> capacity_times;
  MapChain fitted_chain;
  std::vector<Complex> vertices;

  double T() const { return capacity_times.back(); }
};

// Consumes one vertex per step; the fitted slit ends exactly at the vertex.
ZipperResult extract_driving(const HullCurve& curve, const ZipperOptions& options = {});

// Curve resampled at capacity times kT/n, k = 0..n.
HullCurve capacity_parameterize(const HullCurve& curve, std::size_t n, const ZipperOptions& options = {});

struct ProfileRow {
  double s;
  double diam;
};
struct DiameterProfile {
  std::vector<ProfileRow> rows;
  double max = 0.0;
};

// diam g_s(gamma(s, s+delta]) for every grid s with s + delta <= T.
DiameterProfile transition_diameter_profile(const ZipperResult& z, double delta);

struct WeakLipResult {
  bool pass = true;
  double worst_s = 0.0;
  double worst_t = 0.0;
  double worst_ratio = 0.0;
};

// |l_s - l_t| <= c sqrt(h log(1/h)), h = |s-t| <= 1/2.
WeakLipResult weak_lip_check(const Driving& d, double c);

// The fitted chain as an evolution whose trace is the input vertices.
LoewnerEvolution evolution_from_zipper(const ZipperResult& z);

}  // namespace loewner

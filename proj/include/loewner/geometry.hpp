#pragma once

#include <vector>

#include "loewner/core.hpp"

namespace loewner::geom {

double cross(Complex a, Complex b);
double dist_point_segment(Complex p, Complex a, Complex b);
bool segments_intersect(Complex a, Complex b, Complex c, Complex d);
double dist_segment_segment(Complex a, Complex b, Complex c, Complex d);

// Closed box [x0,x1]x[y0,y1].
bool segment_meets_box(Complex a, Complex b, double x0, double y0, double x1, double y1);
double dist_box_segment(double x0, double y0, double x1, double y1, Complex a, Complex b);
double dist_box_point(double x0, double y0, double x1, double y1, Complex p);

bool point_in_polygon(Complex p, const std::vector<Complex>& poly);

// Diameter of a finite point set via its convex hull.
double diameter(const std::vector<Complex>& pts);
std::vector<Complex> convex_hull(std::vector<Complex> pts);

// Hausdorff distance between two polylines, sampled at their vertices and
// against the other polyline's segments.
double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b);
double dist_point_polyline(Complex p, const std::vector<Complex>& poly);

}  // namespace loewner::geom

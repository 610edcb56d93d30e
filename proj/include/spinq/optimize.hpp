// Derivative-free 1-D minimization: coarse scan to bracket, golden-section to
// polish. Objectives here are smooth and cheap (tiny eigenproblems), so this
// is both robust and fast enough.
#pragma once

#include <functional>

namespace spinq {

struct ScalarMinimum {
    double x;
    double value;
};

// Golden-section search on [a, b]; assumes unimodality inside the bracket.
ScalarMinimum golden_section_min(const std::function<double(double)>& f, double a, double b,
                                 double x_tol);

// Evaluates f on a uniform grid of `scan_points` over [a, b], then refines
// around the best grid cell with golden-section.
ScalarMinimum scan_then_golden_min(const std::function<double(double)>& f, double a, double b,
                                   int scan_points, double x_tol);

}  // namespace spinq

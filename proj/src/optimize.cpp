#include "spinq/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinq {

ScalarMinimum golden_section_min(const std::function<double(double)>& f, double a, double b,
                                 double x_tol) {
    if (!(a <= b)) throw std::invalid_argument("golden_section_min: bad bracket");
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > x_tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

ScalarMinimum scan_then_golden_min(const std::function<double(double)>& f, double a, double b,
                                   int scan_points, double x_tol) {
    if (scan_points < 2) throw std::invalid_argument("scan_then_golden_min: need >= 2 points");
    const double h = (b - a) / (scan_points - 1);
    double best_x = a;
    double best_f = f(a);
    for (int i = 1; i < scan_points; ++i) {
        const double x = a + h * i;
        const double fx = f(x);
        if (fx < best_f) {
            best_f = fx;
            best_x = x;
        }
    }
    const double lo = std::max(a, best_x - h);
    const double hi = std::min(b, best_x + h);
    ScalarMinimum refined = golden_section_min(f, lo, hi, x_tol);
    if (refined.value <= best_f) return refined;
    return {best_x, best_f};
}

}  // namespace spinq

// Quantum uncertainty constants C_J and the minimum-variance frontier curves
// F_J, both computed by exact variational duality on tiny tridiagonal
// Hamiltonians rather than transcribed from anywhere.
#pragma once

#include <map>
#include <vector>

#include "spinq/spin_ops.hpp"

namespace spinq {

// C_J = min over pure spin-j states of  Var(J^X) + Var(J^Y).
struct CJValue {
    SpinMagnitude j;
    UnitConvention convention;
    double value;
    double dual_gap;  // primal-at-optimum minus dual; certified >= 0 and tiny
};

// Legendre dual: C_J = min_alpha [ lambda_min(J(J+1)I - (J^Z)^2 - alpha J^X)
// + alpha^2/4 ], exact because the objective is a concave function of the
// state's first moments. The 1-D minimization is a scan plus golden-section.
CJValue compute_cj(SpinMagnitude j, UnitConvention convention);

// Frontier of minimal Var(J^Z)/J at fixed <J^X>/J for one spin magnitude.
// Convex, non-decreasing, F(0) = 0, F(1) = 1/2.
struct FJCurve {
    SpinMagnitude j;
    std::vector<double> x;  // strictly increasing, x[0] = 0, x.back() = 1
    std::vector<double> y;
};

// Traces the frontier from ground states of (J^Z - lambda)^2 - mu J^X with
// the inner lambda minimization done per mu (the lambda = 0 section alone
// misses the symmetry-broken branch that carries the whole J = 1/2 curve).
FJCurve compute_fj_curve(SpinMagnitude j, std::size_t n_samples = 1001);

// Separable (J = 1/2 blocks) baseline y = x^2 / (4 j).
double quadratic_separable_bound(SpinMagnitude j, double x);

// Piecewise-linear interpolation through the frontier samples. Chords of a
// convex curve lie above it, so this value is >= the true F_J.
double fj_lookup(const FJCurve& curve, double x);

// Certified lower bound on F_J at x, from the neighbouring secants extended
// into the query interval (secants of a convex curve lie below it outside
// their own interval) and monotonicity. Violation tests use this so a
// reported violation of y < F_J can never be a lookup artifact.
double fj_lookup_lower(const FJCurve& curve, double x);

// Curves keyed by 2j.
using FJCurveBank = std::map<int, FJCurve>;

FJCurveBank build_fj_bank(int max_two_j, std::size_t n_samples = 1001);

}  // namespace spinq

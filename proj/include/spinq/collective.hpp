// Collective-spin criteria: the spin squeezing parameter and pairwise
// entanglement test, Sorensen-Molmer minimum-variance bounds with the depth
// of entanglement they certify, the group-steering variant, and EPR
// inference-variance criteria. Axis roles are explicit parameters because the
// mean-spin and squeezed directions swap between use cases.
#pragma once

#include <vector>

#include "spinq/bounds.hpp"
#include "spinq/criterion.hpp"
#include "spinq/states.hpp"

namespace spinq {

enum class Axis { X, Y, Z };

double moment_mean(const CollectiveMoments& m, Axis axis);
double moment_variance(const CollectiveMoments& m, Axis axis);

// xi = sqrt(N) * std(squeezed) / |mean(mean_axis)|; xi < 1 certifies
// entanglement among spin-1/2 constituents. Throws when the mean spin
// vanishes (|mean| <= 1e-9 N) and xi is undefined.
double xi_parameter(const CollectiveMoments& m, Axis squeezed_axis, Axis mean_axis);

// Spin squeezing entanglement criterion for spin-1/2 constituents:
// separability forces Var(squeezed) >= |mean|^2 / N. Violation (lhs < rhs)
// certifies entanglement; ratio is stored as rhs/lhs so > 1 means violation.
CriterionResult pairwise_entanglement_test(const CollectiveMoments& m, Axis squeezed_axis,
                                           Axis mean_axis);

// Separable bound J_tot * F_{J0}(|mean| / J_tot) with the conservative
// (lower-chord) curve lookup, so violations are never lookup artifacts.
double sm_bound(double j_tot, SpinMagnitude j0, double mean_x, const FJCurveBank& bank);

// Same bound applied to the steered group's mean; violation of
// Var >= bound demonstrates EPR steering of group B.
double steering_bound(double j_tot, SpinMagnitude j0, double mean_z_of_b,
                      const FJCurveBank& bank);

// Certified minimum entangled-block size from the nested F_{J0} bounds:
// violating F_{J0} forces some block to carry spin J > J0, i.e. more than
// 2 J0 particles, so the certificate is n0 = 2 J0 + 1. Curves are scanned in
// ascending J0; the first non-violated curve stops the search (nesting).
// The certificate is limited by the largest curve in the bank.
struct DepthResult {
    std::size_t n0 = 1;
    std::vector<double> violated_curves;  // J0 values whose bound is beaten
};
DepthResult depth_of_entanglement(const CollectiveMoments& m, const FJCurveBank& bank);

// Collective moments of an N-qubit pure state (Standard spin-1/2 operators),
// with j_tot set to the maximal N/2. Generic dense path, N <= 12.
CollectiveMoments collective_moments_from_qubits(const PureState& state);

// Average conditional variances V(X|O_B) and V(P|Q_B): the B observable is
// measured, and the variance of the A observable is averaged over the
// outcome-conditioned states. A and B must act on disjoint site subsets;
// this is checked through commutation of the operators.
struct InferenceVariances {
    double v_x_given_b;
    double v_p_given_b;
};
InferenceVariances inference_variances(const PureState& state, const CompositeOperator& obs_a_x,
                                       const CompositeOperator& obs_a_p,
                                       const CompositeOperator& obs_b_1,
                                       const CompositeOperator& obs_b_2);

// EPR paradox when the product of inference variances drops below the
// uncertainty bound supplied by the caller. ratio = rhs/lhs (> 1 = paradox).
CriterionResult epr_paradox_test(const InferenceVariances& iv, double bound);

}  // namespace spinq

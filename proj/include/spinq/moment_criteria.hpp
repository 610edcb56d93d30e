// Moment-based nonlocality criteria: the MABK family on the complex moment
// Pi_N = <prod_k (J_k^X + i s_k J_k^Y)> for qubits (Pauli convention), the
// CHSH inequality, and the C_J-based inequalities for arbitrary spin
// (Standard convention). Mixing conventions across the two families is
// rejected at the interface.
#pragma once

#include <cstddef>
#include <vector>

#include "spinq/bounds.hpp"
#include "spinq/criterion.hpp"
#include "spinq/states.hpp"

namespace spinq {

// Per-site rotation angle theta_k and ladder sign s_k.
struct MeasurementSettings {
    std::vector<double> angles;
    std::vector<int> signs;  // +1 or -1 per site
};

MeasurementSettings uniform_settings(std::size_t n_sites, double theta0 = 0.0,
                                     double delta = 0.0, int sign = +1);

// Number of quantum ("trusted") sites; they occupy sites 1..T by convention.
struct HybridPartition {
    std::size_t t;
};

enum class MabkForm { Single, Sum };

enum class GenuineKind { SvetlichnySum, GenuineEntSingle, GenuineEntSum };

// --- MABK family (qubits, Pauli outcomes +-1) ------------------------------

// <prod_k (J_k^{theta_k,X} + i s_k J_k^{theta_k,Y})> via statevector
// application of the rotated ladder matrices; N <= 12.
Complex mabk_moment(const PureState& state, const MeasurementSettings& settings);

// Closed form of the same moment for the GHZ state: 2^{N-1} e^{-i sum s_k
// theta_k} when all signs agree, 0 otherwise. Valid for any N.
Complex ghz_mabk_moment_closed(std::size_t n_sites, const MeasurementSettings& settings);

// Numerically optimized uniform-ladder angles theta_k = theta0 + k delta
// maximizing Re Pi (Single) or Re Pi + Im Pi (Sum) on the GHZ state.
MeasurementSettings optimal_mabk_settings(std::size_t n_sites, MabkForm form);

// LHS-model threshold: Single -> 2^{(n-t)/2}, Sum -> 2^{(n-t+1)/2} for t >= 1.
// At t = 0 the pure-LHV bounds apply: Single requires odd n (2^{(n-1)/2}),
// Sum requires even n (2^{n/2}).
double mabk_threshold(std::size_t n, std::size_t t, MabkForm form);

// Genuine-multipartite thresholds: SvetlichnySum -> 2^{n-1},
// GenuineEntSingle -> 2^{n-2}, GenuineEntSum -> 2^{n-3/2}.
double genuine_threshold(std::size_t n, GenuineKind kind);

// Verdict by partition: t = 0 Bell nonlocality, t = N entanglement,
// 0 < t < N EPR steering.
CriterionResult evaluate_mabk(const PureState& state, const MeasurementSettings& settings,
                              HybridPartition partition, MabkForm form);

CriterionResult evaluate_genuine(const PureState& state, const MeasurementSettings& settings,
                                 GenuineKind kind);

// --- CHSH -------------------------------------------------------------------

// B = E(theta,phi) - E(theta,phi') + E(theta',phi) + E(theta',phi') with
// E(a,b) = -<J_A^a J_B^b> in Pauli units. The minus sign is the fixed
// convention that makes the singlet give E(theta,phi) = cos(theta - phi).
double chsh_value(const PureState& state, double theta, double theta_prime, double phi,
                  double phi_prime);

// --- C_J (CFRD-type) family, arbitrary spin, Standard outcomes --------------

// |<prod_k (J_k^{theta_k,X} + i s_k J_k^{theta_k,Y})>|^2, generic tensor path.
double cfrd_lhs(const PureState& state, const MeasurementSettings& settings);

// <prod_{k<=T} (J(J+1) - (J_k^Z)^2 - C_J) prod_{k>T} (J(J+1) - (J_k^Z)^2)>,
// a diagonal expectation. cj must match the site spin, Standard convention.
double cfrd_rhs(const PureState& state, HybridPartition partition, const CJValue& cj);

CriterionResult evaluate_cfrd(const PureState& state, const MeasurementSettings& settings,
                              HybridPartition partition, const CJValue& cj);

// Closed forms on the correlated family (valid for arbitrary N; both sides
// collapse to sums over m):
//   lhs = |(1/n) sum_m r_m r_{m+1} c_m^N|^2,  c_m = sqrt(J(J+1) - m(m+1)),
//   rhs = (1/n) sum_m r_m^2 (g_m - C)^T g_m^{N-T},  g_m = J(J+1) - m^2.
double cfrd_lhs_closed(const CorrelatedStateSpec& spec);
double cfrd_rhs_closed(const CorrelatedStateSpec& spec, HybridPartition partition,
                       const CJValue& cj);
CriterionResult evaluate_cfrd_closed(const CorrelatedStateSpec& spec, HybridPartition partition,
                                     const CJValue& cj);

// Maximizes L/R of the closed-form C_J criterion over symmetric real
// amplitudes r_m = r_{-m} (r_J fixed to 1; the ratio is scale invariant).
// Coordinate-wise golden-section with random restarts. The settings are all
// raising with theta = 0; the ratio does not depend on the common angle.
struct OptimizedCriterion {
    std::vector<double> r;  // full amplitude vector, r[0] = r_{-J}
    MeasurementSettings settings;
    CriterionResult result;
};
OptimizedCriterion optimize_amplitudes(std::size_t n_sites, SpinMagnitude j,
                                       HybridPartition partition, const CJValue& cj,
                                       std::uint64_t seed = 12345);

}  // namespace spinq

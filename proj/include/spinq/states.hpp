// Constructors for the quantum states under study: the singlet, GHZ states,
// the correlated spin-J superposition family, and the two-mode BEC ground
// state with its Schwinger-representation collective moments.
#pragma once

#include <vector>

#include "spinq/spin_ops.hpp"
#include "spinq/state.hpp"

namespace spinq {

// (|up down> - |down up>)/sqrt(2), two qubits.
PureState singlet_state();

// (|0...0> + |1...1>)/sqrt(2), n_sites qubits, 2 <= n_sites <= 12.
PureState ghz_state(std::size_t n_sites);

// Correlated spin-J superposition sum_m r_m |J,m>^{x N} / sqrt(sum r_m^2).
// Amplitudes are indexed m = -J..+J and accepted unnormalized.
struct CorrelatedStateSpec {
    std::size_t n_sites;
    SpinMagnitude j;
    std::vector<double> r;  // length 2j+1, r[0] is r_{-J}
};
PureState correlated_state(const CorrelatedStateSpec& spec);

// Two-mode Bose-Hubbard parameters. kappa is the inter-mode conversion rate,
// g the self-interaction; both in the same (arbitrary) energy unit.
struct BECParams {
    std::size_t n_atoms;
    double kappa;
    double g;
};

// Fixed-N Fock sector |n_a, N - n_a>, n_a = 0..N:
//   diagonal (g/2)[n_a(n_a-1) + (N-n_a)(N-n_a-1)],
//   off-diagonal kappa sqrt((n_a+1)(N-n_a)).
SymTridiagonal bec_hamiltonian(const BECParams& p);

struct TwoModeState {
    std::vector<Complex> amplitudes;  // over |n_a, N-n_a>, length n_atoms+1
    std::size_t n_atoms;
};

// Lowest eigenvector of bec_hamiltonian; global phase fixed so the first
// largest-magnitude amplitude is real positive.
TwoModeState bec_ground_state(const BECParams& p);

// Means and variances of the collective spin of N spin-1/2 constituents.
struct CollectiveMoments {
    double mean_x = 0.0, mean_y = 0.0, mean_z = 0.0;
    double var_x = 0.0, var_y = 0.0, var_z = 0.0;
    std::size_t n_atoms = 0;
    double j_tot = 0.0;  // N/2 when the total spin is maximal
};

// Schwinger-representation moments J^Z = (a^+a - b^+b)/2, etc. Also fills
// j_tot from <J^2> = J(J+1); for a fixed-N two-mode state this is N/2.
CollectiveMoments schwinger_moments(const TwoModeState& s);

}  // namespace spinq

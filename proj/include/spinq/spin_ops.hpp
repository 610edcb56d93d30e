// Spin-J operator algebra for a single site.
//
// Basis ordering within a site: index i corresponds to m = J - i, so index 0
// is the highest-weight state (spin "up"). In the Pauli convention (qubits
// only) the outcomes +-1/2 are rescaled to +-1, i.e. the operators are twice
// the standard spin-1/2 ones and [jx, jy] = 2i jz.
#pragma once

#include <stdexcept>

#include "spinq/linalg.hpp"

namespace spinq {

class SpinMagnitude {
public:
    // j must be a non-negative half-integer (1/2, 1, 3/2, ...).
    static SpinMagnitude from_j(double j);
    static SpinMagnitude from_two_j(int two_j);

    double j() const { return 0.5 * two_j_; }
    int two_j() const { return two_j_; }
    std::size_t dimension() const { return static_cast<std::size_t>(two_j_) + 1; }
    bool is_half() const { return two_j_ == 1; }

    // m value of basis index i (index 0 is m = +J).
    double m_of_index(std::size_t i) const { return j() - static_cast<double>(i); }

    friend bool operator==(SpinMagnitude a, SpinMagnitude b) { return a.two_j_ == b.two_j_; }

private:
    explicit SpinMagnitude(int two_j) : two_j_(two_j) {}
    int two_j_;
};

enum class UnitConvention { Standard, Pauli };

struct SpinOperatorSet {
    ComplexMatrix jx, jy, jz;
    ComplexMatrix jplus, jminus;
    ComplexMatrix jsq;
    SpinMagnitude magnitude;
    UnitConvention convention;
};

// Builds jx, jy, jz, j+-, j^2 from the ladder elements
// <m+1|J+|m> = sqrt(J(J+1) - m(m+1)). Pauli is legal only for j = 1/2.
SpinOperatorSet make_spin_operators(SpinMagnitude j, UnitConvention convention);

// cos(theta) jx + sin(theta) jy.
ComplexMatrix rotated_component(const SpinOperatorSet& ops, double theta);

}  // namespace spinq

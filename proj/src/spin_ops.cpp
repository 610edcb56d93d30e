#include "spinq/spin_ops.hpp"

#include <cmath>

namespace spinq {

SpinMagnitude SpinMagnitude::from_j(double j) {
    const double two_j = 2.0 * j;
    const int rounded = static_cast<int>(std::lround(two_j));
    if (rounded < 1 || std::abs(two_j - rounded) > 1e-12)
        throw std::invalid_argument("SpinMagnitude: j must be a positive half-integer");
    return SpinMagnitude(rounded);
}

SpinMagnitude SpinMagnitude::from_two_j(int two_j) {
    if (two_j < 1) throw std::invalid_argument("SpinMagnitude: 2j must be >= 1");
    return SpinMagnitude(two_j);
}

SpinOperatorSet make_spin_operators(SpinMagnitude mag, UnitConvention convention) {
    if (convention == UnitConvention::Pauli && !mag.is_half())
        throw std::invalid_argument("make_spin_operators: Pauli convention requires j = 1/2");

    const std::size_t d = mag.dimension();
    const double j = mag.j();
    const double scale = convention == UnitConvention::Pauli ? 2.0 : 1.0;

    ComplexMatrix jz(d, d), jplus_raw(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        const double m = mag.m_of_index(i);
        jz(i, i) = scale * m;
        if (i > 0) {
            // J+ raises m: index i -> i-1.
            jplus_raw(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
        }
    }

    ComplexMatrix jx(d, d), jy(d, d);
    const Complex half_i(0.0, 0.5);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            const Complex up = jplus_raw(r, c);
            const Complex down = std::conj(jplus_raw(c, r));  // J- = (J+)^dagger
            jx(r, c) = scale * 0.5 * (up + down);
            jy(r, c) = scale * (-half_i) * (up - down);
        }
    }

    SpinOperatorSet ops{jx,
                        jy,
                        jz,
                        ComplexMatrix(d, d),
                        ComplexMatrix(d, d),
                        ComplexMatrix(d, d),
                        mag,
                        convention};
    const Complex i1(0.0, 1.0);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            ops.jplus(r, c) = jx(r, c) + i1 * jy(r, c);
            ops.jminus(r, c) = jx(r, c) - i1 * jy(r, c);
        }
    }
    ops.jsq = jx * jx + jy * jy + jz * jz;
    return ops;
}

ComplexMatrix rotated_component(const SpinOperatorSet& ops, double theta) {
    return Complex(std::cos(theta)) * ops.jx + Complex(std::sin(theta)) * ops.jy;
}

}  // namespace spinq

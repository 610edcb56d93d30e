// Deterministic random sources. Gaussians come from an explicit Box-Muller
// transform on the raw 64-bit stream, so identical seeds give bit-identical
// output on every platform and thread count (std::normal_distribution does
// not guarantee that).
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "spinq/linalg.hpp"

namespace spinq {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Derives an independent stream, e.g. per sample block.
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream_id),
                          static_cast<std::uint32_t>(stream_id >> 32)};
        Rng r(0);
        r.engine_.seed(seq);
        return r;
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        constexpr double kTwoPi = 6.283185307179586476925286766559;
        spare_ = r * std::sin(kTwoPi * u2);
        have_spare_ = true;
        return r * std::cos(kTwoPi * u2);
    }

    // Haar-random pure state of dimension d (normalized complex Gaussian).
    std::vector<Complex> haar_state(std::size_t d) {
        std::vector<Complex> v(d);
        for (Complex& z : v) z = Complex(normal(), normal());
        const double nrm = vector_norm(v);
        for (Complex& z : v) z /= nrm;
        return v;
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace spinq

#include "spinq/kernels.hpp"

#include <stdexcept>

#include "spinq/linalg.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spinq::kernels {

bool parallel_enabled() {
#ifdef _OPENMP
    return omp_get_max_threads() > 1;
#else
    return false;
#endif
}

std::vector<Complex> matvec(const ComplexMatrix& m, std::span<const Complex> v, Exec exec) {
    if (m.cols() != v.size()) throw std::invalid_argument("matvec: shape mismatch");
    const std::size_t rows = m.rows();
    std::vector<Complex> out(rows);
    if (exec == Exec::Serial || rows * m.cols() < 1u << 14) {
        for (std::size_t r = 0; r < rows; ++r) {
            Complex acc = 0.0;
            const auto row = m.row(r);
            for (std::size_t c = 0; c < v.size(); ++c) acc += row[c] * v[c];
            out[r] = acc;
        }
        return out;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long r = 0; r < static_cast<long long>(rows); ++r) {
        Complex acc = 0.0;
        const auto row = m.row(static_cast<std::size_t>(r));
        for (std::size_t c = 0; c < v.size(); ++c) acc += row[c] * v[c];
        out[static_cast<std::size_t>(r)] = acc;
    }
    return out;
}

namespace {

template <bool kParallel>
void apply_site_operator_impl(std::span<Complex> amps, const ComplexMatrix& op,
                              std::size_t stride) {
    const std::size_t d = op.rows();
    const std::size_t block = d * stride;
    const std::size_t n_blocks = amps.size() / block;
    Complex* data = amps.data();

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (kParallel && n_blocks * stride >= 1u << 12)
#endif
    for (long long b = 0; b < static_cast<long long>(n_blocks); ++b) {
        Complex* base = data + static_cast<std::size_t>(b) * block;
        std::vector<Complex> scratch(d);
        for (std::size_t inner = 0; inner < stride; ++inner) {
            for (std::size_t s = 0; s < d; ++s) {
                Complex acc = 0.0;
                for (std::size_t t = 0; t < d; ++t) acc += op(s, t) * base[t * stride + inner];
                scratch[s] = acc;
            }
            for (std::size_t s = 0; s < d; ++s) base[s * stride + inner] = scratch[s];
        }
    }
}

}  // namespace

void apply_site_operator(std::span<Complex> amps, const ComplexMatrix& op, std::size_t stride,
                         Exec exec) {
    if (op.rows() != op.cols()) throw std::invalid_argument("apply_site_operator: op not square");
    if (stride == 0 || op.rows() == 0 || amps.size() % (op.rows() * stride) != 0)
        throw std::invalid_argument("apply_site_operator: stride/dimension mismatch");
    if (exec == Exec::Serial)
        apply_site_operator_impl<false>(amps, op, stride);
    else
        apply_site_operator_impl<true>(amps, op, stride);
}

}  // namespace spinq::kernels

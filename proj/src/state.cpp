#include "spinq/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinq {

std::size_t composite_dimension(const std::vector<std::size_t>& site_dims) {
    if (site_dims.empty()) throw std::invalid_argument("composite_dimension: no sites");
    std::size_t d = 1;
    for (std::size_t dk : site_dims) {
        if (dk < 2) throw std::invalid_argument("composite_dimension: site dimension < 2");
        if (d > kMaxCompositeDim / dk + 1) throw std::invalid_argument("composite dimension cap exceeded");
        d *= dk;
    }
    if (d > kMaxCompositeDim)
        throw std::invalid_argument("composite dimension cap (" +
                                    std::to_string(kMaxCompositeDim) + ") exceeded");
    return d;
}

PureState::PureState(std::vector<Complex> amplitudes, std::vector<std::size_t> site_dims)
    : amps_(std::move(amplitudes)), dims_(std::move(site_dims)) {
    const std::size_t d = composite_dimension(dims_);
    if (amps_.size() != d)
        throw std::invalid_argument("PureState: amplitude length does not match site dims");
    const double nrm = vector_norm(amps_);
    if (nrm < 1e-12) throw std::invalid_argument("PureState: zero amplitude vector");
    for (Complex& z : amps_) z /= nrm;
}

CompositeOperator::CompositeOperator(ComplexMatrix m, std::vector<std::size_t> dims)
    : matrix(std::move(m)), site_dims(std::move(dims)) {
    const std::size_t d = composite_dimension(site_dims);
    if (matrix.rows() != d || matrix.cols() != d)
        throw std::invalid_argument("CompositeOperator: matrix size does not match site dims");
}

CompositeOperator embed_at_site(const ComplexMatrix& op, std::size_t site,
                                const std::vector<std::size_t>& site_dims) {
    if (site >= site_dims.size()) throw std::invalid_argument("embed_at_site: site out of range");
    if (op.rows() != op.cols() || op.rows() != site_dims[site])
        throw std::invalid_argument("embed_at_site: operator dimension mismatch");

    const std::size_t d = composite_dimension(site_dims);
    std::size_t stride = 1;
    for (std::size_t k = site + 1; k < site_dims.size(); ++k) stride *= site_dims[k];
    const std::size_t dk = site_dims[site];
    const std::size_t block = dk * stride;

    ComplexMatrix out(d, d);
    for (std::size_t base = 0; base < d; base += block) {
        for (std::size_t s = 0; s < dk; ++s) {
            for (std::size_t t = 0; t < dk; ++t) {
                const Complex v = op(s, t);
                if (v == Complex{}) continue;
                for (std::size_t inner = 0; inner < stride; ++inner)
                    out(base + s * stride + inner, base + t * stride + inner) = v;
            }
        }
    }
    return {std::move(out), site_dims};
}

Complex expectation(const PureState& state, const CompositeOperator& op) {
    if (state.site_dims() != op.site_dims)
        throw std::invalid_argument("expectation: state/operator site dims mismatch");
    const std::vector<Complex> image = matvec(op.matrix, state.amplitudes());
    return inner_product(state.amplitudes(), image);
}

double variance(const PureState& state, const CompositeOperator& op) {
    if (!op.matrix.is_hermitian(1e-10))
        throw std::invalid_argument("variance: operator not Hermitian");
    if (state.site_dims() != op.site_dims)
        throw std::invalid_argument("variance: state/operator site dims mismatch");
    const std::vector<Complex> image = matvec(op.matrix, state.amplitudes());
    const double second = std::real(inner_product(image, image));
    const double first = std::real(inner_product(state.amplitudes(), image));
    return second - first * first;
}

std::vector<Complex> apply_at_site(const PureState& state, const ComplexMatrix& op,
                                   std::size_t site, kernels::Exec exec) {
    const auto& dims = state.site_dims();
    if (site >= dims.size()) throw std::invalid_argument("apply_at_site: site out of range");
    if (op.rows() != op.cols() || op.rows() != dims[site])
        throw std::invalid_argument("apply_at_site: operator dimension mismatch");
    std::size_t stride = 1;
    for (std::size_t k = site + 1; k < dims.size(); ++k) stride *= dims[k];
    std::vector<Complex> amps = state.amplitudes();
    kernels::apply_site_operator(amps, op, stride, exec);
    return amps;
}

}  // namespace spinq

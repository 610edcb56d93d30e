// Composite product-basis states and operators. Site 0 is the slowest-varying
// index of the amplitude vector. Generic dense evaluation is capped at
// composite dimension 4096; larger systems go through the closed-form paths.
#pragma once

#include <cstddef>
#include <vector>

#include "spinq/kernels.hpp"
#include "spinq/linalg.hpp"

namespace spinq {

inline constexpr std::size_t kMaxCompositeDim = 4096;

std::size_t composite_dimension(const std::vector<std::size_t>& site_dims);

class PureState {
public:
    // Normalizes the amplitudes; throws on zero vector or dimension mismatch.
    PureState(std::vector<Complex> amplitudes, std::vector<std::size_t> site_dims);

    const std::vector<Complex>& amplitudes() const { return amps_; }
    const std::vector<std::size_t>& site_dims() const { return dims_; }
    std::size_t dimension() const { return amps_.size(); }
    std::size_t n_sites() const { return dims_.size(); }

private:
    std::vector<Complex> amps_;
    std::vector<std::size_t> dims_;
};

struct CompositeOperator {
    ComplexMatrix matrix;
    std::vector<std::size_t> site_dims;

    CompositeOperator(ComplexMatrix m, std::vector<std::size_t> dims);
};

// Identity on every site except `site`, where `op` acts.
CompositeOperator embed_at_site(const ComplexMatrix& op, std::size_t site,
                                const std::vector<std::size_t>& site_dims);

Complex expectation(const PureState& state, const CompositeOperator& op);

// <op^2> - <op>^2 for Hermitian op; throws on a non-Hermitian input.
double variance(const PureState& state, const CompositeOperator& op);

// |psi> -> (op at site) |psi| without forming the composite matrix.
// Returns the (generally unnormalized) image amplitudes.
std::vector<Complex> apply_at_site(const PureState& state, const ComplexMatrix& op,
                                   std::size_t site,
                                   kernels::Exec exec = kernels::Exec::Parallel);

}  // namespace spinq

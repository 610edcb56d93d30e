// Data-parallel inner loops. Every kernel has a serial reference
// implementation and an OpenMP one; tests assert they agree and
// bench/bench_kernels times them against each other.
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace spinq {
class ComplexMatrix;
}

namespace spinq::kernels {

using Complex = std::complex<double>;

enum class Exec { Serial, Parallel };

// y = M x for a dense matrix.
std::vector<Complex> matvec(const ComplexMatrix& m, std::span<const Complex> v, Exec exec);

// Applies a d x d one-site operator to a statevector in place. `stride` is
// the product of the dimensions of all sites to the right of the target site
// (site 0 varies slowest).
void apply_site_operator(std::span<Complex> amps, const ComplexMatrix& op, std::size_t stride,
                         Exec exec);

// True when the Parallel path actually runs multi-threaded.
bool parallel_enabled();

}  // namespace spinq::kernels

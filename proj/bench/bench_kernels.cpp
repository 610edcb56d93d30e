// Times the OpenMP kernels against their serial reference implementations:
// statevector site-operator application, dense matvec, LHV corner
// enumeration, and the Haar random-state scan.
#include <chrono>
#include <cstdio>

#include "spinq/kernels.hpp"
#include "spinq/lhv_oracle.hpp"
#include "spinq/rng.hpp"
#include "spinq/spin_ops.hpp"
#include "spinq/state.hpp"

using namespace spinq;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_once(F&& f) {
    const auto t0 = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx\n", name,
                1e3 * serial, 1e3 * parallel, serial / parallel);
}

}  // namespace

int main() {
    std::printf("threads available: %s\n", kernels::parallel_enabled() ? "multiple" : "one");

    {
        constexpr std::size_t n_qubits = 12;
        Rng rng(7);
        std::vector<Complex> amps = rng.haar_state(std::size_t{1} << n_qubits);
        const SpinOperatorSet ops =
            make_spin_operators(SpinMagnitude::from_two_j(1), UnitConvention::Pauli);
        auto run = [&](kernels::Exec exec) {
            std::vector<Complex> work = amps;
            for (int rep = 0; rep < 200; ++rep)
                for (std::size_t site = 0; site < n_qubits; ++site)
                    kernels::apply_site_operator(work, ops.jx, std::size_t{1} << (n_qubits - 1 - site),
                                                 exec);
        };
        const double ts = time_once([&] { run(kernels::Exec::Serial); });
        const double tp = time_once([&] { run(kernels::Exec::Parallel); });
        report("apply_site_operator (N=12)", ts, tp);
    }

    {
        constexpr std::size_t dim = 2048;
        Rng rng(11);
        ComplexMatrix m(dim, dim);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) m(r, c) = Complex(rng.normal(), rng.normal());
        const std::vector<Complex> v = rng.haar_state(dim);
        std::vector<Complex> sink;
        auto run = [&](kernels::Exec exec) {
            for (int rep = 0; rep < 20; ++rep) sink = kernels::matvec(m, v, exec);
        };
        const double ts = time_once([&] { run(kernels::Exec::Serial); });
        const double tp = time_once([&] { run(kernels::Exec::Parallel); });
        report("matvec (D=2048)", ts, tp);
    }

    {
        auto run = [&](kernels::Exec exec) {
            corner_max(11, StrategyObjective::RePlusIm, exec);
        };
        const double ts = time_once([&] { run(kernels::Exec::Serial); });
        const double tp = time_once([&] { run(kernels::Exec::Parallel); });
        report("corner_max (n=11)", ts, tp);
    }

    {
        ScanOptions opt;
        opt.samples = 200000;
        auto run = [&](kernels::Exec exec) {
            opt.exec = exec;
            random_state_min_scan(SpinMagnitude::from_two_j(4), ScanObjective::SumVarXY, opt);
        };
        const double ts = time_once([&] { run(kernels::Exec::Serial); });
        const double tp = time_once([&] { run(kernels::Exec::Parallel); });
        report("haar scan (j=2, 2e5)", ts, tp);
    }
    return 0;
}

#include "spinq/lhv_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spinq/rng.hpp"

namespace spinq {

namespace {

constexpr double kPi = 3.14159265358979323846;

double objective_value(Complex z, StrategyObjective objective) {
    return objective == StrategyObjective::Re ? z.real() : z.real() + z.imag();
}

// Corner factors indexed by two bits: (mx, my) with mx = bit0 ? -1 : +1.
Complex corner_factor(unsigned code) {
    const double mx = (code & 1u) ? -1.0 : 1.0;
    const double my = (code & 2u) ? -1.0 : 1.0;
    return {mx, my};
}

Complex corner_product(std::uint64_t assignment, std::size_t n) {
    Complex z = 1.0;
    for (std::size_t k = 0; k < n; ++k) z *= corner_factor((assignment >> (2 * k)) & 3u);
    return z;
}

LocalStrategy corner_strategy(std::uint64_t assignment, std::size_t n) {
    LocalStrategy s;
    s.sites.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const unsigned code = (assignment >> (2 * k)) & 3u;
        s.sites[k] = {(code & 1u) ? -1.0 : 1.0, (code & 2u) ? -1.0 : 1.0};
    }
    return s;
}

struct BestAssignment {
    double value = -1e300;
    std::uint64_t assignment = 0;
};

BestAssignment best_corner(std::size_t n, StrategyObjective objective, kernels::Exec exec) {
    const std::uint64_t total = std::uint64_t{1} << (2 * n);

    // Fixed-size chunks reduced in order, so the result (including the
    // smallest-index tie break) never depends on the thread count.
    const std::uint64_t chunk = 1u << 12;
    const std::uint64_t n_chunks = (total + chunk - 1) / chunk;
    std::vector<BestAssignment> partial(n_chunks);

    const bool parallel = exec == kernels::Exec::Parallel && total >= (1u << 14);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (long long c = 0; c < static_cast<long long>(n_chunks); ++c) {
        BestAssignment local;
        const std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk;
        const std::uint64_t end = std::min(begin + chunk, total);
        for (std::uint64_t a = begin; a < end; ++a) {
            const double v = objective_value(corner_product(a, n), objective);
            if (v > local.value) {
                local.value = v;
                local.assignment = a;
            }
        }
        partial[static_cast<std::size_t>(c)] = local;
    }
    (void)parallel;

    BestAssignment best;
    for (const BestAssignment& p : partial)
        if (p.value > best.value + 1e-15) best = p;
    return best;
}

}  // namespace

double corner_analytic_bound(std::size_t n, StrategyObjective objective) {
    const double nn = static_cast<double>(n);
    if (n % 2 == 1)
        return objective == StrategyObjective::Re ? std::pow(2.0, 0.5 * (nn - 1.0))
                                                  : std::pow(2.0, 0.5 * (nn + 1.0));
    return std::pow(2.0, 0.5 * nn);
}

OracleReport corner_max(std::size_t n, StrategyObjective objective, kernels::Exec exec) {
    if (n < 1 || n > 12) throw std::invalid_argument("corner_max: n must be in [1, 12]");
    const BestAssignment best = best_corner(n, objective, exec);

    OracleReport report;
    report.objective = objective;
    report.n = n;
    report.t = 0;
    report.max_value = best.value;
    report.argmax = corner_strategy(best.assignment, n);
    report.analytic_bound = corner_analytic_bound(n, objective);
    report.agrees = std::abs(report.max_value - report.analytic_bound) <= 1e-6;
    return report;
}

OracleReport hybrid_max(std::size_t n, std::size_t t, StrategyObjective objective,
                        kernels::Exec exec) {
    if (n < 1 || n > 12) throw std::invalid_argument("hybrid_max: n must be in [1, 12]");
    if (t > n) throw std::invalid_argument("hybrid_max: t must be <= n");
    if (t == 0) return corner_max(n, objective, exec);

    const std::size_t n_corner = n - t;

    // Each disk site contributes at most unit modulus with a free phase, so
    // for a fixed corner product z the best value is |z| (Re) or sqrt(2)|z|
    // (Re+Im), taking the total phase to 0 or pi/4. Corners all have modulus
    // sqrt(2); enumeration confirms the magnitude is assignment-independent.
    double best_value = -1e300;
    std::uint64_t best_assignment = 0;
    if (n_corner == 0) {
        best_value = objective == StrategyObjective::Re ? 1.0 : std::sqrt(2.0);
    } else {
        const std::uint64_t total = std::uint64_t{1} << (2 * n_corner);
        const bool parallel = exec == kernels::Exec::Parallel && total >= (1u << 14);
        std::vector<double> values(total);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
        for (long long a = 0; a < static_cast<long long>(total); ++a) {
            const double mag = std::abs(corner_product(static_cast<std::uint64_t>(a), n_corner));
            values[static_cast<std::size_t>(a)] =
                objective == StrategyObjective::Re ? mag : std::sqrt(2.0) * mag;
        }
        (void)parallel;
        for (std::uint64_t a = 0; a < total; ++a) {
            if (values[a] > best_value + 1e-15) {
                best_value = values[a];
                best_assignment = a;
            }
        }
    }

    OracleReport report;
    report.objective = objective;
    report.n = n;
    report.t = t;
    report.max_value = best_value;

    // Assemble the maximizing strategy: disks aligned against the corner
    // product's phase, the target total phase being 0 (Re) or pi/4 (Re+Im).
    LocalStrategy strat;
    strat.n_disk = t;
    strat.sites.resize(n);
    const Complex zc = n_corner == 0 ? Complex{1.0, 0.0} : corner_product(best_assignment, n_corner);
    const double target = objective == StrategyObjective::Re ? 0.0 : 0.25 * kPi;
    const double phase0 = target - std::arg(zc);
    for (std::size_t k = 0; k < t; ++k) {
        const double phase = k == 0 ? phase0 : 0.0;
        strat.sites[k] = {std::cos(phase), std::sin(phase)};
    }
    for (std::size_t k = 0; k < n_corner; ++k) {
        const unsigned code = (best_assignment >> (2 * k)) & 3u;
        strat.sites[t + k] = {(code & 1u) ? -1.0 : 1.0, (code & 2u) ? -1.0 : 1.0};
    }
    report.argmax = std::move(strat);

    const double nt = static_cast<double>(n) - static_cast<double>(t);
    report.analytic_bound = objective == StrategyObjective::Re
                                ? std::pow(2.0, 0.5 * nt)
                                : std::pow(2.0, 0.5 * (nt + 1.0));
    report.agrees = std::abs(report.max_value - report.analytic_bound) <= 1e-6;
    return report;
}

OracleReport svetlichny_max(std::size_t n) {
    if (n < 2 || n > 8) throw std::invalid_argument("svetlichny_max: n must be in [2, 8]");

    double best = -1e300;
    for (std::size_t k = 1; k < n; ++k) {
        const double box_a = std::pow(2.0, static_cast<double>(k) - 1.0);
        const double box_b = std::pow(2.0, static_cast<double>(n - k) - 1.0);
        // Re+Im of the product is bilinear in (ReA, ImA) x (ReB, ImB), so the
        // maximum over the algebraic boxes sits at corners.
        for (int sa = 0; sa < 4; ++sa) {
            const double re_a = (sa & 1) ? -box_a : box_a;
            const double im_a = (sa & 2) ? -box_a : box_a;
            for (int sb = 0; sb < 4; ++sb) {
                const double re_b = (sb & 1) ? -box_b : box_b;
                const double im_b = (sb & 2) ? -box_b : box_b;
                const double v = (re_a * re_b - im_a * im_b) + (re_a * im_b + im_a * re_b);
                best = std::max(best, v);
            }
        }
    }

    OracleReport report;
    report.objective = StrategyObjective::RePlusIm;
    report.n = n;
    report.t = 0;
    report.max_value = best;
    report.analytic_bound = std::pow(2.0, static_cast<double>(n) - 1.0);
    report.agrees = std::abs(report.max_value - report.analytic_bound) <= 1e-6;
    return report;
}

namespace {

struct SiteMatrices {
    ComplexMatrix jx, jy;
    std::vector<double> jz_diag;
    std::vector<double> a_diag;  // jsq - jz^2
};

SiteMatrices site_matrices(SpinMagnitude j) {
    const SpinOperatorSet ops = make_spin_operators(j, UnitConvention::Standard);
    SiteMatrices s{ops.jx, ops.jy, {}, {}};
    const std::size_t d = j.dimension();
    s.jz_diag.resize(d);
    s.a_diag.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        s.jz_diag[i] = ops.jz(i, i).real();
        s.a_diag[i] = ops.jsq(i, i).real() - s.jz_diag[i] * s.jz_diag[i];
    }
    return s;
}

double sum_var_xy(const SiteMatrices& site, std::span<const Complex> psi) {
    double mean_a = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) mean_a += site.a_diag[i] * std::norm(psi[i]);
    const auto jx_psi = kernels::matvec(site.jx, psi, kernels::Exec::Serial);
    const auto jy_psi = kernels::matvec(site.jy, psi, kernels::Exec::Serial);
    const double mean_x = std::real(inner_product(psi, jx_psi));
    const double mean_y = std::real(inner_product(psi, jy_psi));
    return mean_a - mean_x * mean_x - mean_y * mean_y;
}

// Projected gradient descent on the primal objective, with backtracking.
// Touches only raw moment evaluations, never the dual formulation.
double refine_sum_var_xy(const SiteMatrices& site, std::vector<Complex>& psi) {
    const std::size_t d = psi.size();
    double f = sum_var_xy(site, psi);
    double step = 0.1;
    for (int it = 0; it < 600 && step > 1e-14; ++it) {
        const auto jx_psi = kernels::matvec(site.jx, psi, kernels::Exec::Serial);
        const auto jy_psi = kernels::matvec(site.jy, psi, kernels::Exec::Serial);
        const double mean_x = std::real(inner_product(psi, jx_psi));
        const double mean_y = std::real(inner_product(psi, jy_psi));

        // grad = (A - 2<Jx>Jx - 2<Jy>Jy) psi, projected off psi.
        std::vector<Complex> grad(d);
        for (std::size_t i = 0; i < d; ++i)
            grad[i] = site.a_diag[i] * psi[i] - 2.0 * mean_x * jx_psi[i] - 2.0 * mean_y * jy_psi[i];
        const Complex overlap = inner_product(psi, grad);
        for (std::size_t i = 0; i < d; ++i) grad[i] -= overlap * psi[i];

        double gnorm = vector_norm(grad);
        if (gnorm < 1e-15) break;

        bool moved = false;
        while (step > 1e-14) {
            std::vector<Complex> trial(d);
            for (std::size_t i = 0; i < d; ++i) trial[i] = psi[i] - step * grad[i];
            const double nrm = vector_norm(trial);
            for (Complex& z : trial) z /= nrm;
            const double ft = sum_var_xy(site, trial);
            if (ft < f) {
                psi = std::move(trial);
                f = ft;
                step *= 1.5;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    return f;
}

}  // namespace

ScanResult random_state_min_scan(SpinMagnitude j, ScanObjective objective,
                                 const ScanOptions& options) {
    if (options.samples < 1)
        throw std::invalid_argument("random_state_min_scan: need at least one sample");
    const SiteMatrices site = site_matrices(j);
    const std::size_t d = j.dimension();
    const double jval = j.j();

    constexpr std::size_t kBlock = 4096;
    const std::size_t n_blocks = (options.samples + kBlock - 1) / kBlock;

    constexpr std::size_t kBins = 101;
    struct BlockResult {
        double min_value = 1e300;
        std::vector<Complex> argmin;
        std::array<double, kBins> env_y;
        std::array<double, kBins> env_x;
        BlockResult() {
            env_y.fill(1e300);
            env_x.fill(0.0);
        }
    };
    std::vector<BlockResult> blocks(n_blocks);

    const bool parallel = options.exec == kernels::Exec::Parallel && n_blocks > 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (long long b = 0; b < static_cast<long long>(n_blocks); ++b) {
        Rng rng = Rng::stream(options.seed, static_cast<std::uint64_t>(b));
        BlockResult& out = blocks[static_cast<std::size_t>(b)];
        const std::size_t begin = static_cast<std::size_t>(b) * kBlock;
        const std::size_t count = std::min(kBlock, options.samples - begin);
        for (std::size_t s = 0; s < count; ++s) {
            const std::vector<Complex> psi = rng.haar_state(d);
            if (objective == ScanObjective::SumVarXY) {
                const double f = sum_var_xy(site, psi);
                if (f < out.min_value) {
                    out.min_value = f;
                    out.argmin = psi;
                }
            } else {
                const auto jx_psi = kernels::matvec(site.jx, psi, kernels::Exec::Serial);
                const double x = std::abs(std::real(inner_product(psi, jx_psi))) / jval;
                double mean_z = 0.0, mean_z2 = 0.0;
                for (std::size_t i = 0; i < d; ++i) {
                    const double p = std::norm(psi[i]);
                    mean_z += site.jz_diag[i] * p;
                    mean_z2 += site.jz_diag[i] * site.jz_diag[i] * p;
                }
                const double y = (mean_z2 - mean_z * mean_z) / jval;
                const std::size_t bin =
                    std::min(static_cast<std::size_t>(x * (kBins - 1) + 0.5), kBins - 1);
                if (y < out.env_y[bin]) {
                    out.env_y[bin] = y;
                    out.env_x[bin] = x;
                }
            }
        }
    }
    (void)parallel;

    ScanResult result;
    result.objective = objective;
    result.samples = options.samples;
    result.seed = options.seed;

    if (objective == ScanObjective::SumVarXY) {
        // Deterministic reduction in block order; ties keep the first block.
        result.min_value = 1e300;
        std::vector<std::pair<double, std::vector<Complex>>> ranked;
        for (const BlockResult& blk : blocks) {
            if (blk.argmin.empty()) continue;
            ranked.emplace_back(blk.min_value, blk.argmin);
            if (blk.min_value < result.min_value) {
                result.min_value = blk.min_value;
                result.argmin_state = blk.argmin;
            }
        }
        if (options.refine) {
            std::sort(ranked.begin(), ranked.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            const std::size_t n_polish = std::min<std::size_t>(ranked.size(), 8);
            for (std::size_t i = 0; i < n_polish; ++i) {
                std::vector<Complex> psi = ranked[i].second;
                const double f = refine_sum_var_xy(site, psi);
                if (f < result.min_value) {
                    result.min_value = f;
                    result.argmin_state = std::move(psi);
                }
            }
        }
    } else {
        std::array<double, kBins> env_y;
        std::array<double, kBins> env_x;
        env_y.fill(1e300);
        env_x.fill(0.0);
        for (const BlockResult& blk : blocks) {
            for (std::size_t bin = 0; bin < kBins; ++bin) {
                if (blk.env_y[bin] < env_y[bin]) {
                    env_y[bin] = blk.env_y[bin];
                    env_x[bin] = blk.env_x[bin];
                }
            }
        }
        for (std::size_t bin = 0; bin < kBins; ++bin)
            if (env_y[bin] < 1e299) result.envelope.push_back({env_x[bin], env_y[bin]});
    }
    return result;
}

}  // namespace spinq

// Brute-force certification of the classical bounds. Deterministic local
// strategies suffice because the LHV average is a convex mixture, so the
// polytope vertices already achieve the extrema; corner sites are enumerated
// exhaustively while quantum-constrained ("disk") sites are handled
// analytically through their free phase. Enumeration and the random-state
// scans are the parallel kernels of this project; each has a serial twin.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "spinq/kernels.hpp"
#include "spinq/spin_ops.hpp"

namespace spinq {

enum class StrategyObjective { Re, RePlusIm };

// Per-site assignment (mx, my). Corner sites have mx, my in {-1, +1};
// disk sites satisfy mx^2 + my^2 <= 1.
struct SitePoint {
    double mx;
    double my;
};

struct LocalStrategy {
    std::vector<SitePoint> sites;  // disk sites first (sites 1..T), then corners
    std::size_t n_disk = 0;
};

struct OracleReport {
    StrategyObjective objective;
    std::size_t n = 0;
    std::size_t t = 0;
    double max_value = 0.0;
    LocalStrategy argmax;
    double analytic_bound = 0.0;
    bool agrees = false;
};

// Extremal value of the corner product: for odd n the product has magnitude
// 2^{n/2} at angle pi/4 to the real axis, for even n it aligns with an axis.
double corner_analytic_bound(std::size_t n, StrategyObjective objective);

// Exact maximum of Re (or Re+Im) of prod_k (mx_k + i my_k) over all 4^n
// corner assignments; n <= 12.
OracleReport corner_max(std::size_t n, StrategyObjective objective,
                        kernels::Exec exec = kernels::Exec::Parallel);

// Hybrid maximum with sites 1..t disk-constrained (unit modulus, free phase,
// aligned analytically against the corner product) and the rest corners;
// n <= 12, t <= n. Compared against 2^{(n-t)/2} / 2^{(n-t+1)/2} for t > 0
// and the corner bounds for t = 0.
OracleReport hybrid_max(std::size_t n, std::size_t t, StrategyObjective objective,
                        kernels::Exec exec = kernels::Exec::Parallel);

// Maximum of Re+Im over bipartitions k | n-k with each group's joint factor
// constrained only by its algebraic box |Re|, |Im| <= 2^{size-1}; bilinear,
// so box corners suffice. Checks against the genuine-nonlocality bound
// 2^{n-1}; n <= 8.
OracleReport svetlichny_max(std::size_t n);

// Objectives for the Haar-random state scan.
enum class ScanObjective {
    SumVarXY,     // minimum of Var(J^X) + Var(J^Y), the C_J oracle
    VarZatMeanX,  // lower envelope of (x, Var(J^Z)/J), the F_J oracle
};

struct ScanOptions {
    std::size_t samples = 100000;
    std::uint64_t seed = 12345;
    // Polishes the best Haar samples with projected gradient descent on the
    // primal objective (SumVarXY only). Independent of the Legendre dual used
    // in compute_cj; without it the raw sample minimum stalls far from C_J
    // for j >= 3/2 because near-minimal states occupy a vanishing volume.
    bool refine = false;
    kernels::Exec exec = kernels::Exec::Parallel;
};

struct ScanResult {
    ScanObjective objective;
    double min_value = 0.0;                                // SumVarXY
    std::vector<Complex> argmin_state;                     // SumVarXY
    std::vector<std::array<double, 2>> envelope;           // VarZatMeanX: (x, min y)
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

// Draws Haar-random spin-j states (Standard convention). Results are
// independent of the thread count: samples are split into fixed blocks with
// per-block derived seeds and reduced in block order.
ScanResult random_state_min_scan(SpinMagnitude j, ScanObjective objective,
                                 const ScanOptions& options = {});

}  // namespace spinq

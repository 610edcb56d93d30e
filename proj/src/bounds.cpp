#include "spinq/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "spinq/optimize.hpp"

namespace spinq {

namespace {

// Real symmetric tridiagonal pieces of the single-site operators: jz is
// diagonal, jx couples neighbouring m values with positive elements.
struct SiteTridiag {
    std::vector<double> jz_diag;
    std::vector<double> jx_off;
    std::vector<double> a_diag;  // jsq - jz^2, diagonal
};

SiteTridiag site_tridiag(const SpinOperatorSet& ops) {
    const std::size_t d = ops.magnitude.dimension();
    SiteTridiag t;
    t.jz_diag.resize(d);
    t.a_diag.resize(d);
    t.jx_off.resize(d - 1);
    for (std::size_t i = 0; i < d; ++i) {
        t.jz_diag[i] = ops.jz(i, i).real();
        t.a_diag[i] = ops.jsq(i, i).real() - t.jz_diag[i] * t.jz_diag[i];
        if (i + 1 < d) t.jx_off[i] = ops.jx(i, i + 1).real();
    }
    return t;
}

double lowest_eigenvalue(std::vector<double> diag, std::vector<double> off) {
    SymTridiagonal t{std::move(diag), std::move(off)};
    return tridiagonal_eigenvalues(t)[0];
}

}  // namespace

CJValue compute_cj(SpinMagnitude j, UnitConvention convention) {
    const SpinOperatorSet ops = make_spin_operators(j, convention);
    const SiteTridiag site = site_tridiag(ops);
    const std::size_t d = j.dimension();

    auto dual = [&](double alpha) {
        std::vector<double> off(d - 1);
        for (std::size_t i = 0; i + 1 < d; ++i) off[i] = -alpha * site.jx_off[i];
        return lowest_eigenvalue(site.a_diag, std::move(off)) + 0.25 * alpha * alpha;
    };

    const double scale = convention == UnitConvention::Pauli ? 2.0 : 1.0;
    const double alpha_max = scale * (4.0 * j.j() + 4.0);
    const ScalarMinimum best = scan_then_golden_min(dual, 0.0, alpha_max, 256, 1e-12);

    // Primal value at the dual-optimal ground state certifies the gap.
    SymTridiagonal h;
    h.diag = site.a_diag;
    h.off.resize(d - 1);
    for (std::size_t i = 0; i + 1 < d; ++i) h.off[i] = -best.x * site.jx_off[i];
    const TridiagonalGround ground = tridiagonal_ground_state(h);
    double mean_x = 0.0, mean_a = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        mean_a += site.a_diag[i] * ground.vector[i] * ground.vector[i];
        if (i + 1 < d) mean_x += 2.0 * site.jx_off[i] * ground.vector[i] * ground.vector[i + 1];
    }
    // Ground state of a real tridiagonal is real, so <J^Y> = 0 there.
    const double primal = mean_a - mean_x * mean_x;

    return {j, convention, best.value, std::max(primal - best.value, 0.0)};
}

namespace {

struct FrontierPoint {
    double x;
    double y;
};

// Ground state of (J^Z - lambda)^2 - mu J^X at the variance-optimal lambda.
FrontierPoint frontier_point(const SiteTridiag& site, double jval, double mu) {
    const std::size_t d = site.jz_diag.size();

    // Scaling by 1/max(1, mu) keeps the eigenproblem well conditioned at the
    // large mus that push x toward 1; the ground vector is unchanged.
    const double sc = 1.0 / std::max(1.0, mu);
    auto energy = [&](double lambda) {
        std::vector<double> diag(d);
        std::vector<double> off(d - 1);
        for (std::size_t i = 0; i < d; ++i) {
            const double z = site.jz_diag[i] - lambda;
            diag[i] = sc * z * z;
        }
        for (std::size_t i = 0; i + 1 < d; ++i) off[i] = -sc * mu * site.jx_off[i];
        return lowest_eigenvalue(std::move(diag), std::move(off));
    };

    // h(lambda) is even in lambda, so the search runs over [0, j], but it is
    // not unimodal there: at small mu there is one well near each m value.
    // Refine every local minimum of the scan and keep the best; settling for
    // a secondary well would hand back a state strictly above the frontier.
    constexpr int kScan = 97;
    const double h_step = jval / (kScan - 1);
    std::array<double, kScan> scan_vals;
    for (int i = 0; i < kScan; ++i) scan_vals[i] = energy(h_step * i);
    ScalarMinimum opt{0.0, scan_vals[0]};
    for (int i = 0; i < kScan; ++i) {
        const bool left_ok = i == 0 || scan_vals[i] <= scan_vals[i - 1];
        const bool right_ok = i == kScan - 1 || scan_vals[i] <= scan_vals[i + 1];
        if (!left_ok || !right_ok) continue;
        const double lo = std::max(0.0, h_step * (i - 1));
        const double hi = std::min(jval, h_step * (i + 1));
        const ScalarMinimum local = golden_section_min(energy, lo, hi, 1e-11);
        if (local.value < opt.value) opt = local;
    }

    SymTridiagonal h;
    h.diag.resize(d);
    h.off.resize(d - 1);
    for (std::size_t i = 0; i < d; ++i) {
        const double z = site.jz_diag[i] - opt.x;
        h.diag[i] = sc * z * z;
    }
    for (std::size_t i = 0; i + 1 < d; ++i) h.off[i] = -sc * mu * site.jx_off[i];
    const TridiagonalGround ground = tridiagonal_ground_state(h);

    double mean_x = 0.0, mean_z = 0.0, mean_z2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double p = ground.vector[i] * ground.vector[i];
        mean_z += site.jz_diag[i] * p;
        mean_z2 += site.jz_diag[i] * site.jz_diag[i] * p;
        if (i + 1 < d) mean_x += 2.0 * site.jx_off[i] * ground.vector[i] * ground.vector[i + 1];
    }
    const double x = std::min(std::abs(mean_x) / jval, 1.0);
    return {x, (mean_z2 - mean_z * mean_z) / jval};
}

}  // namespace

FJCurve compute_fj_curve(SpinMagnitude j, std::size_t n_samples) {
    if (n_samples < 2) throw std::invalid_argument("compute_fj_curve: n_samples must be >= 2");
    const SpinOperatorSet ops = make_spin_operators(j, UnitConvention::Standard);
    const SiteTridiag site = site_tridiag(ops);
    const double jval = j.j();

    struct Traced {
        double mu;
        FrontierPoint p;
    };

    // Geometric mu grid, dense near 0 where the curvature concentrates. The
    // top decades push <J^X>/J to within 1e-6 of 1 even at j = 4.
    const double mu_min = 1e-3;
    const double mu_max = 1e5 * std::max(1.0, jval * jval);
    std::vector<Traced> traced;
    traced.reserve(3 * n_samples);
    traced.push_back({0.0, {0.0, 0.0}});  // mu = 0: a J^Z eigenstate
    const double log_ratio = std::log(mu_max / mu_min);
    for (std::size_t k = 0; k + 1 < n_samples; ++k) {
        const double f = n_samples == 2 ? 1.0 : static_cast<double>(k) / (n_samples - 2);
        const double mu = mu_min * std::exp(log_ratio * f);
        traced.push_back({mu, frontier_point(site, jval, mu)});
    }

    // The geometric grid leaves x gaps (several mus can map to nearly the
    // same x); split the largest gaps at geometric-mean mus until the chord
    // lookup error is negligible everywhere.
    const double target_gap = std::max(1.5e-3, 2.0 / static_cast<double>(n_samples));
    const std::size_t max_points = 3 * n_samples;
    for (int round = 0; round < 64 && traced.size() < max_points; ++round) {
        std::sort(traced.begin(), traced.end(),
                  [](const Traced& a, const Traced& b) { return a.p.x < b.p.x; });
        std::vector<double> new_mus;
        for (std::size_t i = 0; i + 1 < traced.size(); ++i) {
            if (traced[i + 1].p.x - traced[i].p.x <= target_gap) continue;
            const double lo = traced[i].mu;
            const double hi = traced[i + 1].mu;
            new_mus.push_back(lo == 0.0 ? 0.5 * hi : std::sqrt(lo * hi));
        }
        if (new_mus.empty()) break;
        for (double mu : new_mus) {
            if (traced.size() >= max_points) break;
            traced.push_back({mu, frontier_point(site, jval, mu)});
        }
    }

    std::vector<FrontierPoint> pts;
    pts.reserve(traced.size() + 1);
    // The x = 1 endpoint is the coherent state along X: Var(J^Z) = J/2,
    // appended exactly; traced points inside its merge window are dropped.
    for (const Traced& t : traced)
        if (t.p.x < 1.0 - 1e-9) pts.push_back(t.p);
    pts.push_back({1.0, 0.5});

    std::sort(pts.begin(), pts.end(),
              [](const FrontierPoint& a, const FrontierPoint& b) { return a.x < b.x; });

    FJCurve curve{j, {}, {}};
    for (const FrontierPoint& p : pts) {
        if (!curve.x.empty() && p.x - curve.x.back() < 1e-12) {
            curve.y.back() = std::min(curve.y.back(), p.y);
            continue;
        }
        curve.x.push_back(p.x);
        curve.y.push_back(std::max(p.y, 0.0));
    }
    // Every point is an achievable state, so tiny eigensolver noise is the
    // only possible source of non-monotonicity; clamp it away.
    for (std::size_t i = 1; i < curve.y.size(); ++i)
        curve.y[i] = std::max(curve.y[i], curve.y[i - 1]);
    return curve;
}

double quadratic_separable_bound(SpinMagnitude j, double x) {
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("quadratic_separable_bound: x must be in [0, 1]");
    return x * x / (4.0 * j.j());
}

namespace {

std::size_t find_interval(const FJCurve& curve, double x) {
    if (curve.x.size() < 2) throw std::invalid_argument("fj_lookup: curve has too few samples");
    if (x < curve.x.front() - 1e-12 || x > curve.x.back() + 1e-12)
        throw std::invalid_argument("fj_lookup: x out of range");
    const auto it = std::upper_bound(curve.x.begin(), curve.x.end(), x);
    std::size_t i = static_cast<std::size_t>(it - curve.x.begin());
    if (i == 0) return 0;
    if (i >= curve.x.size()) return curve.x.size() - 2;
    return i - 1;
}

double secant_at(const FJCurve& c, std::size_t a, std::size_t b, double x) {
    const double slope = (c.y[b] - c.y[a]) / (c.x[b] - c.x[a]);
    return c.y[a] + slope * (x - c.x[a]);
}

}  // namespace

double fj_lookup(const FJCurve& curve, double x) {
    const std::size_t i = find_interval(curve, x);
    return secant_at(curve, i, i + 1, x);
}

double fj_lookup_lower(const FJCurve& curve, double x) {
    const std::size_t i = find_interval(curve, x);
    if (std::abs(x - curve.x[i]) < 1e-14) return curve.y[i];
    if (std::abs(x - curve.x[i + 1]) < 1e-14) return curve.y[i + 1];

    double lower = curve.y[i];  // monotone fallback
    if (i >= 1) lower = std::max(lower, secant_at(curve, i - 1, i, x));
    if (i + 2 < curve.x.size()) lower = std::max(lower, secant_at(curve, i + 1, i + 2, x));
    return std::max(lower, 0.0);
}

FJCurveBank build_fj_bank(int max_two_j, std::size_t n_samples) {
    if (max_two_j < 1) throw std::invalid_argument("build_fj_bank: max_two_j must be >= 1");
    FJCurveBank bank;
    for (int two_j = 1; two_j <= max_two_j; ++two_j)
        bank.emplace(two_j, compute_fj_curve(SpinMagnitude::from_two_j(two_j), n_samples));
    return bank;
}

}  // namespace spinq

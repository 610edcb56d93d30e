#include <doctest.h>

#include <cmath>

#include "spinq/bounds.hpp"
#include "spinq/lhv_oracle.hpp"

using namespace spinq;

namespace {

double strategy_objective(const LocalStrategy& s, StrategyObjective objective) {
    Complex z = 1.0;
    for (const SitePoint& p : s.sites) z *= Complex(p.mx, p.my);
    return objective == StrategyObjective::Re ? z.real() : z.real() + z.imag();
}

}  // namespace

TEST_SUITE_BEGIN("lhv-oracle");

TEST_CASE("corner extrema") {
    const OracleReport r3 = corner_max(3, StrategyObjective::Re);
    CHECK(r3.max_value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r3.agrees);

    const OracleReport r4 = corner_max(4, StrategyObjective::RePlusIm);
    CHECK(r4.max_value == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(r4.agrees);

    const OracleReport r1 = corner_max(1, StrategyObjective::Re);
    CHECK(r1.max_value == doctest::Approx(1.0));
    CHECK(r1.argmax.sites.size() == 1);

    // The reported maximizer reproduces the reported maximum and satisfies
    // the corner constraint.
    for (std::size_t n = 1; n <= 6; ++n) {
        for (const auto obj : {StrategyObjective::Re, StrategyObjective::RePlusIm}) {
            const OracleReport r = corner_max(n, obj);
            CHECK(strategy_objective(r.argmax, obj) == doctest::Approx(r.max_value).epsilon(1e-12));
            for (const SitePoint& p : r.argmax.sites) {
                CHECK(std::abs(p.mx) == 1.0);
                CHECK(std::abs(p.my) == 1.0);
            }
        }
    }
    CHECK_THROWS_AS(corner_max(13, StrategyObjective::Re), std::invalid_argument);
}

TEST_CASE("hybrid extrema") {
    CHECK(hybrid_max(3, 3, StrategyObjective::Re).max_value == doctest::Approx(1.0));
    CHECK(hybrid_max(3, 1, StrategyObjective::Re).max_value == doctest::Approx(2.0));

    // t = 0 falls back to the pure-LHV corner bounds (the Sum form threshold
    // 2^{(n-t+1)/2} applies only for t > 0).
    const OracleReport r20 = hybrid_max(2, 0, StrategyObjective::RePlusIm);
    CHECK(r20.max_value == doctest::Approx(2.0));
    CHECK(r20.analytic_bound == doctest::Approx(2.0));
    CHECK(r20.agrees);

    for (std::size_t n = 1; n <= 6; ++n) {
        for (std::size_t t = 1; t <= n; ++t) {
            for (const auto obj : {StrategyObjective::Re, StrategyObjective::RePlusIm}) {
                const OracleReport r = hybrid_max(n, t, obj);
                CHECK(r.agrees);
                CHECK(r.argmax.n_disk == t);
                // Disk constraint and strategy consistency.
                for (std::size_t k = 0; k < t; ++k) {
                    const SitePoint& p = r.argmax.sites[k];
                    CHECK(p.mx * p.mx + p.my * p.my <= 1.0 + 1e-12);
                }
                CHECK(strategy_objective(r.argmax, obj) ==
                      doctest::Approx(r.max_value).epsilon(1e-12));
            }
        }
    }
    CHECK_THROWS_AS(hybrid_max(3, 4, StrategyObjective::Re), std::invalid_argument);
}

TEST_CASE("analytic thresholds reproduced for n <= 8") {
    for (std::size_t n = 1; n <= 8; ++n) {
        for (const auto obj : {StrategyObjective::Re, StrategyObjective::RePlusIm}) {
            const OracleReport corner = corner_max(n, obj);
            CHECK(std::abs(corner.max_value - corner.analytic_bound) <= 1e-9);
            for (std::size_t t = 0; t <= n; ++t) {
                const OracleReport hybrid = hybrid_max(n, t, obj);
                CHECK(std::abs(hybrid.max_value - hybrid.analytic_bound) <= 1e-9);
            }
        }
    }
}

TEST_CASE("monotonicity in the number of trusted sites") {
    for (std::size_t n = 2; n <= 8; ++n) {
        for (const auto obj : {StrategyObjective::Re, StrategyObjective::RePlusIm}) {
            double prev = corner_max(n, obj).max_value;
            for (std::size_t t = 1; t <= n; ++t) {
                const double now = hybrid_max(n, t, obj).max_value;
                CHECK(now <= prev + 1e-12);
                prev = now;
            }
        }
    }
}

TEST_CASE("svetlichny bound") {
    CHECK(svetlichny_max(2).max_value == doctest::Approx(2.0));
    CHECK(svetlichny_max(3).max_value == doctest::Approx(4.0));
    for (std::size_t n = 2; n <= 8; ++n) {
        const OracleReport r = svetlichny_max(n);
        CHECK(r.agrees);
        // GHZ reaches 2^{n-1/2}: a sqrt(2) violation for every n.
        const double quantum = std::pow(2.0, double(n) - 0.5);
        CHECK(quantum / r.analytic_bound == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(svetlichny_max(9), std::invalid_argument);
}

TEST_CASE("serial and parallel enumeration agree exactly") {
    for (const auto obj : {StrategyObjective::Re, StrategyObjective::RePlusIm}) {
        const OracleReport s = corner_max(8, obj, kernels::Exec::Serial);
        const OracleReport p = corner_max(8, obj, kernels::Exec::Parallel);
        CHECK(s.max_value == p.max_value);
        for (std::size_t k = 0; k < s.argmax.sites.size(); ++k) {
            CHECK(s.argmax.sites[k].mx == p.argmax.sites[k].mx);
            CHECK(s.argmax.sites[k].my == p.argmax.sites[k].my);
        }
    }
}

TEST_CASE("random-state scan") {
    const auto half = SpinMagnitude::from_j(0.5);
    ScanOptions opt;
    opt.samples = 100000;

    const ScanResult scan = random_state_min_scan(half, ScanObjective::SumVarXY, opt);
    CHECK(scan.min_value >= 0.25 - 1e-9);
    CHECK(scan.min_value - 0.25 <= 1e-3);

    // Determinism: the same seed gives the same minimum bit for bit, and the
    // serial path matches the parallel one.
    const ScanResult again = random_state_min_scan(half, ScanObjective::SumVarXY, opt);
    CHECK(scan.min_value == again.min_value);
    ScanOptions serial = opt;
    serial.exec = kernels::Exec::Serial;
    CHECK(random_state_min_scan(half, ScanObjective::SumVarXY, serial).min_value ==
          scan.min_value);

    // Envelope mode: reaches y ~ 0 at x ~ 0 and never undercuts the frontier.
    const auto one = SpinMagnitude::from_j(1.0);
    ScanOptions env_opt;
    env_opt.samples = 50000;
    const ScanResult env = random_state_min_scan(one, ScanObjective::VarZatMeanX, env_opt);
    REQUIRE(!env.envelope.empty());
    CHECK(env.envelope.front()[0] <= 0.02);
    CHECK(env.envelope.front()[1] <= 0.05);
    const FJCurve curve = compute_fj_curve(one, 301);
    for (const auto& pt : env.envelope)
        CHECK(pt[1] >= fj_lookup_lower(curve, std::min(pt[0], 1.0)) - 1e-9);
}

TEST_SUITE_END();

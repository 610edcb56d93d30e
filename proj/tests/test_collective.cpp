#include <doctest.h>

#include <cmath>

#include "spinq/collective.hpp"
#include "spinq/rng.hpp"

using namespace spinq;

namespace {

PureState random_qubit_product(std::size_t n, Rng& rng) {
    std::vector<Complex> amps{1.0};
    for (std::size_t k = 0; k < n; ++k) {
        const std::vector<Complex> site = rng.haar_state(2);
        std::vector<Complex> next(amps.size() * 2);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            next[2 * i] = amps[i] * site[0];
            next[2 * i + 1] = amps[i] * site[1];
        }
        amps = std::move(next);
    }
    return {std::move(amps), std::vector<std::size_t>(n, 2)};
}

PureState random_block_product(std::size_t n_blocks, Rng& rng) {
    std::vector<Complex> amps{1.0};
    for (std::size_t b = 0; b < n_blocks; ++b) {
        const std::vector<Complex> block = rng.haar_state(4);
        std::vector<Complex> next(amps.size() * 4);
        for (std::size_t i = 0; i < amps.size(); ++i)
            for (std::size_t s = 0; s < 4; ++s) next[4 * i + s] = amps[i] * block[s];
        amps = std::move(next);
    }
    return {std::move(amps), std::vector<std::size_t>(2 * n_blocks, 2)};
}

CompositeOperator embed_obs(const ComplexMatrix& op, std::size_t site,
                            const std::vector<std::size_t>& dims) {
    return embed_at_site(op, site, dims);
}

}  // namespace

TEST_SUITE_BEGIN("collective");

TEST_CASE("xi parameter") {
    const CollectiveMoments coherent = schwinger_moments(bec_ground_state({100, 1.0, 0.0}));
    CHECK(xi_parameter(coherent, Axis::Z, Axis::X) == doctest::Approx(1.0).epsilon(1e-9));

    const CollectiveMoments squeezed = schwinger_moments(bec_ground_state({100, 1.0, 0.5}));
    CHECK(xi_parameter(squeezed, Axis::Z, Axis::X) < 1.0);
    CHECK(xi_parameter(squeezed, Axis::Z, Axis::X) >= 0.1 - 1e-9);  // 1/sqrt(N)

    CollectiveMoments zero_mean = coherent;
    zero_mean.mean_x = 0.0;
    CHECK_THROWS_AS(xi_parameter(zero_mean, Axis::Z, Axis::X), std::domain_error);
}

TEST_CASE("pairwise entanglement test") {
    // Coherent spin state sits exactly on the boundary: no violation.
    const CollectiveMoments coherent = schwinger_moments(bec_ground_state({60, 1.0, 0.0}));
    const CriterionResult boundary = pairwise_entanglement_test(coherent, Axis::Z, Axis::X);
    CHECK(boundary.lhs == doctest::Approx(boundary.rhs).epsilon(1e-9));
    CHECK(boundary.verdict == Verdict::None);

    const CollectiveMoments squeezed = schwinger_moments(bec_ground_state({60, 1.0, 1.0}));
    CHECK(pairwise_entanglement_test(squeezed, Axis::Z, Axis::X).verdict ==
          Verdict::Entanglement);

    CollectiveMoments zero_mean = squeezed;
    zero_mean.mean_x = 0.0;
    const CriterionResult res = pairwise_entanglement_test(zero_mean, Axis::Z, Axis::X);
    CHECK(res.rhs == 0.0);
    CHECK(res.verdict == Verdict::None);
}

TEST_CASE("xi < 1 iff the pairwise test fires") {
    for (const double ng : {0.0, 0.2, 1.0, 5.0, 40.0, 150.0}) {
        const CollectiveMoments m = schwinger_moments(bec_ground_state({50, 1.0, ng / 50.0}));
        const double xi = xi_parameter(m, Axis::Z, Axis::X);
        if (std::abs(xi - 1.0) < 1e-12) continue;  // boundary
        const bool fires =
            pairwise_entanglement_test(m, Axis::Z, Axis::X).verdict == Verdict::Entanglement;
        CHECK(fires == (xi < 1.0));
    }
}

TEST_CASE("sm bound") {
    const FJCurveBank bank = build_fj_bank(6, 301);
    const auto half = SpinMagnitude::from_j(0.5);

    // J0 = 1/2 is the separable quadratic baseline.
    for (const double x : {0.1, 0.4, 0.8}) {
        const double b = sm_bound(10.0, half, 10.0 * x, bank);
        CHECK(b <= 10.0 * 0.5 * x * x + 1e-10);       // conservative lookup
        CHECK(b >= 10.0 * 0.5 * x * x - 1e-3 * 10.0);  // but tight
    }
    CHECK(sm_bound(10.0, half, 0.0, bank) == doctest::Approx(0.0));
    CHECK(sm_bound(3.0, SpinMagnitude::from_j(3.0), 3.0, bank) ==
          doctest::Approx(1.5).epsilon(1e-9));  // j0 = j_tot, x = 1 -> j_tot/2

    CHECK_THROWS_AS(sm_bound(10.0, SpinMagnitude::from_j(7.0), 1.0, bank),
                    std::invalid_argument);
    CHECK_THROWS_AS(sm_bound(10.0, half, 11.0, bank), std::invalid_argument);

    // steering_bound is the same functional form on the steered group's mean.
    CHECK(steering_bound(10.0, half, 4.0, bank) == sm_bound(10.0, half, 4.0, bank));
    CHECK(steering_bound(10.0, half, 0.0, bank) == 0.0);
}

TEST_CASE("depth of entanglement") {
    const FJCurveBank bank = build_fj_bank(8, 301);

    // Coherent spin state: separable, no violation.
    const CollectiveMoments coherent = schwinger_moments(bec_ground_state({40, 1.0, 0.0}));
    const DepthResult d0 = depth_of_entanglement(coherent, bank);
    CHECK(d0.n0 == 1);
    CHECK(d0.violated_curves.empty());

    // Synthetic data exactly on the J0 = 1/2 curve: boundary is exclusive.
    const FJCurve& curve = bank.at(1);
    const std::size_t mid = curve.x.size() / 2;
    CollectiveMoments on_curve;
    on_curve.n_atoms = 20;
    on_curve.j_tot = 10.0;
    on_curve.mean_x = 10.0 * curve.x[mid];
    on_curve.var_z = 10.0 * curve.y[mid];
    CHECK(depth_of_entanglement(on_curve, bank).n0 == 1);

    // Deeply squeezed BEC ground states certify blocks larger than pairs,
    // monotonically in g.
    std::size_t prev = 1;
    for (const double ng : {2.0, 20.0, 200.0}) {
        const CollectiveMoments m = schwinger_moments(bec_ground_state({30, 1.0, ng / 30.0}));
        const DepthResult d = depth_of_entanglement(m, bank);
        CHECK(d.n0 >= prev);
        prev = d.n0;
        if (!d.violated_curves.empty()) {
            const double j0_max = d.violated_curves.back();
            CHECK(d.n0 == static_cast<std::size_t>(2.0 * j0_max + 1.0 + 0.5));
        }
    }
    CHECK(prev > 2);
}

TEST_CASE("depth soundness on product states") {
    Rng rng(43);
    const FJCurveBank bank = build_fj_bank(4, 301);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform(0.0, 7.0));
        const CollectiveMoments m = collective_moments_from_qubits(random_qubit_product(n, rng));
        CHECK(depth_of_entanglement(m, bank).n0 == 1);
        CHECK(pairwise_entanglement_test(m, Axis::Z, Axis::X).verdict == Verdict::None);
    }
}

TEST_CASE("depth soundness on 2-qubit block products") {
    Rng rng(47);
    const FJCurveBank bank = build_fj_bank(4, 301);
    for (int rep = 0; rep < 100; ++rep) {
        const CollectiveMoments m = collective_moments_from_qubits(random_block_product(4, rng));
        CHECK(depth_of_entanglement(m, bank).n0 <= 2);
    }
}

TEST_CASE("inference variances on the singlet") {
    const PureState s = singlet_state();
    const auto ops = make_spin_operators(SpinMagnitude::from_j(0.5), UnitConvention::Standard);
    const std::vector<std::size_t> dims{2, 2};

    for (const auto* axis : {&ops.jx, &ops.jy, &ops.jz}) {
        const InferenceVariances iv =
            inference_variances(s, embed_obs(*axis, 0, dims), embed_obs(*axis, 0, dims),
                                embed_obs(*axis, 1, dims), embed_obs(*axis, 1, dims));
        CHECK(iv.v_x_given_b <= 1e-12);  // perfectly anticorrelated
        CHECK(iv.v_p_given_b <= 1e-12);
    }

    // Matched X/Y axes give the EPR paradox against any positive bound.
    const InferenceVariances iv =
        inference_variances(s, embed_obs(ops.jx, 0, dims), embed_obs(ops.jy, 0, dims),
                            embed_obs(ops.jx, 1, dims), embed_obs(ops.jy, 1, dims));
    const CriterionResult res = epr_paradox_test(iv, 1.0 / 16.0);
    CHECK(res.verdict == Verdict::EPRSteering);
    CHECK(res.lhs <= 1e-12);
}

TEST_CASE("inference variances on product states") {
    Rng rng(53);
    const auto ops = make_spin_operators(SpinMagnitude::from_j(0.5), UnitConvention::Standard);
    const std::vector<std::size_t> dims{2, 2};
    for (int rep = 0; rep < 100; ++rep) {
        const PureState psi = random_qubit_product(2, rng);

        // Independence: conditioning on B does not change A's variance.
        const InferenceVariances iv =
            inference_variances(psi, embed_obs(ops.jx, 0, dims), embed_obs(ops.jy, 0, dims),
                                embed_obs(ops.jz, 1, dims), embed_obs(ops.jx, 1, dims));
        const double vx = variance(psi, embed_obs(ops.jx, 0, dims));
        const double vy = variance(psi, embed_obs(ops.jy, 0, dims));
        CHECK(iv.v_x_given_b == doctest::Approx(vx).epsilon(1e-9));
        CHECK(iv.v_p_given_b == doctest::Approx(vy).epsilon(1e-9));

        // Local uncertainty keeps product states clear of the paradox.
        const double mean_z = std::abs(std::real(expectation(psi, embed_obs(ops.jz, 0, dims))));
        if (mean_z < 1e-3) continue;  // bound degenerates
        const CriterionResult res = epr_paradox_test(iv, mean_z * mean_z / 4.0);
        CHECK(res.verdict == Verdict::None);
    }
}

TEST_CASE("inference variance errors") {
    const PureState s = singlet_state();
    const auto ops = make_spin_operators(SpinMagnitude::from_j(0.5), UnitConvention::Standard);
    const std::vector<std::size_t> dims{2, 2};
    // Overlapping supports: both observables on site 0 do not commute.
    CHECK_THROWS_AS(
        inference_variances(s, embed_obs(ops.jx, 0, dims), embed_obs(ops.jy, 0, dims),
                            embed_obs(ops.jz, 0, dims), embed_obs(ops.jz, 1, dims)),
        std::invalid_argument);
    CHECK_THROWS_AS(epr_paradox_test({0.1, 0.1}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(epr_paradox_test({-0.1, 0.1}, 1.0), std::invalid_argument);

    // One small and one huge variance with product >= bound: no paradox.
    const CriterionResult res = epr_paradox_test({1e-6, 4e6}, 1.0);
    CHECK(res.verdict == Verdict::None);
}

TEST_SUITE_END();

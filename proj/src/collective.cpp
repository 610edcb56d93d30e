#include "spinq/collective.hpp"

#include <cmath>
#include <stdexcept>

namespace spinq {

double moment_mean(const CollectiveMoments& m, Axis axis) {
    switch (axis) {
        case Axis::X: return m.mean_x;
        case Axis::Y: return m.mean_y;
        case Axis::Z: return m.mean_z;
    }
    throw std::invalid_argument("moment_mean: bad axis");
}

double moment_variance(const CollectiveMoments& m, Axis axis) {
    switch (axis) {
        case Axis::X: return m.var_x;
        case Axis::Y: return m.var_y;
        case Axis::Z: return m.var_z;
    }
    throw std::invalid_argument("moment_variance: bad axis");
}

double xi_parameter(const CollectiveMoments& m, Axis squeezed_axis, Axis mean_axis) {
    const double mean = moment_mean(m, mean_axis);
    if (std::abs(mean) <= 1e-9 * static_cast<double>(m.n_atoms))
        throw std::domain_error("xi_parameter: mean spin vanishes, xi undefined");
    const double var = std::max(moment_variance(m, squeezed_axis), 0.0);
    return std::sqrt(static_cast<double>(m.n_atoms)) * std::sqrt(var) / std::abs(mean);
}

CriterionResult pairwise_entanglement_test(const CollectiveMoments& m, Axis squeezed_axis,
                                           Axis mean_axis) {
    const double mean = moment_mean(m, mean_axis);
    CriterionResult res;
    res.lhs = moment_variance(m, squeezed_axis);
    res.rhs = mean * mean / static_cast<double>(m.n_atoms);
    res.ratio = res.lhs > 0.0 ? res.rhs / res.lhs : (res.rhs > 0.0 ? 1e300 : 0.0);
    res.verdict = res.lhs < res.rhs ? Verdict::Entanglement : Verdict::None;
    res.inequality_id = "spin-squeezing";
    return res;
}

double sm_bound(double j_tot, SpinMagnitude j0, double mean_x, const FJCurveBank& bank) {
    if (!(j_tot > 0.0)) throw std::invalid_argument("sm_bound: j_tot must be > 0");
    if (std::abs(mean_x) > j_tot * (1.0 + 1e-12))
        throw std::invalid_argument("sm_bound: |mean| exceeds j_tot");
    const auto it = bank.find(j0.two_j());
    if (it == bank.end())
        throw std::invalid_argument("sm_bound: curve for requested J0 missing from bank");
    const double x = std::min(std::abs(mean_x) / j_tot, 1.0);
    return j_tot * fj_lookup_lower(it->second, x);
}

double steering_bound(double j_tot, SpinMagnitude j0, double mean_z_of_b,
                      const FJCurveBank& bank) {
    return sm_bound(j_tot, j0, mean_z_of_b, bank);
}

DepthResult depth_of_entanglement(const CollectiveMoments& m, const FJCurveBank& bank) {
    DepthResult out;
    const double var = moment_variance(m, Axis::Z);
    // Violating F_{J0} with J0 >= j_tot would contradict the total spin; the
    // sweep also stops at the largest curve the bank holds.
    for (int two_j0 = 1; two_j0 <= 2 * m.j_tot - 1 + 1e-9; ++two_j0) {
        const auto it = bank.find(two_j0);
        if (it == bank.end()) break;
        const double bound =
            sm_bound(m.j_tot, SpinMagnitude::from_two_j(two_j0), m.mean_x, bank);
        if (var < bound) {
            out.violated_curves.push_back(0.5 * two_j0);
            out.n0 = static_cast<std::size_t>(two_j0) + 1;  // 2 J0 + 1
        } else {
            break;  // curves are nested; larger J0 cannot be violated either
        }
    }
    return out;
}

CollectiveMoments collective_moments_from_qubits(const PureState& state) {
    for (std::size_t d : state.site_dims())
        if (d != 2)
            throw std::invalid_argument("collective_moments_from_qubits: sites must be qubits");
    const std::size_t n = state.n_sites();
    const SpinOperatorSet ops =
        make_spin_operators(SpinMagnitude::from_two_j(1), UnitConvention::Standard);

    auto collective = [&](const ComplexMatrix& site_op) {
        ComplexMatrix total(state.dimension(), state.dimension());
        for (std::size_t k = 0; k < n; ++k)
            total += embed_at_site(site_op, k, state.site_dims()).matrix;
        return CompositeOperator{std::move(total), state.site_dims()};
    };

    const CompositeOperator jx = collective(ops.jx);
    const CompositeOperator jy = collective(ops.jy);
    const CompositeOperator jz = collective(ops.jz);

    CollectiveMoments m;
    m.n_atoms = n;
    m.j_tot = 0.5 * static_cast<double>(n);
    m.mean_x = std::real(expectation(state, jx));
    m.mean_y = std::real(expectation(state, jy));
    m.mean_z = std::real(expectation(state, jz));
    m.var_x = variance(state, jx);
    m.var_y = variance(state, jy);
    m.var_z = variance(state, jz);
    return m;
}

namespace {

double conditional_variance(const PureState& state, const CompositeOperator& obs_a,
                            const CompositeOperator& obs_b) {
    const double scale =
        std::max({obs_a.matrix.max_abs(), obs_b.matrix.max_abs(), 1.0});
    // Disjoint supports imply commuting observables; verify that.
    const ComplexMatrix comm = obs_a.matrix * obs_b.matrix - obs_b.matrix * obs_a.matrix;
    if (comm.max_abs() > 1e-10 * scale * scale)
        throw std::invalid_argument(
            "inference_variances: A and B observables do not commute (overlapping supports)");
    if (!obs_a.matrix.is_hermitian(1e-10) || !obs_b.matrix.is_hermitian(1e-10))
        throw std::invalid_argument("inference_variances: observables must be Hermitian");

    const EigenDecomposition eig = hermitian_eigensolve(obs_b.matrix);
    const std::size_t dim = state.dimension();

    // Coefficients of psi in the eigenbasis of O_B.
    std::vector<Complex> coeffs(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        Complex acc = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            acc += std::conj(eig.eigenvectors(i, k)) * state.amplitudes()[i];
        coeffs[k] = acc;
    }

    const double eig_scale = std::max(std::abs(eig.eigenvalues.front()),
                                      std::abs(eig.eigenvalues.back())) +
                             1.0;
    double total = 0.0;
    std::size_t k = 0;
    while (k < dim) {
        // Group eigenvalues into one measurement outcome.
        std::size_t end = k + 1;
        while (end < dim && eig.eigenvalues[end] - eig.eigenvalues[k] < 1e-9 * eig_scale) ++end;

        double prob = 0.0;
        std::vector<Complex> projected(dim, 0.0);
        for (std::size_t q = k; q < end; ++q) {
            prob += std::norm(coeffs[q]);
            for (std::size_t i = 0; i < dim; ++i)
                projected[i] += coeffs[q] * eig.eigenvectors(i, q);
        }
        if (prob > 1e-14) {
            const double inv = 1.0 / std::sqrt(prob);
            for (Complex& z : projected) z *= inv;
            const PureState conditioned(std::move(projected), state.site_dims());
            total += prob * variance(conditioned, obs_a);
        }
        k = end;
    }
    return total;
}

}  // namespace

InferenceVariances inference_variances(const PureState& state, const CompositeOperator& obs_a_x,
                                       const CompositeOperator& obs_a_p,
                                       const CompositeOperator& obs_b_1,
                                       const CompositeOperator& obs_b_2) {
    return {conditional_variance(state, obs_a_x, obs_b_1),
            conditional_variance(state, obs_a_p, obs_b_2)};
}

CriterionResult epr_paradox_test(const InferenceVariances& iv, double bound) {
    if (!(bound > 0.0)) throw std::invalid_argument("epr_paradox_test: bound must be > 0");
    if (iv.v_x_given_b < 0.0 || iv.v_p_given_b < 0.0)
        throw std::invalid_argument("epr_paradox_test: variances must be non-negative");
    CriterionResult res;
    res.lhs = iv.v_x_given_b * iv.v_p_given_b;
    res.rhs = bound;
    res.ratio = res.lhs > 0.0 ? res.rhs / res.lhs : 1e300;
    res.verdict = res.lhs < res.rhs ? Verdict::EPRSteering : Verdict::None;
    res.inequality_id = "epr-inference-product";
    return res;
}

}  // namespace spinq

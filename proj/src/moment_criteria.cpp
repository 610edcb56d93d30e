#include "spinq/moment_criteria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "spinq/optimize.hpp"
#include "spinq/rng.hpp"

namespace spinq {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_settings(const MeasurementSettings& s, std::size_t n_sites) {
    if (s.angles.size() != n_sites || s.signs.size() != n_sites)
        throw std::invalid_argument("MeasurementSettings: lengths must equal the site count");
    for (int sg : s.signs)
        if (sg != 1 && sg != -1)
            throw std::invalid_argument("MeasurementSettings: signs must be +1 or -1");
}

// Rotated ladder J^{theta,X} + i s J^{theta,Y}; the Y companion is the
// component at theta + pi/2.
ComplexMatrix rotated_ladder(const SpinOperatorSet& ops, double theta, int sign) {
    ComplexMatrix m = rotated_component(ops, theta);
    m += Complex(0.0, static_cast<double>(sign)) * rotated_component(ops, theta + 0.5 * kPi);
    return m;
}

Complex product_moment(const PureState& state, const MeasurementSettings& settings,
                       UnitConvention convention) {
    const auto& dims = state.site_dims();
    check_settings(settings, dims.size());
    for (std::size_t d : dims)
        if (d != dims[0])
            throw std::invalid_argument("product moment: all sites must share one spin");
    const SpinOperatorSet ops =
        make_spin_operators(SpinMagnitude::from_two_j(static_cast<int>(dims[0]) - 1), convention);

    std::vector<Complex> image = state.amplitudes();
    std::size_t stride = 1;
    for (std::size_t k = dims.size(); k-- > 0;) {
        const ComplexMatrix ladder = rotated_ladder(ops, settings.angles[k], settings.signs[k]);
        kernels::apply_site_operator(image, ladder, stride, kernels::Exec::Parallel);
        stride *= dims[k];
    }
    return inner_product(state.amplitudes(), image);
}

Verdict partition_verdict(std::size_t t, std::size_t n) {
    if (t == 0) return Verdict::BellNonlocality;
    if (t == n) return Verdict::Entanglement;
    return Verdict::EPRSteering;
}

}  // namespace

MeasurementSettings uniform_settings(std::size_t n_sites, double theta0, double delta, int sign) {
    MeasurementSettings s;
    s.angles.resize(n_sites);
    s.signs.assign(n_sites, sign);
    for (std::size_t k = 0; k < n_sites; ++k) s.angles[k] = theta0 + delta * k;
    return s;
}

Complex mabk_moment(const PureState& state, const MeasurementSettings& settings) {
    for (std::size_t d : state.site_dims())
        if (d != 2) throw std::invalid_argument("mabk_moment: all sites must be spin-1/2");
    return product_moment(state, settings, UnitConvention::Pauli);
}

Complex ghz_mabk_moment_closed(std::size_t n_sites, const MeasurementSettings& settings) {
    check_settings(settings, n_sites);
    if (n_sites < 2) throw std::invalid_argument("ghz_mabk_moment_closed: need n >= 2");
    const int first = settings.signs[0];
    for (int sg : settings.signs)
        if (sg != first) return 0.0;  // mixed ladders annihilate both GHZ branches
    double phase = 0.0;
    for (std::size_t k = 0; k < n_sites; ++k) phase += settings.signs[k] * settings.angles[k];
    return std::pow(2.0, static_cast<double>(n_sites) - 1.0) *
           Complex(std::cos(phase), -std::sin(phase));
}

MeasurementSettings optimal_mabk_settings(std::size_t n_sites, MabkForm form) {
    auto objective = [&](double theta0, double delta) {
        const Complex pi_n = ghz_mabk_moment_closed(n_sites, uniform_settings(n_sites, theta0, delta));
        return form == MabkForm::Single ? pi_n.real() : pi_n.real() + pi_n.imag();
    };

    double best_t0 = 0.0, best_d = 0.0, best = objective(0.0, 0.0);
    constexpr int kGrid = 97;
    for (int a = 0; a < kGrid; ++a) {
        const double t0 = -kPi + 2.0 * kPi * a / (kGrid - 1);
        for (int b = 0; b < kGrid; ++b) {
            const double dl = -kPi + 2.0 * kPi * b / (kGrid - 1);
            const double v = objective(t0, dl);
            if (v > best) {
                best = v;
                best_t0 = t0;
                best_d = dl;
            }
        }
    }
    for (int round = 0; round < 4; ++round) {
        auto neg_t0 = [&](double t0) { return -objective(t0, best_d); };
        best_t0 = golden_section_min(neg_t0, best_t0 - 0.1, best_t0 + 0.1, 1e-13).x;
        auto neg_d = [&](double dl) { return -objective(best_t0, dl); };
        best_d = golden_section_min(neg_d, best_d - 0.1, best_d + 0.1, 1e-13).x;
    }
    return uniform_settings(n_sites, best_t0, best_d);
}

double mabk_threshold(std::size_t n, std::size_t t, MabkForm form) {
    if (t > n) throw std::invalid_argument("mabk_threshold: t must be <= n");
    if (t == 0) {
        const bool odd = n % 2 == 1;
        if (form == MabkForm::Single) {
            if (!odd)
                throw std::invalid_argument("mabk_threshold: Single at t=0 is valid for odd n only");
            return std::pow(2.0, 0.5 * (static_cast<double>(n) - 1.0));
        }
        if (odd)
            throw std::invalid_argument("mabk_threshold: Sum at t=0 is valid for even n only");
        return std::pow(2.0, 0.5 * static_cast<double>(n));
    }
    const double nt = static_cast<double>(n) - static_cast<double>(t);
    return form == MabkForm::Single ? std::pow(2.0, 0.5 * nt) : std::pow(2.0, 0.5 * (nt + 1.0));
}

double genuine_threshold(std::size_t n, GenuineKind kind) {
    if (n < 2) throw std::invalid_argument("genuine_threshold: n must be >= 2");
    const double nn = static_cast<double>(n);
    switch (kind) {
        case GenuineKind::SvetlichnySum: return std::pow(2.0, nn - 1.0);
        case GenuineKind::GenuineEntSingle: return std::pow(2.0, nn - 2.0);
        case GenuineKind::GenuineEntSum: return std::pow(2.0, nn - 1.5);
    }
    throw std::invalid_argument("genuine_threshold: unknown kind");
}

CriterionResult evaluate_mabk(const PureState& state, const MeasurementSettings& settings,
                              HybridPartition partition, MabkForm form) {
    const std::size_t n = state.n_sites();
    if (partition.t > n) throw std::invalid_argument("evaluate_mabk: t must be <= n");
    const Complex pi_n = mabk_moment(state, settings);
    const double lhs = form == MabkForm::Single ? pi_n.real() : pi_n.real() + pi_n.imag();
    const double rhs = mabk_threshold(n, partition.t, form);

    CriterionResult res;
    res.lhs = lhs;
    res.rhs = rhs;
    res.ratio = lhs / rhs;
    res.verdict = res.ratio > 1.0 ? partition_verdict(partition.t, n) : Verdict::None;
    res.inequality_id = std::string("mabk-") + (form == MabkForm::Single ? "single" : "sum") +
                        "-t" + std::to_string(partition.t);
    return res;
}

CriterionResult evaluate_genuine(const PureState& state, const MeasurementSettings& settings,
                                 GenuineKind kind) {
    const Complex pi_n = mabk_moment(state, settings);
    CriterionResult res;
    res.lhs = kind == GenuineKind::GenuineEntSingle ? pi_n.real() : pi_n.real() + pi_n.imag();
    res.rhs = genuine_threshold(state.n_sites(), kind);
    res.ratio = res.lhs / res.rhs;
    switch (kind) {
        case GenuineKind::SvetlichnySum:
            res.inequality_id = "svetlichny-sum";
            res.verdict = res.ratio > 1.0 ? Verdict::GenuineBell : Verdict::None;
            break;
        case GenuineKind::GenuineEntSingle:
            res.inequality_id = "genuine-ent-single";
            res.verdict = res.ratio > 1.0 ? Verdict::GenuineEntanglement : Verdict::None;
            break;
        case GenuineKind::GenuineEntSum:
            res.inequality_id = "genuine-ent-sum";
            res.verdict = res.ratio > 1.0 ? Verdict::GenuineEntanglement : Verdict::None;
            break;
    }
    return res;
}

double chsh_value(const PureState& state, double theta, double theta_prime, double phi,
                  double phi_prime) {
    if (state.site_dims() != std::vector<std::size_t>{2, 2})
        throw std::invalid_argument("chsh_value: state must be two qubits");
    const SpinOperatorSet ops =
        make_spin_operators(SpinMagnitude::from_two_j(1), UnitConvention::Pauli);

    auto correlation = [&](double a, double b) {
        std::vector<Complex> image = state.amplitudes();
        kernels::apply_site_operator(image, rotated_component(ops, b), 1, kernels::Exec::Serial);
        kernels::apply_site_operator(image, rotated_component(ops, a), 2, kernels::Exec::Serial);
        // Anticorrelation sign convention: singlet gives E(a,b) = cos(a-b).
        return -std::real(inner_product(state.amplitudes(), image));
    };

    return correlation(theta, phi) - correlation(theta, phi_prime) +
           correlation(theta_prime, phi) + correlation(theta_prime, phi_prime);
}

double cfrd_lhs(const PureState& state, const MeasurementSettings& settings) {
    return std::norm(product_moment(state, settings, UnitConvention::Standard));
}

double cfrd_rhs(const PureState& state, HybridPartition partition, const CJValue& cj) {
    const auto& dims = state.site_dims();
    const std::size_t n = dims.size();
    if (partition.t > n) throw std::invalid_argument("cfrd_rhs: t must be <= n");
    for (std::size_t d : dims)
        if (d != dims[0]) throw std::invalid_argument("cfrd_rhs: all sites must share one spin");
    if (cj.convention != UnitConvention::Standard)
        throw std::invalid_argument("cfrd_rhs: C_J must use the Standard convention");
    if (cj.j.dimension() != dims[0])
        throw std::invalid_argument("cfrd_rhs: C_J spin does not match the site spin");

    const double j = cj.j.j();
    const std::size_t d = dims[0];
    std::vector<double> g(d);  // J(J+1) - m^2 per site index
    for (std::size_t i = 0; i < d; ++i) {
        const double m = cj.j.m_of_index(i);
        g[i] = j * (j + 1.0) - m * m;
    }

    double acc = 0.0;
    const auto& amps = state.amplitudes();
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        const double w = std::norm(amps[idx]);
        if (w == 0.0) continue;
        double factor = 1.0;
        std::size_t rest = idx;
        for (std::size_t k = n; k-- > 0;) {
            const std::size_t digit = rest % d;
            rest /= d;
            factor *= g[digit] - (k < partition.t ? cj.value : 0.0);
        }
        acc += w * factor;
    }
    return acc;
}

CriterionResult evaluate_cfrd(const PureState& state, const MeasurementSettings& settings,
                              HybridPartition partition, const CJValue& cj) {
    CriterionResult res;
    res.lhs = cfrd_lhs(state, settings);
    res.rhs = cfrd_rhs(state, partition, cj);
    res.ratio = res.rhs != 0.0 ? res.lhs / res.rhs : 0.0;
    res.verdict =
        res.ratio > 1.0 ? partition_verdict(partition.t, state.n_sites()) : Verdict::None;
    res.inequality_id = "cj-cfrd-t" + std::to_string(partition.t);
    return res;
}

namespace {

double correlated_norm(const std::vector<double>& r) {
    double n = 0.0;
    for (double v : r) n += v * v;
    if (n == 0.0) throw std::invalid_argument("correlated amplitudes are all zero");
    return n;
}

}  // namespace

double cfrd_lhs_closed(const CorrelatedStateSpec& spec) {
    const std::size_t d = spec.j.dimension();
    if (spec.r.size() != d) throw std::invalid_argument("cfrd_lhs_closed: r length mismatch");
    const double j = spec.j.j();
    const double n = correlated_norm(spec.r);
    double moment = 0.0;
    for (std::size_t k = 0; k + 1 < d; ++k) {
        const double m = -j + static_cast<double>(k);  // r[k] belongs to m = k - J
        const double cm = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
        moment += spec.r[k] * spec.r[k + 1] * std::pow(cm, static_cast<double>(spec.n_sites));
    }
    moment /= n;
    return moment * moment;
}

double cfrd_rhs_closed(const CorrelatedStateSpec& spec, HybridPartition partition,
                       const CJValue& cj) {
    const std::size_t d = spec.j.dimension();
    if (spec.r.size() != d) throw std::invalid_argument("cfrd_rhs_closed: r length mismatch");
    if (partition.t > spec.n_sites) throw std::invalid_argument("cfrd_rhs_closed: t > n");
    if (!(spec.j == cj.j) || cj.convention != UnitConvention::Standard)
        throw std::invalid_argument("cfrd_rhs_closed: C_J does not match the site spin");
    const double j = spec.j.j();
    const double n = correlated_norm(spec.r);
    double acc = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        const double m = -j + static_cast<double>(k);
        const double g = j * (j + 1.0) - m * m;
        acc += spec.r[k] * spec.r[k] * std::pow(g - cj.value, static_cast<double>(partition.t)) *
               std::pow(g, static_cast<double>(spec.n_sites - partition.t));
    }
    return acc / n;
}

CriterionResult evaluate_cfrd_closed(const CorrelatedStateSpec& spec, HybridPartition partition,
                                     const CJValue& cj) {
    CriterionResult res;
    res.lhs = cfrd_lhs_closed(spec);
    res.rhs = cfrd_rhs_closed(spec, partition, cj);
    res.ratio = res.rhs != 0.0 ? res.lhs / res.rhs : 0.0;
    res.verdict =
        res.ratio > 1.0 ? partition_verdict(partition.t, spec.n_sites) : Verdict::None;
    res.inequality_id = "cj-cfrd-t" + std::to_string(partition.t);
    return res;
}

OptimizedCriterion optimize_amplitudes(std::size_t n_sites, SpinMagnitude j,
                                       HybridPartition partition, const CJValue& cj,
                                       std::uint64_t seed) {
    if (n_sites < 2) throw std::invalid_argument("optimize_amplitudes: need n_sites >= 2");
    const std::size_t d = j.dimension();
    const std::size_t n_free = (d - 1) / 2;  // r_m = r_{-m}, r_J fixed at 1

    auto build_r = [&](const std::vector<double>& params) {
        std::vector<double> r(d, 1.0);
        // params[p] is the amplitude at |m| = J - 1 - p (and its mirror).
        for (std::size_t p = 0; p < params.size(); ++p) {
            r[d - 2 - p] = params[p];
            r[p + 1] = params[p];
        }
        return r;
    };
    auto ratio_of = [&](const std::vector<double>& params) {
        const CorrelatedStateSpec spec{n_sites, j, build_r(params)};
        const double rhs = cfrd_rhs_closed(spec, partition, cj);
        if (rhs <= 0.0) return -1.0;
        return cfrd_lhs_closed(spec) / rhs;
    };

    constexpr double kLo = 0.0, kHi = 4.0;
    std::vector<double> best_params(n_free, 1.0);
    double best_ratio = ratio_of(best_params);

    Rng rng(seed);
    constexpr int kRestarts = 20;
    for (int restart = 0; restart < kRestarts && n_free > 0; ++restart) {
        std::vector<double> params(n_free);
        if (restart == 0)
            std::fill(params.begin(), params.end(), 1.0);  // the maximally entangled start
        else
            for (double& p : params) p = rng.uniform(kLo, kHi);

        double current = ratio_of(params);
        for (int sweep = 0; sweep < 100; ++sweep) {
            const double before = current;
            for (std::size_t c = 0; c < n_free; ++c) {
                auto neg = [&](double v) {
                    std::vector<double> trial = params;
                    trial[c] = v;
                    return -ratio_of(trial);
                };
                const ScalarMinimum m = scan_then_golden_min(neg, kLo, kHi, 64, 1e-11);
                if (-m.value > current) {
                    params[c] = m.x;
                    current = -m.value;
                }
            }
            if (current - before < 1e-8) break;
        }
        if (current > best_ratio) {
            best_ratio = current;
            best_params = params;
        }
    }

    OptimizedCriterion out;
    out.r = build_r(best_params);
    out.settings = uniform_settings(n_sites);
    out.result = evaluate_cfrd_closed({n_sites, j, out.r}, partition, cj);
    return out;
}

}  // namespace spinq

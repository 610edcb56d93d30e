#include "spinq/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinq {

PureState singlet_state() {
    std::vector<Complex> amps(4);
    amps[1] = 1.0 / std::sqrt(2.0);   // |up down>
    amps[2] = -1.0 / std::sqrt(2.0);  // |down up>
    return {std::move(amps), {2, 2}};
}

PureState ghz_state(std::size_t n_sites) {
    if (n_sites < 2 || n_sites > 12)
        throw std::invalid_argument("ghz_state: n_sites must be in [2, 12]");
    const std::size_t d = std::size_t{1} << n_sites;
    std::vector<Complex> amps(d);
    amps[0] = 1.0 / std::sqrt(2.0);
    amps[d - 1] = 1.0 / std::sqrt(2.0);
    return {std::move(amps), std::vector<std::size_t>(n_sites, 2)};
}

PureState correlated_state(const CorrelatedStateSpec& spec) {
    const std::size_t d = spec.j.dimension();
    if (spec.r.size() != d)
        throw std::invalid_argument("correlated_state: r must have length 2j+1");
    if (spec.n_sites < 1) throw std::invalid_argument("correlated_state: need at least one site");
    if (std::all_of(spec.r.begin(), spec.r.end(), [](double x) { return x == 0.0; }))
        throw std::invalid_argument("correlated_state: all-zero amplitudes");

    const std::vector<std::size_t> dims(spec.n_sites, d);
    const std::size_t dim = composite_dimension(dims);
    std::vector<Complex> amps(dim);
    // |J,m>^{x N}: every site at basis index i = J - m; r[0] is r_{-J},
    // i.e. r[k] belongs to m = k - J and site index i = d - 1 - k.
    const std::size_t repunit = (dim - 1) / (d - 1);  // 1 + d + d^2 + ...
    for (std::size_t k = 0; k < d; ++k) {
        const std::size_t site_index = d - 1 - k;
        amps[site_index * repunit] = spec.r[k];
    }
    return {std::move(amps), dims};  // PureState normalizes by sqrt(n)
}

SymTridiagonal bec_hamiltonian(const BECParams& p) {
    if (p.n_atoms < 1) throw std::invalid_argument("bec_hamiltonian: n_atoms must be >= 1");
    if (p.kappa < 0.0) throw std::invalid_argument("bec_hamiltonian: kappa must be >= 0");
    if (p.g < 0.0) throw std::invalid_argument("bec_hamiltonian: g must be >= 0");
    const std::size_t n = p.n_atoms;
    SymTridiagonal t;
    t.diag.resize(n + 1);
    t.off.resize(n);
    for (std::size_t na = 0; na <= n; ++na) {
        const double a = static_cast<double>(na);
        const double b = static_cast<double>(n - na);
        t.diag[na] = 0.5 * p.g * (a * (a - 1.0) + b * (b - 1.0));
        if (na < n) t.off[na] = p.kappa * std::sqrt((a + 1.0) * b);
    }
    return t;
}

TwoModeState bec_ground_state(const BECParams& p) {
    // kappa > 0 makes the tridiagonal irreducible, so the ground state is
    // unique and the phase fix below is well defined.
    if (!(p.kappa > 0.0)) throw std::invalid_argument("bec_ground_state: kappa must be > 0");
    const SymTridiagonal h = bec_hamiltonian(p);
    TridiagonalGround ground = tridiagonal_ground_state(h);

    std::size_t imax = 0;
    for (std::size_t i = 1; i < ground.vector.size(); ++i)
        if (std::abs(ground.vector[i]) > std::abs(ground.vector[imax])) imax = i;
    const double sign = ground.vector[imax] < 0.0 ? -1.0 : 1.0;

    TwoModeState s{std::vector<Complex>(ground.vector.size()), p.n_atoms};
    double nrm = 0.0;
    for (double v : ground.vector) nrm += v * v;
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < ground.vector.size(); ++i)
        s.amplitudes[i] = sign * ground.vector[i] / nrm;
    return s;
}

namespace {

// a^+b |n_a> = sqrt((n_a+1)(N-n_a)) |n_a+1>, ab^+ the adjoint.
std::vector<Complex> apply_jx(const TwoModeState& s) {
    const std::size_t n = s.n_atoms;
    std::vector<Complex> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        Complex acc = 0.0;
        if (i > 0) acc += 0.5 * std::sqrt(static_cast<double>(i) * (n - i + 1.0)) * s.amplitudes[i - 1];
        if (i < n) acc += 0.5 * std::sqrt((i + 1.0) * static_cast<double>(n - i)) * s.amplitudes[i + 1];
        out[i] = acc;
    }
    return out;
}

std::vector<Complex> apply_jy(const TwoModeState& s) {
    const std::size_t n = s.n_atoms;
    const Complex inv2i(0.0, -0.5);  // 1/(2i)
    std::vector<Complex> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        Complex acc = 0.0;
        if (i > 0) acc += std::sqrt(static_cast<double>(i) * (n - i + 1.0)) * s.amplitudes[i - 1];
        if (i < n) acc -= std::sqrt((i + 1.0) * static_cast<double>(n - i)) * s.amplitudes[i + 1];
        out[i] = inv2i * acc;
    }
    return out;
}

std::vector<Complex> apply_jz(const TwoModeState& s) {
    const std::size_t n = s.n_atoms;
    std::vector<Complex> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        out[i] = (static_cast<double>(i) - 0.5 * static_cast<double>(n)) * s.amplitudes[i];
    return out;
}

}  // namespace

CollectiveMoments schwinger_moments(const TwoModeState& s) {
    if (s.amplitudes.size() != s.n_atoms + 1)
        throw std::invalid_argument("schwinger_moments: amplitude length must be n_atoms+1");

    CollectiveMoments m;
    m.n_atoms = s.n_atoms;

    const std::vector<Complex>& psi = s.amplitudes;
    const auto jx_psi = apply_jx(s);
    const auto jy_psi = apply_jy(s);
    const auto jz_psi = apply_jz(s);

    m.mean_x = std::real(inner_product(psi, jx_psi));
    m.mean_y = std::real(inner_product(psi, jy_psi));
    m.mean_z = std::real(inner_product(psi, jz_psi));
    m.var_x = std::real(inner_product(jx_psi, jx_psi)) - m.mean_x * m.mean_x;
    m.var_y = std::real(inner_product(jy_psi, jy_psi)) - m.mean_y * m.mean_y;
    m.var_z = std::real(inner_product(jz_psi, jz_psi)) - m.mean_z * m.mean_z;

    // <J^2> = N(N+2)/4 identically in the fixed-N sector; solve j(j+1) = <J^2>.
    const double jsq = 0.25 * static_cast<double>(s.n_atoms) * (s.n_atoms + 2.0);
    m.j_tot = 0.5 * (std::sqrt(1.0 + 4.0 * jsq) - 1.0);
    return m;
}

}  // namespace spinq

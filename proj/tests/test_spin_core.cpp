#include <doctest.h>

#include <cmath>

#include "spinq/rng.hpp"
#include "spinq/spin_ops.hpp"
#include "spinq/state.hpp"

using namespace spinq;

namespace {

const Complex kI(0.0, 1.0);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

PureState random_single_site(SpinMagnitude j, Rng& rng) {
    return {rng.haar_state(j.dimension()), {j.dimension()}};
}

}  // namespace

TEST_SUITE_BEGIN("spin-core");

TEST_CASE("pauli matrices by definition") {
    const auto ops = make_spin_operators(SpinMagnitude::from_j(0.5), UnitConvention::Pauli);
    CHECK(ops.jx(0, 0) == Complex(0.0));
    CHECK(ops.jx(0, 1) == Complex(1.0));
    CHECK(ops.jx(1, 0) == Complex(1.0));
    CHECK(ops.jz(0, 0) == Complex(1.0));
    CHECK(ops.jz(1, 1) == Complex(-1.0));
    CHECK(std::abs(ops.jy(0, 1) - Complex(0.0, -1.0)) < 1e-15);
    // Ladder entries: (jx + i jy)|down> = 2|up> in Pauli units.
    CHECK(std::abs(ops.jplus(0, 1) - Complex(2.0)) < 1e-15);
}

TEST_CASE("operator set invariants for all j <= 4") {
    for (int two_j = 1; two_j <= 8; ++two_j) {
        const SpinMagnitude j = SpinMagnitude::from_two_j(two_j);
        for (const auto convention : {UnitConvention::Standard, UnitConvention::Pauli}) {
            if (convention == UnitConvention::Pauli && two_j != 1) continue;
            const auto ops = make_spin_operators(j, convention);
            const double c = convention == UnitConvention::Pauli ? 2.0 : 1.0;

            CHECK(ops.jx.is_hermitian(1e-12));
            CHECK(ops.jy.is_hermitian(1e-12));
            CHECK(ops.jz.is_hermitian(1e-12));
            CHECK(max_abs_diff(commutator(ops.jx, ops.jy), Complex(0.0, c) * ops.jz) < 1e-12);
            CHECK(max_abs_diff(ops.jplus, ops.jx + kI * ops.jy) == 0.0);
            CHECK(max_abs_diff(ops.jminus, ops.jx - kI * ops.jy) == 0.0);
            if (convention == UnitConvention::Standard) {
                const double casimir = j.j() * (j.j() + 1.0);
                CHECK(max_abs_diff(ops.jsq,
                                   Complex(casimir) * ComplexMatrix::identity(j.dimension())) <
                      1e-12);
            }
        }
    }
}

TEST_CASE("ladder element for j=1 and convention errors") {
    const auto ops = make_spin_operators(SpinMagnitude::from_j(1.0), UnitConvention::Standard);
    // <m=0| J+ |m=-1> = sqrt(2); index 2 is m=-1, index 1 is m=0.
    CHECK(std::abs(ops.jplus(1, 2) - Complex(std::sqrt(2.0))) < 1e-15);
    CHECK(max_abs_diff(ops.jsq, Complex(2.0) * ComplexMatrix::identity(3)) < 1e-12);

    CHECK_THROWS_AS(make_spin_operators(SpinMagnitude::from_j(1.0), UnitConvention::Pauli),
                    std::invalid_argument);
    CHECK_THROWS_AS(SpinMagnitude::from_j(0.3), std::invalid_argument);
    CHECK_THROWS_AS(SpinMagnitude::from_j(0.0), std::invalid_argument);
}

TEST_CASE("rotated component") {
    const auto ops = make_spin_operators(SpinMagnitude::from_j(0.5), UnitConvention::Pauli);
    CHECK(max_abs_diff(rotated_component(ops, 0.0), ops.jx) < 1e-15);
    CHECK(max_abs_diff(rotated_component(ops, M_PI_2), ops.jy) < 1e-15);

    const ComplexMatrix mid = rotated_component(ops, M_PI_4);
    CHECK(max_abs_diff(mid, Complex(1.0 / std::sqrt(2.0)) * (ops.jx + ops.jy)) < 1e-15);
    const auto eig = hermitian_eigensolve(mid);
    CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("embed_at_site") {
    const auto ops = make_spin_operators(SpinMagnitude::from_j(0.5), UnitConvention::Pauli);
    const std::vector<std::size_t> dims{2, 2};

    const CompositeOperator z0 = embed_at_site(ops.jz, 0, dims);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k)
            CHECK(z0.matrix(i, k) == (i == k ? Complex(i < 2 ? 1.0 : -1.0) : Complex(0.0)));

    const CompositeOperator id1 = embed_at_site(ComplexMatrix::identity(2), 1, dims);
    CHECK(max_abs_diff(id1.matrix, ComplexMatrix::identity(4)) == 0.0);

    const CompositeOperator x1 = embed_at_site(ops.jx, 1, dims);
    CHECK(x1.matrix(0, 1) == Complex(1.0));
    CHECK(x1.matrix(1, 0) == Complex(1.0));
    CHECK(x1.matrix(2, 3) == Complex(1.0));
    CHECK(x1.matrix(0, 2) == Complex(0.0));
    CHECK(x1.matrix(0, 3) == Complex(0.0));

    CHECK_THROWS_AS(embed_at_site(ComplexMatrix::identity(3), 0, dims), std::invalid_argument);
    CHECK_THROWS_AS(embed_at_site(ops.jx, 2, dims), std::invalid_argument);
}

TEST_CASE("expectation and variance basics") {
    const auto pauli = make_spin_operators(SpinMagnitude::from_j(0.5), UnitConvention::Pauli);
    const std::vector<std::size_t> one_qubit{2};
    const PureState up({1.0, 0.0}, one_qubit);

    const CompositeOperator id{ComplexMatrix::identity(2), one_qubit};
    CHECK(std::abs(expectation(up, id) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(expectation(up, {pauli.jz, one_qubit}) - Complex(1.0)) < 1e-15);
    CHECK(variance(up, {pauli.jz, one_qubit}) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(variance(up, {pauli.jx, one_qubit}) == doctest::Approx(1.0).epsilon(1e-14));

    // j=1, m=0: Var(J^Z) = 0, Var(J^X) = 1.
    const auto std1 = make_spin_operators(SpinMagnitude::from_j(1.0), UnitConvention::Standard);
    const PureState m0({0.0, 1.0, 0.0}, {3});
    CHECK(variance(m0, {std1.jz, {3}}) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(variance(m0, {std1.jx, {3}}) == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(variance(up, {pauli.jplus, one_qubit}), std::invalid_argument);
}

TEST_CASE("expectation is linear in the operator") {
    Rng rng(31);
    const auto ops = make_spin_operators(SpinMagnitude::from_j(1.0), UnitConvention::Standard);
    const PureState psi(rng.haar_state(3), {3});
    const CompositeOperator a{ops.jx, {3}};
    const CompositeOperator b{ops.jz, {3}};
    for (int rep = 0; rep < 20; ++rep) {
        const Complex alpha(rng.normal(), rng.normal());
        const Complex beta(rng.normal(), rng.normal());
        const CompositeOperator combo{alpha * a.matrix + beta * b.matrix, {3}};
        const Complex lhs = expectation(psi, combo);
        const Complex rhs = alpha * expectation(psi, a) + beta * expectation(psi, b);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("variance is non-negative for random states") {
    Rng rng(47);
    for (int two_j = 1; two_j <= 4; ++two_j) {
        const SpinMagnitude j = SpinMagnitude::from_two_j(two_j);
        const auto ops = make_spin_operators(j, UnitConvention::Standard);
        const std::vector<std::size_t> dims{j.dimension()};
        for (int rep = 0; rep < 1000; ++rep) {
            const PureState psi = random_single_site(j, rng);
            const CompositeOperator op{rotated_component(ops, rng.uniform(0.0, 6.2832)), dims};
            CHECK(variance(psi, op) >= -1e-12);
        }
    }
}

TEST_CASE("uncertainty relation dJx dJy >= |<Jz>|/2") {
    Rng rng(53);
    for (int two_j = 1; two_j <= 4; ++two_j) {
        const SpinMagnitude j = SpinMagnitude::from_two_j(two_j);
        const auto ops = make_spin_operators(j, UnitConvention::Standard);
        const std::vector<std::size_t> dims{j.dimension()};
        const CompositeOperator jx{ops.jx, dims}, jy{ops.jy, dims}, jz{ops.jz, dims};
        for (int rep = 0; rep < 1000; ++rep) {
            const PureState psi = random_single_site(j, rng);
            const double lhs = std::sqrt(std::max(variance(psi, jx), 0.0)) *
                               std::sqrt(std::max(variance(psi, jy), 0.0));
            const double rhs = 0.5 * std::abs(std::real(expectation(psi, jz)));
            CHECK(lhs >= rhs - 1e-10);
        }
    }
}

TEST_CASE("hermitian eigensolve examples") {
    ComplexMatrix d3(3, 3);
    d3(0, 0) = 3.0;
    d3(1, 1) = 1.0;
    d3(2, 2) = 2.0;
    const auto e1 = hermitian_eigensolve(d3);
    CHECK(e1.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e1.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(e1.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-14));

    const auto pauli = make_spin_operators(SpinMagnitude::from_j(0.5), UnitConvention::Pauli);
    const auto e2 = hermitian_eigensolve(pauli.jx);
    CHECK(e2.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(e2.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-13));

    ComplexMatrix tri(3, 3);
    tri(0, 1) = tri(1, 0) = tri(1, 2) = tri(2, 1) = 1.0;
    const auto e3 = hermitian_eigensolve(tri);
    CHECK(e3.eigenvalues[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-13));
    CHECK(e3.eigenvalues[1] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(e3.eigenvalues[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));

    ComplexMatrix bad(2, 2);
    bad(0, 1) = 1.0;  // not Hermitian
    CHECK_THROWS_AS(hermitian_eigensolve(bad), std::invalid_argument);
}

TEST_CASE("eigensolve reconstruction for random Hermitian matrices") {
    Rng rng(67);
    const std::size_t sizes[] = {2, 3, 5, 8, 13, 21, 34, 64};
    int done = 0;
    for (int rep = 0; done < 100; ++rep) {
        const std::size_t n = sizes[rep % 8];
        ComplexMatrix a(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            a(r, r) = rng.normal();
            for (std::size_t c = r + 1; c < n; ++c) {
                a(r, c) = Complex(rng.normal(), rng.normal());
                a(c, r) = std::conj(a(r, c));
            }
        }
        const auto eig = hermitian_eigensolve(a);
        const double scale = std::max(frobenius_norm(a), 1.0);

        // Residual per pair and orthonormality.
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<Complex> v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = eig.eigenvectors(i, k);
            const auto av = matvec(a, v);
            double resid = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                resid += std::norm(av[i] - eig.eigenvalues[k] * v[i]);
            CHECK(std::sqrt(resid) <= 1e-9 * scale);
        }
        const ComplexMatrix vhv = eig.eigenvectors.adjoint() * eig.eigenvectors;
        CHECK(max_abs_diff(vhv, ComplexMatrix::identity(n)) < 1e-9);

        // A = V diag(lambda) V^dagger.
        ComplexMatrix lam(n, n);
        for (std::size_t k = 0; k < n; ++k) lam(k, k) = eig.eigenvalues[k];
        const ComplexMatrix rebuilt = eig.eigenvectors * lam * eig.eigenvectors.adjoint();
        CHECK(max_abs_diff(rebuilt, a) <= 1e-9 * scale);
        ++done;
    }
}

TEST_CASE("tridiagonal path agrees with Jacobi") {
    Rng rng(71);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform(0.0, 30.0));
        SymTridiagonal t;
        t.diag.resize(n);
        t.off.resize(n - 1);
        for (double& d : t.diag) d = rng.normal();
        for (double& o : t.off) o = rng.normal();

        ComplexMatrix dense(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            dense(i, i) = t.diag[i];
            if (i + 1 < n) dense(i, i + 1) = dense(i + 1, i) = t.off[i];
        }
        const auto ql = tridiagonal_eigenvalues(t);
        const auto jac = hermitian_eigensolve(dense);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(ql[i] == doctest::Approx(jac.eigenvalues[i]).epsilon(1e-10));

        const TridiagonalGround g = tridiagonal_ground_state(t);
        CHECK(g.eigenvalue == doctest::Approx(ql[0]).epsilon(1e-10));
        const auto tv = t.apply(g.vector);
        double resid = 0.0, nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            resid += (tv[i] - g.eigenvalue * g.vector[i]) * (tv[i] - g.eigenvalue * g.vector[i]);
            nrm += g.vector[i] * g.vector[i];
        }
        CHECK(std::sqrt(resid) < 1e-9 * (std::abs(g.eigenvalue) + 1.0));
        CHECK(std::sqrt(nrm) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("serial and parallel kernels agree exactly") {
    Rng rng(83);
    const std::size_t n_qubits = 6;
    std::vector<Complex> amps = rng.haar_state(std::size_t{1} << n_qubits);
    const auto ops = make_spin_operators(SpinMagnitude::from_j(0.5), UnitConvention::Pauli);

    std::vector<Complex> a = amps, b = amps;
    for (std::size_t site = 0; site < n_qubits; ++site) {
        const std::size_t stride = std::size_t{1} << (n_qubits - 1 - site);
        kernels::apply_site_operator(a, ops.jx, stride, kernels::Exec::Serial);
        kernels::apply_site_operator(b, ops.jx, stride, kernels::Exec::Parallel);
    }
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

    ComplexMatrix m(64, 64);
    for (std::size_t r = 0; r < 64; ++r)
        for (std::size_t c = 0; c < 64; ++c) m(r, c) = Complex(rng.normal(), rng.normal());
    const auto s = kernels::matvec(m, amps, kernels::Exec::Serial);
    const auto p = kernels::matvec(m, amps, kernels::Exec::Parallel);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i] == p[i]);
}

TEST_CASE("state validation and the composite size cap") {
    CHECK_THROWS_AS(PureState({1.0, 0.0}, {3}), std::invalid_argument);
    CHECK_THROWS_AS(PureState({0.0, 0.0}, {2}), std::invalid_argument);
    CHECK_THROWS_AS(composite_dimension(std::vector<std::size_t>(13, 2)), std::invalid_argument);
    CHECK(composite_dimension(std::vector<std::size_t>(12, 2)) == 4096);

    // Constructors normalize.
    const PureState s({2.0, 0.0, 0.0, 2.0}, {2, 2});
    CHECK(vector_norm(s.amplitudes()) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_SUITE_END();

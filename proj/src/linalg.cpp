#include "spinq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "spinq/kernels.hpp"

namespace spinq {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    const double scale = std::max(max_abs(), 1.0);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r; c < cols_; ++c)
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol * scale) return false;
    return true;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const Complex& z : data_) m = std::max(m, std::abs(z));
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("ComplexMatrix: shape mismatch in +=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("ComplexMatrix: shape mismatch in -=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (Complex& z : data_) z *= scale;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("ComplexMatrix: shape mismatch in *");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex{}) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
        }
    }
    return out;
}

double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (const Complex& z : m.data()) s += std::norm(z);
    return std::sqrt(s);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

std::vector<Complex> matvec(const ComplexMatrix& m, std::span<const Complex> v) {
    return kernels::matvec(m, v, kernels::Exec::Parallel);
}

Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket) {
    if (bra.size() != ket.size()) throw std::invalid_argument("inner_product: length mismatch");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < bra.size(); ++i) acc += std::conj(bra[i]) * ket[i];
    return acc;
}

double vector_norm(std::span<const Complex> v) {
    double s = 0.0;
    for (const Complex& z : v) s += std::norm(z);
    return std::sqrt(s);
}

namespace {

// One complex Jacobi rotation zeroing a(p,q). The unitary acts on the (p,q)
// plane as [[c, s e^{i phi}], [-s e^{-i phi}, c]] with a(p,q) = r e^{i phi}.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const Complex phase = apq / r;  // e^{i phi}

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * r);
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i) {
        if (i == p || i == q) continue;
        const Complex aip = a(i, p);
        const Complex aiq = a(i, q);
        a(i, p) = c * aip - s * std::conj(phase) * aiq;
        a(i, q) = s * phase * aip + c * aiq;
        a(p, i) = std::conj(a(i, p));
        a(q, i) = std::conj(a(i, q));
    }
    a(p, p) = app - t * r;
    a(q, q) = aqq + t * r;
    a(p, q) = 0.0;
    a(q, p) = 0.0;

    for (std::size_t i = 0; i < n; ++i) {
        const Complex vip = v(i, p);
        const Complex viq = v(i, q);
        v(i, p) = c * vip - s * std::conj(phase) * viq;
        v(i, q) = s * phase * vip + c * viq;
    }
}

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    const std::size_t n = a.rows();
    for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
}

}  // namespace

EigenDecomposition hermitian_eigensolve(const ComplexMatrix& matrix, double hermiticity_tol) {
    if (matrix.rows() != matrix.cols())
        throw std::invalid_argument("hermitian_eigensolve: matrix not square");
    if (!matrix.is_hermitian(hermiticity_tol))
        throw std::invalid_argument("hermitian_eigensolve: matrix not Hermitian within tolerance");

    const std::size_t n = matrix.rows();
    ComplexMatrix a = matrix;
    // Symmetrize exactly so rotation bookkeeping stays consistent.
    for (std::size_t p = 0; p < n; ++p) {
        a(p, p) = Complex(a(p, p).real(), 0.0);
        for (std::size_t q = p + 1; q < n; ++q) {
            const Complex m = 0.5 * (a(p, q) + std::conj(a(q, p)));
            a(p, q) = m;
            a(q, p) = std::conj(m);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(frobenius_norm(a), 1e-300);
    constexpr int kMaxSweeps = 64;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (offdiag_norm(a) <= 1e-14 * scale) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = diag[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

std::vector<double> SymTridiagonal::apply(std::span<const double> v) const {
    const std::size_t n = size();
    if (v.size() != n) throw std::invalid_argument("SymTridiagonal::apply: length mismatch");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = diag[i] * v[i];
        if (i > 0) s += off[i - 1] * v[i - 1];
        if (i + 1 < n) s += off[i] * v[i + 1];
        out[i] = s;
    }
    return out;
}

namespace {

double hypot2(double a, double b) { return std::sqrt(a * a + b * b); }

// Implicit-shift QL on (d, e); eigenvalues end up in d. EISPACK tql1 shape.
void ql_implicit(std::vector<double>& d, std::vector<double>& e) {
    const std::size_t n = d.size();
    if (n <= 1) return;
    e.push_back(0.0);
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
            }
            if (m != l) {
                if (++iter == 60)
                    throw std::runtime_error("tridiagonal QL: too many iterations");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = hypot2(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = hypot2(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && m >= l + 2) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    e.pop_back();
}

}  // namespace

std::vector<double> tridiagonal_eigenvalues(const SymTridiagonal& t) {
    if (t.size() == 0) throw std::invalid_argument("tridiagonal_eigenvalues: empty matrix");
    if (t.off.size() + 1 != t.diag.size())
        throw std::invalid_argument("tridiagonal_eigenvalues: off-diagonal length mismatch");
    std::vector<double> d = t.diag;
    std::vector<double> e = t.off;
    ql_implicit(d, e);
    std::sort(d.begin(), d.end());
    return d;
}

TridiagonalGround tridiagonal_ground_state(const SymTridiagonal& t) {
    const std::size_t n = t.size();
    const double lambda0 = tridiagonal_eigenvalues(t)[0];

    double scale = std::abs(lambda0);
    for (double x : t.diag) scale = std::max(scale, std::abs(x));
    for (double x : t.off) scale = std::max(scale, std::abs(x));
    scale = std::max(scale, 1.0);

    // Inverse iteration on T - lambda0 with partially pivoted elimination.
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int pass = 0; pass < 4; ++pass) {
        std::vector<double> dl(n), du1(n > 1 ? n - 1 : 0), du2(n > 2 ? n - 2 : 0);
        std::vector<double> sub = t.off;
        std::vector<double> x = v;
        for (std::size_t i = 0; i < n; ++i) dl[i] = t.diag[i] - lambda0;
        if (n > 1) du1.assign(t.off.begin(), t.off.end());
        std::fill(du2.begin(), du2.end(), 0.0);

        for (std::size_t i = 0; i + 1 < n; ++i) {
            double piv = dl[i];
            double low = sub[i];
            if (std::abs(low) > std::abs(piv)) {
                std::swap(dl[i], sub[i]);
                std::swap(du1[i], dl[i + 1]);
                if (i + 2 < n) {
                    du2[i] = du1[i + 1];
                    du1[i + 1] = 0.0;
                }
                std::swap(x[i], x[i + 1]);
                piv = dl[i];
                low = sub[i];
            }
            if (std::abs(piv) < 1e-15 * scale) piv = (piv >= 0 ? 1.0 : -1.0) * 1e-15 * scale;
            const double m = low / piv;
            dl[i] = piv;
            dl[i + 1] -= m * du1[i];
            x[i + 1] -= m * x[i];
            if (i + 2 < n) {
                du1[i + 1] -= m * du2[i];
            }
        }
        if (std::abs(dl[n - 1]) < 1e-15 * scale)
            dl[n - 1] = (dl[n - 1] >= 0 ? 1.0 : -1.0) * 1e-15 * scale;

        for (std::size_t i = n; i-- > 0;) {
            double s = x[i];
            if (i + 1 < n) s -= du1[i] * x[i + 1];
            if (i + 2 < n) s -= du2[i] * x[i + 2];
            x[i] = s / dl[i];
        }
        double nrm = 0.0;
        for (double xi : x) nrm += xi * xi;
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) {  // pathological start vector; perturb
            v.assign(n, 0.0);
            v[pass % n] = 1.0;
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) v[i] = x[i] / nrm;
    }

    // Rayleigh quotient beats the QL value by a hair once v has converged.
    const std::vector<double> tv = t.apply(v);
    double rq = 0.0;
    for (std::size_t i = 0; i < n; ++i) rq += v[i] * tv[i];
    return {rq, std::move(v)};
}

}  // namespace spinq

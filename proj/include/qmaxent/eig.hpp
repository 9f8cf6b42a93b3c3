#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "qmaxent/matrix.hpp"

namespace qmaxent {

/// Spectral decomposition of a Hermitian matrix. Eigenvalues are real and
/// sorted descending; eigenvectors are the matching orthonormal columns.
struct HermitianEig {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    ComplexMatrix reconstruct() const {
        const std::size_t n = eigenvalues.size();
        ComplexMatrix out(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Complex s = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    s += eigenvectors(i, k) * eigenvalues[k] * std::conj(eigenvectors(j, k));
                out(i, j) = s;
            }
        return out;
    }
};

namespace detail {

inline double offdiag_mass(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace detail

/// Cyclic Jacobi eigensolver for complex Hermitian matrices. Deterministic:
/// fixed sweep order, convergence at off-diagonal Frobenius mass below
/// 1e-14 * ||m||_F, descending eigenvalue order with lexicographic
/// tie-breaking on phase-normalized eigenvectors.
inline HermitianEig hermitian_eig(const ComplexMatrix& m, double tol = 1e-10) {
    if (!m.is_square()) throw NotSquare(m.rows(), m.cols());
    const double dev = m.hermitian_deviation();
    if (dev > tol) throw NotHermitian(dev);

    const std::size_t n = m.rows();
    // Work on the Hermitian average so the iteration sees an exactly symmetric input.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double fnorm = m.frobenius_norm();
    const double target = 1e-14 * std::max(fnorm, 1e-300);

    if (n > 1) {
        constexpr int kMaxSweeps = 100;
        int sweep = 0;
        while (detail::offdiag_mass(a) > target) {
            if (++sweep > kMaxSweeps)
                throw Error("hermitian_eig: Jacobi did not converge in " +
                            std::to_string(kMaxSweeps) + " sweeps");
            for (std::size_t p = 0; p + 1 < n; ++p) {
                for (std::size_t q = p + 1; q < n; ++q) {
                    const Complex apq = a(p, q);
                    const double mag = std::abs(apq);
                    if (mag <= 1e-300) continue;
                    const double app = a(p, p).real();
                    const double aqq = a(q, q).real();
                    const double theta = (aqq - app) / (2.0 * mag);
                    double t;
                    if (std::abs(theta) > 1e150) {
                        t = 1.0 / (2.0 * theta);
                    } else {
                        t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                        if (theta < 0.0) t = -t;
                    }
                    const double c = 1.0 / std::sqrt(t * t + 1.0);
                    const double s = t * c;
                    const Complex ephi = apq / mag;

                    // A <- G† A G with G the identity outside the (p,q) plane,
                    // G[p][p]=c, G[p][q]=s*ephi, G[q][p]=-s*conj(ephi), G[q][q]=c.
                    for (std::size_t k = 0; k < n; ++k) {
                        const Complex akp = a(k, p);
                        const Complex akq = a(k, q);
                        a(k, p) = c * akp - s * std::conj(ephi) * akq;
                        a(k, q) = s * ephi * akp + c * akq;
                    }
                    for (std::size_t k = 0; k < n; ++k) {
                        const Complex apk = a(p, k);
                        const Complex aqk = a(q, k);
                        a(p, k) = c * apk - s * ephi * aqk;
                        a(q, k) = s * std::conj(ephi) * apk + c * aqk;
                    }
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    a(p, p) = a(p, p).real();
                    a(q, q) = a(q, q).real();

                    for (std::size_t k = 0; k < n; ++k) {
                        const Complex vkp = v(k, p);
                        const Complex vkq = v(k, q);
                        v(k, p) = c * vkp - s * std::conj(ephi) * vkq;
                        v(k, q) = s * ephi * vkp + c * vkq;
                    }
                }
            }
        }
    }

    // Phase-normalize each eigenvector: first component above threshold made real positive.
    constexpr double kPhaseTol = 1e-9;
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t k = 0; k < n; ++k) {
            const double ab = std::abs(v(k, col));
            if (ab > kPhaseTol) {
                const Complex phase = std::conj(v(k, col)) / ab;
                for (std::size_t r = 0; r < n; ++r) v(r, col) *= phase;
                break;
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto lex_less = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex vi = v(k, i), vj = v(k, j);
            if (vi.real() != vj.real()) return vi.real() < vj.real();
            if (vi.imag() != vj.imag()) return vi.imag() < vj.imag();
        }
        return false;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        const double li = a(i, i).real(), lj = a(j, j).real();
        if (li != lj) return li > lj;
        return lex_less(i, j);
    });

    HermitianEig out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t col = 0; col < n; ++col) {
        out.eigenvalues[col] = a(order[col], order[col]).real();
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, col) = v(r, order[col]);
    }
    return out;
}

/// V f(diag) V† for Hermitian m. Throws DomainError when f is not finite at
/// some eigenvalue (entropy-style functions handle their own 0 log 0 inside f).
template <class F>
ComplexMatrix matrix_func(const ComplexMatrix& m, F&& f, double tol = 1e-10) {
    const HermitianEig eig = hermitian_eig(m, tol);
    const std::size_t n = eig.eigenvalues.size();
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = f(eig.eigenvalues[i]);
        if (!std::isfinite(w[i]))
            throw DomainError("f(" + std::to_string(eig.eigenvalues[i]) + ") is not finite");
    }
    ComplexMatrix out(n, n);
    const ComplexMatrix& v = eig.eigenvectors;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += v(i, k) * w[k] * std::conj(v(j, k));
            out(i, j) = s;
        }
    return out;
}

} // namespace qmaxent

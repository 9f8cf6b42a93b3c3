#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qmaxent/errors.hpp"

namespace qmaxent {

using Complex = std::complex<double>;

/// Dimension cap for all operators (desk-scale toolkit; raise if ever needed).
inline constexpr std::size_t kDimCap = 64;

/// Dense complex matrix, row-major. The substrate for every operator in the
/// library. Constructors reject non-finite entries and dimensions above kDimCap.
class ComplexMatrix {
public:
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {
        check_dims(rows, cols);
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        check_dims(rows, cols);
        if (entries_.size() != rows_ * cols_)
            throw DimensionMismatch("entry count " + std::to_string(entries_.size()) +
                                    " != " + std::to_string(rows_ * cols_));
        for (const Complex& z : entries_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw ParseError("non-finite matrix entry");
    }

    /// Row-major 2D initializer, for readable test fixtures.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
        : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
        check_dims(rows_, cols_);
        entries_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw DimensionMismatch("ragged initializer");
            for (const Complex& z : r) {
                if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                    throw ParseError("non-finite matrix entry");
                entries_.push_back(z);
            }
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(const std::vector<double>& d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<Complex>& entries() const { return entries_; }

    bool is_square() const { return rows_ == cols_; }

    ComplexMatrix dagger() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    Complex trace() const {
        if (!is_square()) throw NotSquare(rows_, cols_);
        Complex t = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const Complex& z : entries_) m = std::max(m, std::abs(z));
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const Complex& z : entries_) s += std::norm(z);
        return std::sqrt(s);
    }

    /// max_ij |m_ij - conj(m_ji)|.
    double hermitian_deviation() const {
        if (!is_square()) throw NotSquare(rows_, cols_);
        double dev = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                dev = std::max(dev, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return dev;
    }

    bool is_hermitian(double tol = 1e-10) const { return hermitian_deviation() <= tol; }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
        return *this;
    }
    ComplexMatrix& operator*=(Complex s) {
        for (Complex& z : entries_) z *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_)
            throw DimensionMismatch("matmul " + std::to_string(a.cols_) + " vs " +
                                    std::to_string(b.rows_));
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex(0.0, 0.0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

private:
    void require_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("shape mismatch");
    }
    static void check_dims(std::size_t rows, std::size_t cols) {
        if (rows < 1 || cols < 1) throw DimensionMismatch("empty matrix");
        if (rows > kDimCap || cols > kDimCap)
            throw DimensionMismatch("dimension above cap " + std::to_string(kDimCap));
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("max_abs_diff shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    return max_abs_diff(a, b) <= tol;
}

/// Kronecker product; the left operand is the slower tensor factor.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

enum class Keep { A, B };

/// Partial trace of an operator on a bipartite space with the first (A) factor
/// slower. keep selects which marginal survives.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                                   Keep keep) {
    const std::size_t d = dim_a * dim_b;
    if (m.rows() != d || m.cols() != d)
        throw DimensionMismatch("partial_trace expects " + std::to_string(d) + "x" +
                                std::to_string(d) + ", got " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
    if (keep == Keep::A) {
        ComplexMatrix out(dim_a, dim_a);
        for (std::size_t i = 0; i < dim_a; ++i)
            for (std::size_t j = 0; j < dim_a; ++j) {
                Complex s = 0.0;
                for (std::size_t b = 0; b < dim_b; ++b) s += m(i * dim_b + b, j * dim_b + b);
                out(i, j) = s;
            }
        return out;
    }
    ComplexMatrix out(dim_b, dim_b);
    for (std::size_t a = 0; a < dim_b; ++a)
        for (std::size_t b = 0; b < dim_b; ++b) {
            Complex s = 0.0;
            for (std::size_t i = 0; i < dim_a; ++i) s += m(i * dim_b + a, i * dim_b + b);
            out(a, b) = s;
        }
    return out;
}

} // namespace qmaxent

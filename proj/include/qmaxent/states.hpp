#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qmaxent/eig.hpp"
#include "qmaxent/matrix.hpp"
#include "qmaxent/rng.hpp"

namespace qmaxent {

/// Unit vector in C^dim.
class PureState {
public:
    PureState(std::size_t dim, std::vector<Complex> amplitudes)
        : dim_(dim), amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.size() != dim_ || dim_ < 1)
            throw DimensionMismatch("pure state length " + std::to_string(amplitudes_.size()) +
                                    " != dim " + std::to_string(dim_));
        double n2 = 0.0;
        for (const Complex& z : amplitudes_) n2 += std::norm(z);
        if (std::abs(std::sqrt(n2) - 1.0) > 1e-12)
            throw ParseError("pure state norm deviates from 1 by " +
                             std::to_string(std::abs(std::sqrt(n2) - 1.0)));
    }

    static PureState from_unnormalized(std::vector<Complex> v) {
        double n2 = 0.0;
        for (const Complex& z : v) n2 += std::norm(z);
        if (n2 <= 0.0 || !std::isfinite(n2)) throw ParseError("cannot normalize zero vector");
        const double inv = 1.0 / std::sqrt(n2);
        for (Complex& z : v) z *= inv;
        const std::size_t dim = v.size();
        return PureState(dim, std::move(v));
    }

    static PureState basis(std::size_t dim, std::size_t k) {
        std::vector<Complex> v(dim, Complex(0.0, 0.0));
        v.at(k) = 1.0;
        return PureState(dim, std::move(v));
    }

    /// Phi = sum_i |ii> / sqrt(d) on C^{d*d}, reference factor first.
    static PureState maximally_entangled(std::size_t d) {
        std::vector<Complex> v(d * d, Complex(0.0, 0.0));
        const double c = 1.0 / std::sqrt(static_cast<double>(d));
        for (std::size_t i = 0; i < d; ++i) v[i * d + i] = c;
        return PureState(d * d, std::move(v));
    }

    std::size_t dim() const { return dim_; }
    const std::vector<Complex>& amplitudes() const { return amplitudes_; }

    ComplexMatrix projector() const {
        ComplexMatrix p(dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                p(i, j) = amplitudes_[i] * std::conj(amplitudes_[j]);
        return p;
    }

    /// |<this|other>|^2.
    double fidelity_with(const PureState& other) const {
        if (other.dim_ != dim_) throw DimensionMismatch("fidelity dims");
        Complex ip = 0.0;
        for (std::size_t i = 0; i < dim_; ++i)
            ip += std::conj(amplitudes_[i]) * other.amplitudes_[i];
        return std::norm(ip);
    }

private:
    std::size_t dim_;
    std::vector<Complex> amplitudes_;
};

/// Trace-one positive semidefinite operator. Construction validates
/// Hermiticity, unit trace, and spectrum; eigenvalues in [-1e-10, 0) are
/// clamped to zero with the trace renormalized (optimizer iterates and
/// partial traces carry ~1e-13 noise), anything more negative is rejected.
class DensityMatrix {
public:
    explicit DensityMatrix(const ComplexMatrix& m, double tol = 1e-10) : matrix_(m) {
        if (!m.is_square()) throw NotSquare(m.rows(), m.cols());
        const double dev = m.hermitian_deviation();
        if (dev > tol) throw NotHermitian(dev);
        const double tr_err = std::abs(m.trace() - Complex(1.0, 0.0));
        if (tr_err > tol)
            throw ParseError("density matrix trace deviates from 1 by " + std::to_string(tr_err));
        const HermitianEig eig = hermitian_eig(m, tol);
        double min_ev = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
        if (min_ev < -tol) throw NotPSD(min_ev);
        if (min_ev < 0.0) {
            std::vector<double> clamped = eig.eigenvalues;
            double total = 0.0;
            for (double& ev : clamped) {
                if (ev < 0.0) ev = 0.0;
                total += ev;
            }
            const std::size_t n = clamped.size();
            ComplexMatrix rebuilt(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    Complex s = 0.0;
                    for (std::size_t k = 0; k < n; ++k)
                        s += eig.eigenvectors(i, k) * (clamped[k] / total) *
                             std::conj(eig.eigenvectors(j, k));
                    rebuilt(i, j) = s;
                }
            matrix_ = rebuilt;
        }
    }

    static DensityMatrix from_pure(const PureState& psi) {
        return DensityMatrix(psi.projector(), Trusted{});
    }

    static DensityMatrix maximally_mixed(std::size_t dim) {
        ComplexMatrix m = ComplexMatrix::identity(dim);
        m *= Complex(1.0 / static_cast<double>(dim), 0.0);
        return DensityMatrix(m, Trusted{});
    }

    std::size_t dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }

private:
    struct Trusted {};
    DensityMatrix(ComplexMatrix m, Trusted) : matrix_(std::move(m)) {}

    ComplexMatrix matrix_;
};

/// Joint state on R (x) A with the reference system R as the first (slower)
/// tensor factor; channel outputs and Choi bookkeeping share this layout.
class BipartiteState {
public:
    BipartiteState(std::size_t dim_r, std::size_t dim_a, DensityMatrix state)
        : dim_r_(dim_r), dim_a_(dim_a), state_(std::move(state)) {
        if (state_.dim() != dim_r_ * dim_a_)
            throw DimensionMismatch("bipartite state dim " + std::to_string(state_.dim()) +
                                    " != " + std::to_string(dim_r_) + "*" + std::to_string(dim_a_));
    }

    std::size_t dim_r() const { return dim_r_; }
    std::size_t dim_a() const { return dim_a_; }
    const DensityMatrix& state() const { return state_; }

    ComplexMatrix reduced_r() const {
        return partial_trace(state_.matrix(), dim_r_, dim_a_, Keep::A);
    }
    ComplexMatrix reduced_a() const {
        return partial_trace(state_.matrix(), dim_r_, dim_a_, Keep::B);
    }

private:
    std::size_t dim_r_;
    std::size_t dim_a_;
    DensityMatrix state_;
};

/// Rank-1 bipartite density matrix |v><v| with the declared (R, A) split.
inline BipartiteState purify_or_embed(const PureState& v, std::size_t dim_r, std::size_t dim_a) {
    if (v.dim() != dim_r * dim_a)
        throw DimensionMismatch("probe dim " + std::to_string(v.dim()) + " != " +
                                std::to_string(dim_r) + "*" + std::to_string(dim_a));
    return BipartiteState(dim_r, dim_a, DensityMatrix::from_pure(v));
}

/// Haar-distributed unit vector (normalized complex Gaussian components).
inline PureState random_pure(std::size_t dim, CounterRng& rng) {
    std::vector<Complex> v(dim);
    for (Complex& z : v) z = rng.next_complex_gaussian();
    return PureState::from_unnormalized(std::move(v));
}

inline PureState random_pure(std::size_t dim, std::uint64_t seed) {
    CounterRng rng(seed);
    return random_pure(dim, rng);
}

/// Reduction of a Haar-random pure state on dim x rank; rank=dim gives the
/// Hilbert-Schmidt ensemble, rank=1 gives pure states.
inline DensityMatrix random_density(std::size_t dim, std::size_t rank, CounterRng& rng) {
    if (rank < 1 || rank > dim) throw RankOutOfRange(rank, dim);
    const PureState v = random_pure(dim * rank, rng);
    return DensityMatrix(partial_trace(v.projector(), dim, rank, Keep::A));
}

inline DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
    CounterRng rng(seed);
    return random_density(dim, rank, rng);
}

} // namespace qmaxent

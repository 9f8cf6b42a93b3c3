#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qmaxent/eig.hpp"
#include "qmaxent/matrix.hpp"
#include "qmaxent/states.hpp"

namespace qmaxent {

namespace detail {

/// Choi matrix on R (x) A (R first) from a raw Kraus list:
/// Choi[(i,a),(j,b)] = sum_k K_k(a,i) conj(K_k(b,j)).
inline ComplexMatrix choi_matrix_from_kraus_ops(const std::vector<ComplexMatrix>& ops,
                                                std::size_t dim_in, std::size_t dim_out) {
    ComplexMatrix choi(dim_in * dim_out, dim_in * dim_out);
    for (const ComplexMatrix& k : ops)
        for (std::size_t i = 0; i < dim_in; ++i)
            for (std::size_t a = 0; a < dim_out; ++a) {
                const Complex kai = k(a, i);
                if (kai == Complex(0.0, 0.0)) continue;
                for (std::size_t j = 0; j < dim_in; ++j)
                    for (std::size_t b = 0; b < dim_out; ++b)
                        choi(i * dim_out + a, j * dim_out + b) += kai * std::conj(k(b, j));
            }
    return choi;
}

inline ComplexMatrix kraus_completeness_sum(const std::vector<ComplexMatrix>& ops,
                                            std::size_t dim_in) {
    ComplexMatrix s(dim_in, dim_in);
    for (const ComplexMatrix& k : ops) s += k.dagger() * k;
    return s;
}

} // namespace detail

/// Completely positive trace-preserving map in Kraus form. Operators are
/// dim_out x dim_in; construction checks sum K†K = 1 and the operator count.
class KrausChannel {
public:
    KrausChannel(std::size_t dim_in, std::size_t dim_out, std::vector<ComplexMatrix> kraus,
                 double tol = 1e-10)
        : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
        if (kraus_.empty() || kraus_.size() > dim_in_ * dim_out_)
            throw DimensionMismatch("Kraus count " + std::to_string(kraus_.size()) +
                                    " outside [1, " + std::to_string(dim_in_ * dim_out_) + "]");
        for (const ComplexMatrix& k : kraus_)
            if (k.rows() != dim_out_ || k.cols() != dim_in_)
                throw DimensionMismatch("Kraus operator shape");
        const ComplexMatrix s = detail::kraus_completeness_sum(kraus_, dim_in_);
        tp_deviation_ = max_abs_diff(s, ComplexMatrix::identity(dim_in_));
        if (tp_deviation_ > tol)
            throw ParseError("channel is not trace preserving: sum K†K deviates from identity by " +
                             std::to_string(tp_deviation_));
    }

    std::size_t dim_in() const { return dim_in_; }
    std::size_t dim_out() const { return dim_out_; }
    const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
    double tp_deviation() const { return tp_deviation_; }

private:
    std::size_t dim_in_;
    std::size_t dim_out_;
    std::vector<ComplexMatrix> kraus_;
    double tp_deviation_ = 0.0;
};

/// Choi operator on R (x) A with R ~ A' the first factor. Construction checks
/// Hermiticity and the trace-preservation marginal tr_A = 1_R; complete
/// positivity is checked where it matters (kraus_from_choi raises NotCP), so
/// diagnostic inputs such as the transpose map's swap operator can be carried.
class ChoiOperator {
public:
    ChoiOperator(std::size_t dim_r, std::size_t dim_a, ComplexMatrix matrix, double tol = 1e-10)
        : dim_r_(dim_r), dim_a_(dim_a), matrix_(std::move(matrix)) {
        if (matrix_.rows() != dim_r_ * dim_a_ || !matrix_.is_square())
            throw DimensionMismatch("Choi matrix shape");
        const double dev = matrix_.hermitian_deviation();
        if (dev > tol) throw NotHermitian(dev);
        const ComplexMatrix marginal = partial_trace(matrix_, dim_r_, dim_a_, Keep::A);
        tp_deviation_ = max_abs_diff(marginal, ComplexMatrix::identity(dim_r_));
        if (tp_deviation_ > tol)
            throw ParseError("Choi operator is not trace preserving: tr_A deviates from 1_R by " +
                             std::to_string(tp_deviation_));
    }

    std::size_t dim_r() const { return dim_r_; }
    std::size_t dim_a() const { return dim_a_; }
    const ComplexMatrix& matrix() const { return matrix_; }
    double tp_deviation() const { return tp_deviation_; }

    double min_eigenvalue() const { return hermitian_eig(matrix_).eigenvalues.back(); }
    bool is_cp(double tol = 1e-10) const { return min_eigenvalue() >= -tol; }

private:
    std::size_t dim_r_;
    std::size_t dim_a_;
    ComplexMatrix matrix_;
    double tp_deviation_ = 0.0;
};

/// Marker for the uniformly mixing map rho -> tr(rho) * 1. Not trace
/// preserving, so never materialized as Kraus operators; it enters the
/// entropy formulas only through its closed-form extended action psi_R (x) 1_A.
struct UniformMixingMap {
    std::size_t dim_in;
    std::size_t dim_out;
};

/// Schroedinger picture: sum_k K rho K†.
inline DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
    if (rho.dim() != ch.dim_in())
        throw DimensionMismatch("apply: state dim " + std::to_string(rho.dim()) +
                                " != channel input " + std::to_string(ch.dim_in()));
    ComplexMatrix out(ch.dim_out(), ch.dim_out());
    for (const ComplexMatrix& k : ch.kraus()) out += k * rho.matrix() * k.dagger();
    return DensityMatrix(out);
}

/// (id_R (x) N) acting on a joint state; the reference marginal is untouched.
inline BipartiteState apply_extended(const KrausChannel& ch, const BipartiteState& psi) {
    if (psi.dim_a() != ch.dim_in())
        throw DimensionMismatch("apply_extended: probe A dim " + std::to_string(psi.dim_a()) +
                                " != channel input " + std::to_string(ch.dim_in()));
    const std::size_t dim_r = psi.dim_r();
    const ComplexMatrix id_r = ComplexMatrix::identity(dim_r);
    ComplexMatrix out(dim_r * ch.dim_out(), dim_r * ch.dim_out());
    for (const ComplexMatrix& k : ch.kraus()) {
        const ComplexMatrix ext = kron(id_r, k);
        out += ext * psi.state().matrix() * ext.dagger();
    }
    return BipartiteState(dim_r, ch.dim_out(), DensityMatrix(out));
}

/// Heisenberg picture: sum_k K† obs K. Unital: maps 1_A to 1_A'.
inline ComplexMatrix adjoint_apply(const KrausChannel& ch, const ComplexMatrix& obs,
                                   double tol = 1e-10) {
    if (obs.rows() != ch.dim_out() || !obs.is_square())
        throw DimensionMismatch("adjoint_apply: observable dim");
    const double dev = obs.hermitian_deviation();
    if (dev > tol) throw NotHermitian(dev);
    ComplexMatrix out(ch.dim_in(), ch.dim_in());
    for (const ComplexMatrix& k : ch.kraus()) out += k.dagger() * obs * k;
    return out;
}

inline ChoiOperator choi_from_kraus(const KrausChannel& ch) {
    return ChoiOperator(ch.dim_in(), ch.dim_out(),
                        detail::choi_matrix_from_kraus_ops(ch.kraus(), ch.dim_in(), ch.dim_out()));
}

/// Channel action reconstructed from the Choi blocks: N(rho) = sum_ij rho_ij Choi[(i,.),(j,.)].
inline ComplexMatrix apply_choi(const ChoiOperator& c, const ComplexMatrix& rho) {
    if (rho.rows() != c.dim_r() || !rho.is_square())
        throw DimensionMismatch("apply_choi: state dim");
    const std::size_t da = c.dim_a();
    ComplexMatrix out(da, da);
    for (std::size_t i = 0; i < c.dim_r(); ++i)
        for (std::size_t j = 0; j < c.dim_r(); ++j) {
            const Complex rij = rho(i, j);
            if (rij == Complex(0.0, 0.0)) continue;
            for (std::size_t a = 0; a < da; ++a)
                for (std::size_t b = 0; b < da; ++b)
                    out(a, b) += rij * c.matrix()(i * da + a, j * da + b);
        }
    return out;
}

/// Canonical Kraus extraction: spectral decomposition of the Choi operator,
/// keeping eigenvalues above tol. Raises NotCP if an eigenvalue is below -tol
/// (e.g. the transpose map, whose Choi is the swap with a -1 eigenvalue).
inline KrausChannel kraus_from_choi(const ChoiOperator& c, double tol = 1e-10) {
    const HermitianEig eig = hermitian_eig(c.matrix());
    if (eig.eigenvalues.back() < -tol) throw NotCP(eig.eigenvalues.back());
    const std::size_t da = c.dim_a();
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
        const double ev = eig.eigenvalues[k];
        if (ev <= tol) continue;
        const double w = std::sqrt(ev);
        ComplexMatrix op(da, c.dim_r());
        for (std::size_t i = 0; i < c.dim_r(); ++i)
            for (std::size_t a = 0; a < da; ++a)
                op(a, i) = w * eig.eigenvectors(i * da + a, k);
        ops.push_back(std::move(op));
    }
    return KrausChannel(c.dim_r(), da, std::move(ops));
}

/// Replacer channel R^omega: every input maps to the fixed state omega.
/// Kraus set {sqrt(lambda_k) |e_k><j|} from omega's spectral decomposition.
inline KrausChannel make_replacer(const DensityMatrix& omega, std::size_t dim_in) {
    const HermitianEig eig = hermitian_eig(omega.matrix());
    const std::size_t d = omega.dim();
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < d; ++k) {
        const double ev = eig.eigenvalues[k];
        if (ev <= 1e-14) continue;
        const double w = std::sqrt(ev);
        for (std::size_t j = 0; j < dim_in; ++j) {
            ComplexMatrix op(d, dim_in);
            for (std::size_t r = 0; r < d; ++r) op(r, j) = w * eig.eigenvectors(r, k);
            ops.push_back(std::move(op));
        }
    }
    return KrausChannel(dim_in, d, std::move(ops));
}

inline KrausChannel make_depolarizing(std::size_t dim) {
    return make_replacer(DensityMatrix::maximally_mixed(dim), dim);
}

/// Stinespring sample: Kraus operators are the environment blocks of a
/// Haar-random isometry from A' into A (x) E.
inline KrausChannel random_channel(std::size_t dim_in, std::size_t dim_out, std::size_t dim_env,
                                   CounterRng& rng) {
    if (dim_env < 1 || dim_out * dim_env < dim_in)
        throw DimensionMismatch("no isometry: dim_out*dim_env < dim_in");
    if (dim_env > dim_in * dim_out)
        throw DimensionMismatch("dim_env above the Kraus-count cap dim_in*dim_out");
    const std::size_t rows = dim_out * dim_env;
    std::vector<std::vector<Complex>> cols(dim_in, std::vector<Complex>(rows));
    for (auto& col : cols)
        for (Complex& z : col) z = rng.next_complex_gaussian();
    // Modified Gram-Schmidt, two passes.
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < dim_in; ++j) {
            for (std::size_t i = 0; i < j; ++i) {
                Complex ip = 0.0;
                for (std::size_t r = 0; r < rows; ++r) ip += std::conj(cols[i][r]) * cols[j][r];
                for (std::size_t r = 0; r < rows; ++r) cols[j][r] -= ip * cols[i][r];
            }
            double n2 = 0.0;
            for (const Complex& z : cols[j]) n2 += std::norm(z);
            if (n2 < 1e-24) throw Error("random_channel: degenerate Gaussian draw");
            const double inv = 1.0 / std::sqrt(n2);
            for (Complex& z : cols[j]) z *= inv;
        }
    }
    std::vector<ComplexMatrix> ops(dim_env, ComplexMatrix(dim_out, dim_in));
    for (std::size_t e = 0; e < dim_env; ++e)
        for (std::size_t a = 0; a < dim_out; ++a)
            for (std::size_t i = 0; i < dim_in; ++i)
                ops[e](a, i) = cols[i][a * dim_env + e];
    return KrausChannel(dim_in, dim_out, std::move(ops));
}

inline KrausChannel random_channel(std::size_t dim_in, std::size_t dim_out, std::size_t dim_env,
                                   std::uint64_t seed) {
    CounterRng rng(seed);
    return random_channel(dim_in, dim_out, dim_env, rng);
}

/// Convex mixture (1-lambda) a + lambda b via concatenated scaled Kraus sets.
/// When concatenation exceeds the operator-count cap the set is re-extracted
/// from the mixture's Choi operator; the channel action is unchanged.
inline KrausChannel mix_channels(const KrausChannel& a, const KrausChannel& b, double lambda) {
    if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out())
        throw DimensionMismatch("mix_channels: channel shapes differ");
    if (lambda < 0.0 || lambda > 1.0) throw Error("mixture weight outside [0, 1]");
    if (lambda == 0.0) return a;
    if (lambda == 1.0) return b;
    std::vector<ComplexMatrix> ops;
    const Complex wa(std::sqrt(1.0 - lambda), 0.0);
    const Complex wb(std::sqrt(lambda), 0.0);
    for (const ComplexMatrix& k : a.kraus()) ops.push_back(wa * k);
    for (const ComplexMatrix& k : b.kraus()) ops.push_back(wb * k);
    if (ops.size() <= a.dim_in() * a.dim_out())
        return KrausChannel(a.dim_in(), a.dim_out(), std::move(ops));
    const ComplexMatrix choi = detail::choi_matrix_from_kraus_ops(ops, a.dim_in(), a.dim_out());
    return kraus_from_choi(ChoiOperator(a.dim_in(), a.dim_out(), choi));
}

} // namespace qmaxent

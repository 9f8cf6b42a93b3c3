#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "qmaxent/channels.hpp"
#include "qmaxent/eig.hpp"
#include "qmaxent/matrix.hpp"
#include "qmaxent/pattern_search.hpp"
#include "qmaxent/rng.hpp"
#include "qmaxent/states.hpp"

namespace qmaxent {

/// Entropy in nats; base conversion happens only at presentation.
struct EntropyValue {
    double value = 0.0;
    double in_bits() const { return value / std::numbers::ln2; }
};

/// Relative entropy, +infinity when the support condition fails.
struct RelEntValue {
    double value = 0.0;
    bool infinite = false;

    static RelEntValue inf() { return {std::numeric_limits<double>::infinity(), true}; }
    bool is_infinite() const { return infinite; }
};

namespace detail {

inline double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

/// -sum xlogx over the spectrum of a PSD Hermitian operator; tiny negative
/// eigenvalues from roundoff count as zero.
inline double entropy_of_hermitian(const ComplexMatrix& m) {
    const HermitianEig eig = hermitian_eig(m);
    double s = 0.0;
    for (double ev : eig.eigenvalues) s -= xlogx(ev);
    return s;
}

} // namespace detail

/// S(rho) = -tr[rho log rho], with the 0 log 0 = 0 extension.
inline EntropyValue von_neumann_entropy(const DensityMatrix& rho) {
    return {detail::entropy_of_hermitian(rho.matrix())};
}

/// D(rho || sigma) = tr[rho (log rho - log sigma)] for sigma in Pos(A),
/// +infinity when rho has weight outside sigma's support. The numerical
/// kernel of sigma is the span of eigenvectors with eigenvalue <= support_tol.
inline RelEntValue relative_entropy(const DensityMatrix& rho, const ComplexMatrix& sigma,
                                    double support_tol = 1e-12) {
    if (sigma.rows() != rho.dim() || !sigma.is_square())
        throw DimensionMismatch("relative_entropy operand dims");
    const double dev = sigma.hermitian_deviation();
    if (dev > 1e-10) throw NotHermitian(dev);

    const HermitianEig se = hermitian_eig(sigma);
    if (se.eigenvalues.back() < -1e-10) throw NotPSD(se.eigenvalues.back());
    const HermitianEig re = hermitian_eig(rho.matrix());

    const std::size_t n = rho.dim();
    // overlap2[j][i] = |<sigma_j | rho_i>|^2
    std::vector<std::vector<double>> overlap2(n, std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            Complex ip = 0.0;
            for (std::size_t r = 0; r < n; ++r)
                ip += std::conj(se.eigenvectors(r, j)) * re.eigenvectors(r, i);
            overlap2[j][i] = std::norm(ip);
        }

    for (std::size_t i = 0; i < n; ++i) {
        if (re.eigenvalues[i] <= support_tol) continue;
        double kernel_weight = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (se.eigenvalues[j] <= support_tol) kernel_weight += overlap2[j][i];
        if (kernel_weight > support_tol) return RelEntValue::inf();
    }

    double value = 0.0;
    for (double ev : re.eigenvalues) value += detail::xlogx(ev);
    for (std::size_t j = 0; j < n; ++j) {
        if (se.eigenvalues[j] <= support_tol) continue;
        double weight = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (re.eigenvalues[i] > 0.0) weight += re.eigenvalues[i] * overlap2[j][i];
        value -= weight * std::log(se.eigenvalues[j]);
    }
    return {value, false};
}

/// S(A|R) = S(RA) - S(R): uncertainty of the second (A) factor conditioned on
/// the first (R) factor. For channel outputs R is the reference system.
inline EntropyValue conditional_entropy(const BipartiteState& rho) {
    const double joint = detail::entropy_of_hermitian(rho.state().matrix());
    const double ref = detail::entropy_of_hermitian(rho.reduced_r());
    return {joint - ref};
}

struct VariationalResult {
    EntropyValue value;      // best -D found; equals S(A|R) at convergence
    ComplexMatrix sigma;     // the minimizing conditioner-side state found
    bool converged = false;  // false means the budget ran out (value still an outer bound)
    std::size_t evals = 0;
};

/// Variational form S(A|R) = -inf_sigma D(rho_RA || sigma_R (x) 1_A),
/// minimized over sigma = L L† / tr(L L†) with L complex lower-triangular,
/// by multi-start pattern search. The infimum sits at sigma = rho_R.
inline VariationalResult conditional_entropy_variational(const BipartiteState& rho,
                                                         std::size_t opt_budget = 20000) {
    const std::size_t dr = rho.dim_r();
    const std::size_t da = rho.dim_a();
    const std::size_t nparams = dr * dr; // dr real diagonal + 2 per strict lower entry
    const ComplexMatrix id_a = ComplexMatrix::identity(da);

    auto build_sigma = [dr](const std::vector<double>& x) -> ComplexMatrix {
        ComplexMatrix l(dr, dr);
        std::size_t idx = dr;
        for (std::size_t i = 0; i < dr; ++i) {
            l(i, i) = x[i];
            for (std::size_t j = 0; j < i; ++j) {
                l(i, j) = Complex(x[idx], x[idx + 1]);
                idx += 2;
            }
        }
        ComplexMatrix s = l * l.dagger();
        const double tr = s.trace().real();
        if (!(tr > 1e-14)) throw DomainError("degenerate Cholesky factor");
        s *= Complex(1.0 / tr, 0.0);
        return s;
    };

    auto objective = [&](const std::vector<double>& x) -> double {
        ComplexMatrix sigma(dr, dr);
        try {
            sigma = build_sigma(x);
        } catch (const DomainError&) {
            return 1e30;
        }
        const RelEntValue d = relative_entropy(rho.state(), kron(sigma, id_a));
        return d.is_infinite() ? 1e30 : d.value;
    };

    constexpr std::size_t kStarts = 4;
    const std::size_t budget_per_start = std::max<std::size_t>(opt_budget / kStarts, 2);

    PatternSearchResult best;
    bool have_best = false;
    for (std::size_t s = 0; s < kStarts; ++s) {
        std::vector<double> x0(nparams, 0.0);
        if (s == 0) {
            const double d = 1.0 / std::sqrt(static_cast<double>(dr));
            for (std::size_t i = 0; i < dr; ++i) x0[i] = d;
        } else {
            CounterRng rng = CounterRng::for_trial(0x7a1ed5eedULL, s);
            for (double& xi : x0) xi = rng.next_gaussian();
        }
        PatternSearchResult r = pattern_search(objective, std::move(x0), 0.2, 1e-6,
                                               budget_per_start);
        if (!have_best || r.value < best.value) {
            best = std::move(r);
            have_best = true;
        }
    }

    VariationalResult out{{-best.value}, build_sigma(best.x), best.converged, best.evals};
    return out;
}

/// Pointwise divergence against the uniformly mixing comparator:
/// D((id (x) N)(psi) || psi_R (x) 1_A), which equals -S(A|R) of the output.
/// Computed through the relative-entropy route so the conditional-entropy
/// identity stays an independent cross-check.
inline RelEntValue pointwise_channel_divergence(const KrausChannel& ch,
                                                const BipartiteState& psi) {
    if (psi.dim_a() != ch.dim_in())
        throw DimensionMismatch("pointwise divergence: probe A dim != channel input");
    const BipartiteState out = apply_extended(ch, psi);
    const ComplexMatrix comparator = kron(psi.reduced_r(), ComplexMatrix::identity(ch.dim_out()));
    return relative_entropy(out.state(), comparator);
}

} // namespace qmaxent

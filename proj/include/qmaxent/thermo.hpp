#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qmaxent/channels.hpp"
#include "qmaxent/eig.hpp"
#include "qmaxent/matrix.hpp"
#include "qmaxent/states.hpp"

namespace qmaxent {

/// Bounded Hermitian observable with cached spectral data.
class Hamiltonian {
public:
    explicit Hamiltonian(const ComplexMatrix& m, double tol = 1e-10)
        : matrix_(m), spectrum_(hermitian_eig(m, tol)) {}

    std::size_t dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }
    const HermitianEig& spectrum() const { return spectrum_; }

    double lambda_max() const { return spectrum_.eigenvalues.front(); }
    double lambda_min() const { return spectrum_.eigenvalues.back(); }
    double spectral_span() const { return lambda_max() - lambda_min(); }

    /// H proportional to the identity: every state has the same mean energy.
    bool is_degenerate() const {
        return spectral_span() <= 1e-12 * std::max({1.0, std::abs(lambda_max()),
                                                    std::abs(lambda_min())});
    }

private:
    ComplexMatrix matrix_;
    HermitianEig spectrum_;
};

/// (beta, Z, E) triple for a thermal state; k_B = 1, beta may be negative.
struct ThermalSpec {
    double beta = 0.0;
    double partition = 1.0;
    double energy = 0.0;
};

struct ThermalState {
    DensityMatrix state;
    ThermalSpec spec;
};

/// <H>_rho = tr[H rho].
inline double mean_energy(const Hamiltonian& h, const DensityMatrix& rho) {
    if (rho.dim() != h.dim()) throw DimensionMismatch("mean_energy dims");
    Complex t = 0.0;
    for (std::size_t i = 0; i < h.dim(); ++i)
        for (std::size_t k = 0; k < h.dim(); ++k) t += h.matrix()(i, k) * rho.matrix()(k, i);
    return t.real();
}

namespace detail {

/// Thermal weights exp(-beta(lambda - shift)) with the shift keeping every
/// exponent nonpositive, so nothing overflows for either sign of beta.
inline std::vector<double> thermal_weights(const std::vector<double>& evs, double beta,
                                           double& shift_out) {
    const double shift = beta >= 0.0 ? evs.back() : evs.front(); // eigenvalues are descending
    std::vector<double> w(evs.size());
    for (std::size_t i = 0; i < evs.size(); ++i) w[i] = std::exp(-beta * (evs[i] - shift));
    shift_out = shift;
    return w;
}

inline double thermal_energy_at(const std::vector<double>& evs, double beta) {
    double shift = 0.0;
    const std::vector<double> w = thermal_weights(evs, beta, shift);
    double z = 0.0, e = 0.0;
    for (std::size_t i = 0; i < evs.size(); ++i) {
        z += w[i];
        e += w[i] * evs[i];
    }
    return e / z;
}

} // namespace detail

/// gamma^beta = exp(-beta H)/Z, diagonal in H's eigenbasis.
inline ThermalState thermal_state(const Hamiltonian& h, double beta) {
    const HermitianEig& eig = h.spectrum();
    const std::size_t n = h.dim();
    double shift = 0.0;
    const std::vector<double> w = detail::thermal_weights(eig.eigenvalues, beta, shift);
    double zs = 0.0;
    for (double wi : w) zs += wi;

    double energy = 0.0;
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += eig.eigenvectors(i, k) * (w[k] / zs) * std::conj(eig.eigenvectors(j, k));
            g(i, j) = s;
        }
    for (std::size_t k = 0; k < n; ++k) energy += (w[k] / zs) * eig.eigenvalues[k];

    const double partition = std::exp(-beta * shift) * zs;
    return {DensityMatrix(g), {beta, partition, energy}};
}

/// Inverse of the strictly decreasing map beta -> <H>_{gamma^beta}. Bracketing
/// with expanding bounds, then bisection until |E(beta) - e| <= tol * span.
inline ThermalSpec beta_from_energy(const Hamiltonian& h, double e, double tol = 1e-10) {
    const double emin = h.lambda_min();
    const double emax = h.lambda_max();
    if (h.is_degenerate()) {
        const double flat = h.matrix().trace().real() / static_cast<double>(h.dim());
        if (std::abs(e - flat) <= 1e-12 * std::max(1.0, std::abs(flat)))
            return {0.0, static_cast<double>(h.dim()), flat};
        throw DegenerateHamiltonian("every state has energy " + std::to_string(flat) +
                                    ", requested " + std::to_string(e));
    }
    if (!(e > emin) || !(e < emax)) throw EnergyOutOfRange(e, emin, emax);

    const std::vector<double>& evs = h.spectrum().eigenvalues;
    auto f = [&](double beta) { return detail::thermal_energy_at(evs, beta) - e; };

    double lo = -1.0, hi = 1.0;
    for (int i = 0; i < 200 && f(lo) <= 0.0; ++i) lo *= 2.0;
    for (int i = 0; i < 200 && f(hi) >= 0.0; ++i) hi *= 2.0;

    const double atol = tol * h.spectral_span();
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 500; ++iter) {
        mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::abs(fm) <= atol) break;
        if (fm > 0.0)
            lo = mid;
        else
            hi = mid;
    }

    double shift = 0.0;
    const std::vector<double> w = detail::thermal_weights(evs, mid, shift);
    double zs = 0.0, energy = 0.0;
    for (std::size_t i = 0; i < evs.size(); ++i) {
        zs += w[i];
        energy += w[i] * evs[i];
    }
    return {mid, std::exp(-mid * shift) * zs, energy / zs};
}

/// Replacer channel whose fixed output is the thermal state at beta.
inline KrausChannel make_thermalizer(const Hamiltonian& h, double beta, std::size_t dim_in) {
    return make_replacer(thermal_state(h, beta).state, dim_in);
}

struct ChannelEnergy {
    double value = 0.0;
    DensityMatrix achiever; // pure input whose output attains the supremum
};

/// <H>_N = sup_rho tr[H N(rho)]. Since tr[H N(rho)] = tr[N†(H) rho], the
/// supremum is the top eigenvalue of N†(H), attained at its top eigenstate.
inline ChannelEnergy channel_mean_energy(const Hamiltonian& h, const KrausChannel& ch) {
    if (h.dim() != ch.dim_out()) throw DimensionMismatch("channel_mean_energy dims");
    const ComplexMatrix heis = adjoint_apply(ch, h.matrix());
    const HermitianEig eig = hermitian_eig(heis, 1e-8);
    std::vector<Complex> top(ch.dim_in());
    for (std::size_t r = 0; r < ch.dim_in(); ++r) top[r] = eig.eigenvectors(r, 0);
    return {eig.eigenvalues.front(),
            DensityMatrix::from_pure(PureState::from_unnormalized(std::move(top)))};
}

struct PinnedChannel {
    KrausChannel channel;
    double lambda = 0.0; // mixture weight on the anchor replacer; 0 means unchanged
};

namespace detail {

/// Extreme eigenstate of H: ground = true picks lambda_min's eigenvector.
inline PureState spectral_anchor(const Hamiltonian& h, bool ground) {
    const std::size_t col = ground ? h.dim() - 1 : 0;
    std::vector<Complex> v(h.dim());
    for (std::size_t r = 0; r < h.dim(); ++r) v[r] = h.spectrum().eigenvectors(r, col);
    return PureState::from_unnormalized(std::move(v));
}

} // namespace detail

/// Pin a channel's mean energy to targetE by mixing with a replacer anchored
/// at the spectral projector on the opposite side of targetE. Mean energy is
/// linear in the mixture weight because the replacer's adjoint contributes a
/// scalar multiple of the identity, so lambda solves a linear equation.
inline PinnedChannel energy_pinned_mixture(const KrausChannel& ch, const Hamiltonian& h,
                                           double target_e) {
    const double emin = h.lambda_min();
    const double emax = h.lambda_max();
    if (!(target_e > emin) || !(target_e < emax)) throw EnergyOutOfRange(target_e, emin, emax);

    const double a = channel_mean_energy(h, ch).value;
    if (std::abs(a - target_e) <= 1e-12 * std::max(1.0, h.spectral_span())) return {ch, 0.0};

    const bool ground = a > target_e;
    const PureState anchor = detail::spectral_anchor(h, ground);
    const double b = ground ? emin : emax;
    double lambda = (a - target_e) / (a - b);
    lambda = std::min(1.0, std::max(0.0, lambda));

    const KrausChannel replacer = make_replacer(DensityMatrix::from_pure(anchor), ch.dim_in());
    return {mix_channels(ch, replacer, lambda), lambda};
}

/// State-level analogue used by the max-entropy sampling experiments:
/// rho_E = (1-lambda) rho + lambda * anchor-projector, solved exactly.
inline DensityMatrix pin_state_energy(const DensityMatrix& rho, const Hamiltonian& h,
                                      double target_e) {
    const double emin = h.lambda_min();
    const double emax = h.lambda_max();
    if (!(target_e > emin) || !(target_e < emax)) throw EnergyOutOfRange(target_e, emin, emax);

    const double a = mean_energy(h, rho);
    if (std::abs(a - target_e) <= 1e-14 * std::max(1.0, h.spectral_span())) return rho;

    const bool ground = a > target_e;
    const PureState anchor = detail::spectral_anchor(h, ground);
    const double b = ground ? emin : emax;
    double lambda = (a - target_e) / (a - b);
    lambda = std::min(1.0, std::max(0.0, lambda));

    ComplexMatrix mixed = rho.matrix();
    mixed *= Complex(1.0 - lambda, 0.0);
    ComplexMatrix pa = anchor.projector();
    pa *= Complex(lambda, 0.0);
    mixed += pa;
    return DensityMatrix(mixed);
}

} // namespace qmaxent

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"
#include "qmaxent/entropy.hpp"
#include "qmaxent/rng.hpp"
#include "qmaxent/thermo.hpp"

using namespace qmaxent;
using test_helpers::random_hermitian;

namespace {

Hamiltonian qubit01() { return Hamiltonian(ComplexMatrix::diagonal({0.0, 1.0})); }

} // namespace

TEST_CASE("mean energy basics") {
    const Hamiltonian h = qubit01();
    REQUIRE(mean_energy(h, DensityMatrix::maximally_mixed(2)) ==
            Catch::Approx(0.5).margin(1e-14));
    REQUIRE(mean_energy(h, DensityMatrix(ComplexMatrix::diagonal({1.0, 0.0}))) ==
            Catch::Approx(0.0).margin(1e-14));
    REQUIRE(mean_energy(h, DensityMatrix(ComplexMatrix::diagonal({0.7, 0.3}))) ==
            Catch::Approx(0.3).margin(1e-14));
    REQUIRE_THROWS_AS(mean_energy(h, DensityMatrix::maximally_mixed(3)), DimensionMismatch);
}

TEST_CASE("thermal state at beta zero is maximally mixed") {
    CounterRng rng(3);
    const Hamiltonian h(random_hermitian(4, rng));
    const ThermalState t = thermal_state(h, 0.0);
    REQUIRE(max_abs_diff(t.state.matrix(), DensityMatrix::maximally_mixed(4).matrix()) <= 1e-12);
    REQUIRE(t.spec.energy == Catch::Approx(h.matrix().trace().real() / 4.0).margin(1e-12));
    REQUIRE(t.spec.partition == Catch::Approx(4.0).margin(1e-12));
}

TEST_CASE("two-level thermal state closed form at beta one") {
    const ThermalState t = thermal_state(qubit01(), 1.0);
    const double p0 = 1.0 / (1.0 + std::exp(-1.0));
    const double p1 = std::exp(-1.0) / (1.0 + std::exp(-1.0));
    REQUIRE(max_abs_diff(t.state.matrix(), ComplexMatrix::diagonal({p0, p1})) <= 1e-15);
    REQUIRE(t.spec.partition == Catch::Approx(1.0 + std::exp(-1.0)).margin(1e-14));
    REQUIRE(t.spec.energy == Catch::Approx(p1).margin(1e-14));
    // spec.energy is tr[H gamma] of the state actually built
    REQUIRE(mean_energy(qubit01(), t.state) == Catch::Approx(t.spec.energy).margin(1e-10));
}

TEST_CASE("deep positive beta freezes into the ground state") {
    const ThermalState t = thermal_state(qubit01(), 50.0);
    REQUIRE(max_abs_diff(t.state.matrix(), ComplexMatrix::diagonal({1.0, 0.0})) <= 1e-20);
}

TEST_CASE("beta from energy at the spectral midpoint is zero") {
    const ThermalSpec s = beta_from_energy(qubit01(), 0.5);
    REQUIRE(std::abs(s.beta) <= 1e-9);
}

TEST_CASE("beta from energy round trip on the two-level system") {
    const double e = std::exp(-1.0) / (1.0 + std::exp(-1.0));
    const ThermalSpec s = beta_from_energy(qubit01(), e);
    REQUIRE(s.beta == Catch::Approx(1.0).margin(1e-8));
}

TEST_CASE("population inversion gives negative beta") {
    // p1 = 3/4 requires exp(-beta) = 3.
    const ThermalSpec s = beta_from_energy(qubit01(), 0.75);
    REQUIRE(s.beta == Catch::Approx(std::log(1.0 / 3.0)).margin(1e-8));
}

TEST_CASE("beta from energy rejects out-of-span targets") {
    REQUIRE_THROWS_AS(beta_from_energy(qubit01(), 1.5), EnergyOutOfRange);
    REQUIRE_THROWS_AS(beta_from_energy(qubit01(), 0.0), EnergyOutOfRange);
    REQUIRE_THROWS_AS(beta_from_energy(qubit01(), 1.0), EnergyOutOfRange);
}

TEST_CASE("proportional-to-identity Hamiltonians are flagged") {
    const Hamiltonian flat(ComplexMatrix::diagonal({2.0, 2.0, 2.0}));
    REQUIRE_THROWS_AS(beta_from_energy(flat, 2.5), DegenerateHamiltonian);
    const ThermalSpec s = beta_from_energy(flat, 2.0); // matching energy: beta 0 by convention
    REQUIRE(s.beta == 0.0);
    REQUIRE(s.energy == Catch::Approx(2.0).margin(1e-14));
}

TEST_CASE("thermal energy is strictly decreasing in beta") {
    CounterRng rng(7);
    const Hamiltonian h(random_hermitian(4, rng));
    double prev = thermal_state(h, -5.0).spec.energy;
    for (double beta = -4.5; beta <= 5.0; beta += 0.5) {
        const double e = thermal_state(h, beta).spec.energy;
        REQUIRE(e < prev - 1e-12);
        prev = e;
    }
}

TEST_CASE("beta-energy round trips on random Hamiltonians") {
    CounterRng rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t d = 2 + (rep % 5);
        const Hamiltonian h(random_hermitian(d, rng));
        for (double q : {0.2, 0.5, 0.8}) {
            const double e = h.lambda_min() + q * h.spectral_span();
            const ThermalSpec s = beta_from_energy(h, e);
            REQUIRE(std::abs(s.energy - e) <= 1e-8);
            REQUIRE(std::abs(thermal_state(h, s.beta).spec.energy - e) <= 1e-8);
        }
    }
}

TEST_CASE("thermalizer outputs the thermal state for every input") {
    const Hamiltonian h = qubit01();
    const KrausChannel t = make_thermalizer(h, 1.0, 2);
    const ThermalState gamma = thermal_state(h, 1.0);
    CounterRng rng(13);
    const DensityMatrix rho = random_density(2, 2, rng);
    REQUIRE(max_abs_diff(apply(t, rho).matrix(), gamma.state.matrix()) <= 1e-12);
    // beta = 0 reduces to the completely depolarizing channel
    const KrausChannel dep = make_thermalizer(h, 0.0, 2);
    REQUIRE(max_abs_diff(apply(dep, rho).matrix(),
                         DensityMatrix::maximally_mixed(2).matrix()) <= 1e-12);
    // deep beta freezes into the ground-state replacer
    const KrausChannel cold = make_thermalizer(h, 50.0, 2);
    REQUIRE(max_abs_diff(apply(cold, rho).matrix(), ComplexMatrix::diagonal({1.0, 0.0})) <=
            1e-12);
}

TEST_CASE("channel mean energy of a replacer is the fixed state's energy") {
    CounterRng rng(17);
    const Hamiltonian h(random_hermitian(2, rng));
    const DensityMatrix omega = random_density(2, 2, rng);
    const ChannelEnergy ce = channel_mean_energy(h, make_replacer(omega, 2));
    REQUIRE(ce.value == Catch::Approx(mean_energy(h, omega)).margin(1e-10));
}

TEST_CASE("channel mean energy of the identity is the top eigenvalue") {
    const KrausChannel id(2, 2, {ComplexMatrix::identity(2)});
    const ChannelEnergy ce = channel_mean_energy(qubit01(), id);
    REQUIRE(ce.value == Catch::Approx(1.0).margin(1e-12));
    // achieved at the excited state
    REQUIRE(max_abs_diff(ce.achiever.matrix(), ComplexMatrix::diagonal({0.0, 1.0})) <= 1e-12);
}

TEST_CASE("channel mean energy of the completely depolarizing channel") {
    const ChannelEnergy ce = channel_mean_energy(qubit01(), make_depolarizing(2));
    REQUIRE(ce.value == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("channel mean energy dominates sampled outputs and is achieved") {
    CounterRng rng(19);
    for (int rep = 0; rep < 5; ++rep) {
        const Hamiltonian h(random_hermitian(3, rng));
        const KrausChannel ch = random_channel(3, 3, 3, rng);
        const ChannelEnergy ce = channel_mean_energy(h, ch);
        REQUIRE(mean_energy(h, apply(ch, ce.achiever)) == Catch::Approx(ce.value).margin(1e-10));
        for (int probe = 0; probe < 40; ++probe) {
            const DensityMatrix rho = random_density(3, 3, rng);
            REQUIRE(mean_energy(h, apply(ch, rho)) <= ce.value + 1e-10);
        }
    }
}

TEST_CASE("mixture mean energy is linear in the replacer weight") {
    CounterRng rng(23);
    for (int rep = 0; rep < 5; ++rep) {
        const Hamiltonian h(random_hermitian(2, rng));
        const KrausChannel n = random_channel(2, 2, 2, rng);
        const DensityMatrix omega = random_density(2, 2, rng);
        const KrausChannel r = make_replacer(omega, 2);
        const double lambda = 0.37;
        const double mixed = channel_mean_energy(h, mix_channels(n, r, lambda)).value;
        const double expect = (1.0 - lambda) * channel_mean_energy(h, n).value +
                              lambda * mean_energy(h, omega);
        REQUIRE(std::abs(mixed - expect) <= 1e-10);
    }
}

TEST_CASE("energy pinning solves the linear weight exactly") {
    // a = 1 from the identity channel under H = diag(0,1), anchor b = 0,
    // target 0.25: lambda = 0.75.
    const KrausChannel id(2, 2, {ComplexMatrix::identity(2)});
    const PinnedChannel pinned = energy_pinned_mixture(id, qubit01(), 0.25);
    REQUIRE(pinned.lambda == Catch::Approx(0.75).margin(1e-12));
    REQUIRE(channel_mean_energy(qubit01(), pinned.channel).value ==
            Catch::Approx(0.25).margin(1e-8));
}

TEST_CASE("energy pinning hits the target on random channels") {
    CounterRng rng(29);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t d = 2 + (rep % 2);
        const Hamiltonian h(random_hermitian(d, rng));
        const KrausChannel ch = random_channel(d, d, d, rng);
        const double target = h.lambda_min() + 0.4 * h.spectral_span();
        const PinnedChannel pinned = energy_pinned_mixture(ch, h, target);
        REQUIRE(std::abs(channel_mean_energy(h, pinned.channel).value - target) <= 1e-8);
    }
    REQUIRE_THROWS_AS(
        energy_pinned_mixture(random_channel(2, 2, 2, rng), qubit01(), 1.25),
        EnergyOutOfRange);
}

TEST_CASE("already pinned channels come back unchanged") {
    const Hamiltonian h = qubit01();
    const ThermalState gamma = thermal_state(h, 1.0);
    const KrausChannel t = make_thermalizer(h, 1.0, 2);
    const PinnedChannel pinned = energy_pinned_mixture(t, h, gamma.spec.energy);
    REQUIRE(pinned.lambda == 0.0);
    REQUIRE(pinned.channel.kraus().size() == t.kraus().size());
}

TEST_CASE("state-level pinning hits the target exactly") {
    CounterRng rng(31);
    const Hamiltonian h(random_hermitian(3, rng));
    const double target = h.lambda_min() + 0.3 * h.spectral_span();
    for (int rep = 0; rep < 20; ++rep) {
        const DensityMatrix rho = random_density(3, 3, rng);
        const DensityMatrix pinned = pin_state_energy(rho, h, target);
        REQUIRE(std::abs(mean_energy(h, pinned) - target) <= 1e-10);
    }
}

TEST_CASE("thermal states maximize entropy at fixed energy") {
    CounterRng rng(37);
    const Hamiltonian h = qubit01();
    const double target = 0.3;
    const ThermalSpec spec = beta_from_energy(h, target);
    const ThermalState gamma = thermal_state(h, spec.beta);
    const double ceiling = von_neumann_entropy(gamma.state).value;
    for (int rep = 0; rep < 100; ++rep) {
        const DensityMatrix pinned = pin_state_energy(random_density(2, 2, rng), h, target);
        const double s = von_neumann_entropy(pinned).value;
        REQUIRE(s <= ceiling + 1e-8);
        if (s >= ceiling - 1e-8)
            REQUIRE(max_abs_diff(pinned.matrix(), gamma.state.matrix()) <= 1e-6);
    }
    REQUIRE(von_neumann_entropy(gamma.state).value == Catch::Approx(ceiling).margin(1e-12));
}

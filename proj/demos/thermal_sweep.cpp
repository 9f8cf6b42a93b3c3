// Sweeps the inverse temperature of the qubit01 preset and prints the thermal
// energy, entropy, and partition function, showing the monotone beta <-> E map.

#include <cstdio>

#include "qmaxent/entropy.hpp"
#include "qmaxent/io.hpp"
#include "qmaxent/thermo.hpp"

int main() {
    using namespace qmaxent;
    const Hamiltonian h = *hamiltonian_preset("qubit01");
    std::printf("%8s %16s %16s %16s\n", "beta", "E", "S(gamma)", "Z");
    for (double beta = -4.0; beta <= 4.0 + 1e-9; beta += 0.5) {
        const ThermalState t = thermal_state(h, beta);
        std::printf("%8.2f %16.12f %16.12f %16.12f\n", beta, t.spec.energy,
                    von_neumann_entropy(t.state).value, t.spec.partition);
    }
    const ThermalSpec spec = beta_from_energy(h, 0.25);
    std::printf("\nbeta with mean energy 0.25: %.12f\n", spec.beta);
    return 0;
}

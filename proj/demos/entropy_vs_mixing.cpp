// Channel entropy along the family (1-w) U + w D for a random unitary U and
// the completely depolarizing channel D: the entropy climbs from -ln d toward
// the ln d ceiling as the channel loses its correlation with the reference.

#include <cstdio>

#include "qmaxent/maxent.hpp"

int main() {
    using namespace qmaxent;
    CounterRng rng(7);
    const KrausChannel unitary = random_channel(2, 2, 1, rng);
    const KrausChannel depolarizing = make_depolarizing(2);

    std::printf("%6s %18s %10s\n", "w", "S[N] (nats)", "converged");
    for (double w = 0.0; w <= 1.0 + 1e-9; w += 0.125) {
        const KrausChannel mixed = mix_channels(unitary, depolarizing, w);
        const EntropyCertificate cert = channel_entropy(mixed, 6, 1e-7, 42);
        std::printf("%6.3f %18.12f %10s\n", w, cert.value, cert.converged ? "yes" : "no");
    }
    return 0;
}

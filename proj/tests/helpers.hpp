#pragma once

#include <cstdint>

#include "qmaxent/channels.hpp"
#include "qmaxent/matrix.hpp"
#include "qmaxent/rng.hpp"

namespace test_helpers {

using qmaxent::Complex;
using qmaxent::ComplexMatrix;

inline ComplexMatrix random_hermitian(std::size_t dim, qmaxent::CounterRng& rng,
                                      double scale = 1.0) {
    ComplexMatrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = scale * rng.next_complex_gaussian();
    ComplexMatrix h(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    return h;
}

inline ComplexMatrix random_unitary(std::size_t dim, qmaxent::CounterRng& rng) {
    return qmaxent::random_channel(dim, dim, 1, rng).kraus().front();
}

inline ComplexMatrix pauli_x() {
    return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}};
}

} // namespace test_helpers

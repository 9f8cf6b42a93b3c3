#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"
#include "qmaxent/eig.hpp"
#include "qmaxent/matrix.hpp"
#include "qmaxent/rng.hpp"

using namespace qmaxent;
using test_helpers::random_hermitian;

TEST_CASE("constructors reject invalid input") {
    REQUIRE_THROWS_AS(ComplexMatrix(0, 3), DimensionMismatch);
    REQUIRE_THROWS_AS(ComplexMatrix(65, 65), DimensionMismatch);
    REQUIRE_THROWS_AS(ComplexMatrix(2, 2, std::vector<Complex>(3)), DimensionMismatch);
    std::vector<Complex> bad(4, Complex(0.0, 0.0));
    bad[2] = Complex(std::nan(""), 0.0);
    REQUIRE_THROWS_AS(ComplexMatrix(2, 2, bad), ParseError);
}

TEST_CASE("hermitian_eig on the identity") {
    const auto eig = hermitian_eig(ComplexMatrix::identity(2));
    REQUIRE(eig.eigenvalues[0] == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(eig.eigenvalues[1] == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(max_abs_diff(eig.reconstruct(), ComplexMatrix::identity(2)) <= 1e-10);
}

TEST_CASE("hermitian_eig on diag(0,1) sorts descending") {
    const auto eig = hermitian_eig(ComplexMatrix::diagonal({0.0, 1.0}));
    REQUIRE(eig.eigenvalues[0] == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(eig.eigenvalues[1] == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("hermitian_eig on Pauli X") {
    // Characteristic polynomial by hand: lambda^2 - 1 = 0.
    const auto eig = hermitian_eig(test_helpers::pauli_x());
    REQUIRE(eig.eigenvalues[0] == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(eig.eigenvalues[1] == Catch::Approx(-1.0).margin(1e-12));
    REQUIRE(max_abs_diff(eig.reconstruct(), test_helpers::pauli_x()) <= 1e-10);
}

TEST_CASE("hermitian_eig rejects bad input") {
    REQUIRE_THROWS_AS(hermitian_eig(ComplexMatrix(2, 3)), NotSquare);
    ComplexMatrix m{{0.0, 1.0}, {0.0, 0.0}};
    REQUIRE_THROWS_AS(hermitian_eig(m), NotHermitian);
}

TEST_CASE("random Hermitian reconstruction and orthonormality") {
    CounterRng rng(42);
    for (std::size_t dim : {2, 3, 5, 8}) {
        for (int rep = 0; rep < 8; ++rep) {
            const ComplexMatrix m = random_hermitian(dim, rng);
            const auto eig = hermitian_eig(m);
            REQUIRE(max_abs_diff(eig.reconstruct(), m) <= 1e-10);
            const ComplexMatrix vtv = eig.eigenvectors.dagger() * eig.eigenvectors;
            REQUIRE(max_abs_diff(vtv, ComplexMatrix::identity(dim)) <= 1e-10);
            for (std::size_t i = 0; i + 1 < dim; ++i)
                REQUIRE(eig.eigenvalues[i] >= eig.eigenvalues[i + 1]);
        }
    }
}

TEST_CASE("hermitian_eig is deterministic") {
    CounterRng rng(7);
    const ComplexMatrix m = random_hermitian(4, rng);
    const auto a = hermitian_eig(m);
    const auto b = hermitian_eig(m);
    REQUIRE(a.eigenvalues == b.eigenvalues);
    REQUIRE(max_abs_diff(a.eigenvectors, b.eigenvectors) == 0.0);
}

TEST_CASE("matrix_func basics") {
    const ComplexMatrix zero(2, 2);
    REQUIRE(max_abs_diff(matrix_func(zero, [](double x) { return std::exp(x); }),
                         ComplexMatrix::identity(2)) <= 1e-14);

    const ComplexMatrix d = ComplexMatrix::diagonal({0.3, -0.7});
    const ComplexMatrix back = matrix_func(matrix_func(d, [](double x) { return std::exp(x); }),
                                           [](double x) { return std::log(x); });
    REQUIRE(max_abs_diff(back, d) <= 1e-8);

    const ComplexMatrix e = matrix_func(ComplexMatrix::diagonal({0.0, 1.0}),
                                        [](double x) { return std::exp(-x); });
    REQUIRE(max_abs_diff(e, ComplexMatrix::diagonal({1.0, std::exp(-1.0)})) <= 1e-13);
}

TEST_CASE("matrix_func domain error") {
    REQUIRE_THROWS_AS(matrix_func(ComplexMatrix::diagonal({1.0, 0.0}),
                                  [](double x) { return std::log(x); }),
                      DomainError);
}

TEST_CASE("matrix_func exp/log composition on random Hermitian") {
    CounterRng rng(11);
    for (int rep = 0; rep < 5; ++rep) {
        ComplexMatrix m = random_hermitian(4, rng);
        // Scale so the spectrum stays within [-5, 5] (Gershgorin bound).
        m *= Complex(5.0 / (4.0 * std::max(m.max_abs(), 1.0)), 0.0);
        const ComplexMatrix back = matrix_func(
            matrix_func(m, [](double x) { return std::exp(x); }),
            [](double x) { return std::log(x); });
        REQUIRE(max_abs_diff(back, m) <= 1e-8);
    }
}

TEST_CASE("kron basics") {
    REQUIRE(max_abs_diff(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
                         ComplexMatrix::identity(4)) == 0.0);
    REQUIRE(max_abs_diff(kron(ComplexMatrix::diagonal({1.0, 0.0}),
                              ComplexMatrix::diagonal({1.0, 0.0})),
                         ComplexMatrix::diagonal({1.0, 0.0, 0.0, 0.0})) == 0.0);
}

TEST_CASE("kron(X,X) maps e0 to e3") {
    const ComplexMatrix xx = kron(test_helpers::pauli_x(), test_helpers::pauli_x());
    ComplexMatrix e0(4, 1);
    e0(0, 0) = 1.0;
    const ComplexMatrix mapped = xx * e0;
    for (std::size_t i = 0; i < 4; ++i)
        REQUIRE(std::abs(mapped(i, 0) - Complex(i == 3 ? 1.0 : 0.0, 0.0)) <= 1e-15);
}

TEST_CASE("kron mixed-product identity") {
    CounterRng rng(13);
    for (std::size_t dim : {2, 3}) {
        const ComplexMatrix a = random_hermitian(dim, rng);
        const ComplexMatrix b = random_hermitian(dim, rng);
        const ComplexMatrix c = random_hermitian(dim, rng);
        const ComplexMatrix d = random_hermitian(dim, rng);
        REQUIRE(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) <= 1e-12);
    }
}

TEST_CASE("partial trace of a product operator") {
    CounterRng rng(17);
    const ComplexMatrix ra = random_hermitian(2, rng);
    const ComplexMatrix rb = random_hermitian(3, rng);
    const ComplexMatrix joint = kron(ra, rb);
    ComplexMatrix expected_b = rb;
    expected_b *= ra.trace();
    REQUIRE(max_abs_diff(partial_trace(joint, 2, 3, Keep::B), expected_b) <= 1e-12);
    ComplexMatrix expected_a = ra;
    expected_a *= rb.trace();
    REQUIRE(max_abs_diff(partial_trace(joint, 2, 3, Keep::A), expected_a) <= 1e-12);
}

TEST_CASE("partial trace of the maximally entangled state") {
    ComplexMatrix phi(4, 4);
    for (std::size_t i : {0u, 3u})
        for (std::size_t j : {0u, 3u}) phi(i, j) = 0.5;
    ComplexMatrix half = ComplexMatrix::identity(2);
    half *= Complex(0.5, 0.0);
    REQUIRE(max_abs_diff(partial_trace(phi, 2, 2, Keep::B), half) <= 1e-15);
    REQUIRE(max_abs_diff(partial_trace(phi, 2, 2, Keep::A), half) <= 1e-15);
}

TEST_CASE("partial trace preserves trace and hermiticity") {
    CounterRng rng(19);
    const ComplexMatrix m = random_hermitian(6, rng);
    for (Keep keep : {Keep::A, Keep::B}) {
        const ComplexMatrix red = partial_trace(m, 2, 3, keep);
        REQUIRE(std::abs(red.trace() - m.trace()) <= 1e-12);
        REQUIRE(red.hermitian_deviation() <= 1e-12);
    }
}

TEST_CASE("partial trace linearity") {
    CounterRng rng(23);
    const ComplexMatrix m = random_hermitian(4, rng);
    const ComplexMatrix n = random_hermitian(4, rng);
    const Complex alpha(0.3, 0.0), beta(-1.7, 0.0);
    ComplexMatrix combo = m;
    combo *= alpha;
    ComplexMatrix n2 = n;
    n2 *= beta;
    combo += n2;
    ComplexMatrix expect = partial_trace(m, 2, 2, Keep::A);
    expect *= alpha;
    ComplexMatrix nb = partial_trace(n, 2, 2, Keep::A);
    nb *= beta;
    expect += nb;
    REQUIRE(max_abs_diff(partial_trace(combo, 2, 2, Keep::A), expect) <= 1e-12);
}

TEST_CASE("partial trace dimension mismatch") {
    REQUIRE_THROWS_AS(partial_trace(ComplexMatrix::identity(5), 2, 2, Keep::A),
                      DimensionMismatch);
}

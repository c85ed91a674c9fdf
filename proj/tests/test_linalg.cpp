#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "hcgame/linalg.hpp"
#include "hcgame/optimize.hpp"
#include "hcgame/quantum.hpp"
#include "oracles.hpp"

using namespace hcgame;

namespace {

ComplexMatrix random_matrix(size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ComplexMatrix a(n);
    for (size_t r = 0; r < n; r++)
        for (size_t c = 0; c < n; c++) a(r, c) = Complex(g(rng), g(rng));
    return a;
}

StateVector random_state(size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    StateVector v(n);
    for (size_t k = 0; k < n; k++) v[k] = Complex(g(rng), g(rng));
    v *= 1.0 / v.norm();
    return v;
}

}  // namespace

TEST(Matrix, PauliAlgebra) {
    const ComplexMatrix x{{0, 1}, {1, 0}};
    const ComplexMatrix y{{0, Complex(0, -1)}, {Complex(0, 1), 0}};
    const ComplexMatrix z{{1, 0}, {0, -1}};
    EXPECT_LT(max_abs_diff(x * y, z * Complex(0, 1)), 1e-15);
    EXPECT_LT(max_abs_diff(commutator(x, z), y * Complex(0, -2)), 1e-15);
    EXPECT_TRUE(is_reflection(x));
    EXPECT_TRUE(is_hermitian(y));
    EXPECT_FALSE(is_hermitian(x * Complex(0, 1)));
}

TEST(Matrix, ZThetaIsReflection) {
    for (double t : {0.0, 0.3, std::numbers::pi / 4, 2.0, -1.1}) {
        const ComplexMatrix z = z_theta(t);
        EXPECT_TRUE(is_reflection(z));
        EXPECT_LT(max_abs_diff(outcome_projector(t, 1) + outcome_projector(t, -1), ComplexMatrix::identity(2)), 1e-15);
        EXPECT_LT(max_abs_diff(outcome_projector(t, 1) * outcome_projector(t, 1), outcome_projector(t, 1)), 1e-15);
    }
}

TEST(Matrix, TensorMatchesDenseKron) {
    std::mt19937_64 rng(1);
    const ComplexMatrix a = random_matrix(2, rng), b = random_matrix(4, rng);
    const ComplexMatrix t = tensor(a, b);
    oracle::Dense da(2, std::vector<oracle::C>(2)), db(4, std::vector<oracle::C>(4));
    for (size_t r = 0; r < 2; r++)
        for (size_t c = 0; c < 2; c++) da[r][c] = a(r, c);
    for (size_t r = 0; r < 4; r++)
        for (size_t c = 0; c < 4; c++) db[r][c] = b(r, c);
    const auto want = oracle::kron(da, db);
    for (size_t r = 0; r < 8; r++)
        for (size_t c = 0; c < 8; c++) EXPECT_LT(std::abs(t(r, c) - want[r][c]), 1e-14);
}

TEST(Matrix, SingleQubitApplicationMatchesEmbedding) {
    std::mt19937_64 rng(2);
    for (int n = 1; n <= 5; n++) {
        for (int q = 1; q <= n; q++) {
            const ComplexMatrix u = random_matrix(2, rng);
            const StateVector psi = random_state(size_t{1} << n, rng);
            const StateVector fast = apply_single_qubit(u, psi, n, q);
            const StateVector slow = apply(embed_single_qubit(u, n, q), psi);
            for (size_t k = 0; k < psi.dim(); k++) {
                EXPECT_LT(std::abs(fast[k] - slow[k]), 1e-13);
            }
        }
    }
}

TEST(Matrix, QubitOneIsMostSignificant) {
    const ComplexMatrix x{{0, 1}, {1, 0}};
    StateVector zero(8);
    zero[0] = 1;
    const StateVector flipped = apply_single_qubit(x, zero, 3, 1);
    EXPECT_EQ(flipped[4], Complex(1));
}

TEST(Matrix, MatpowMatchesRepeatedProduct) {
    std::mt19937_64 rng(3);
    const ComplexMatrix a = random_matrix(3, rng) * Complex(0.5);
    ComplexMatrix acc = ComplexMatrix::identity(3);
    for (unsigned k = 0; k <= 9; k++) {
        EXPECT_LT(max_abs_diff(matpow(a, k), acc), 1e-10) << k;
        acc = acc * a;
    }
    EXPECT_THROW(matpow(a, 65), std::invalid_argument);
}

TEST(Expectation, RealForHermitianAndRejectsOthers) {
    std::mt19937_64 rng(4);
    const ComplexMatrix a = random_matrix(4, rng);
    const ComplexMatrix h = a + a.adjoint();
    const StateVector psi = random_state(4, rng);
    const double e = expectation(h, psi);
    EXPECT_NEAR(e, psi.inner(apply(h, psi)).real(), 1e-12);
    EXPECT_THROW(expectation(a, psi), std::invalid_argument);
}

TEST(Expectation, GhzCorrelators) {
    const ComplexMatrix x{{0, 1}, {1, 0}};
    const ComplexMatrix z{{1, 0}, {0, -1}};
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const StateVector g = ghz_state(3);
    EXPECT_NEAR(expectation(tensor(tensor(z, z), i2), g), 1.0, 1e-14);
    EXPECT_NEAR(expectation(tensor(tensor(x, x), x), g), 1.0, 1e-14);
    EXPECT_NEAR(expectation(tensor(tensor(x, z), i2), g), 0.0, 1e-14);
    EXPECT_NEAR(expectation(tensor(tensor(i2, x), x), g), 0.0, 1e-14);
}

TEST(Optimize, GridGoldenFindsInteriorMaximum) {
    const ScalarMaximum r = grid_golden_maximize([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0);
    EXPECT_NEAR(r.x, 0.3, 1e-7);
    const ScalarMaximum e = grid_golden_maximize([](double x) { return x; }, 0.0, 2.0);
    EXPECT_NEAR(e.x, 2.0, 1e-9);
}

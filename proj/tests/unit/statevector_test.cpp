#include "hqnn/errors.hpp"
#include "hqnn/rng.hpp"
#include "hqnn/statevector.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace hqnn;

namespace {

// <X> on one qubit of a 2-qubit-or-smaller state, brute force.
double expect_x_qubit0(const StateVector &psi) {
    const auto a = psi.amplitudes();
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < a.size(); k += 2) {
        acc += std::conj(a[k]) * a[k + 1] + std::conj(a[k + 1]) * a[k];
    }
    return acc.real();
}

} // namespace

TEST_CASE("zero state initialization") {
    for (int q : {1, 2, 10}) {
        StateVector psi(q);
        CHECK(psi.dim() == std::size_t{1} << q);
        CHECK(psi.amplitudes()[0] == std::complex<double>{1.0, 0.0});
        for (std::size_t k = 1; k < psi.dim(); ++k) {
            CHECK(psi.amplitudes()[k] == std::complex<double>{0.0, 0.0});
        }
    }
    CHECK_THROWS_AS(StateVector(0), ConfigError);
    CHECK_THROWS_AS(StateVector(17), ConfigError);
    CHECK_THROWS_AS(StateVector(-3), ConfigError);
}

TEST_CASE("ry gate basics") {
    StateVector psi(1);
    psi.apply_ry(0, std::numbers::pi);
    CHECK(std::abs(psi.amplitudes()[0]) < 1e-15);
    CHECK(std::abs(psi.amplitudes()[1] - 1.0) < 1e-15);

    StateVector id_check(2);
    id_check.apply_ry(1, 0.7);
    const auto before = std::vector<std::complex<double>>(
        id_check.amplitudes().begin(), id_check.amplitudes().end());
    id_check.apply_ry(0, 0.0);
    for (std::size_t k = 0; k < id_check.dim(); ++k) {
        CHECK(id_check.amplitudes()[k] == before[k]);
    }

    StateVector plus(1);
    plus.apply_ry(0, std::numbers::pi / 2);
    CHECK(plus.amplitudes()[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(plus.amplitudes()[1].real() == doctest::Approx(1.0 / std::sqrt(2.0)));

    CHECK_THROWS_AS(psi.apply_ry(1, 0.1), std::out_of_range);
    CHECK_THROWS_AS(psi.apply_ry(-1, 0.1), std::out_of_range);
}

TEST_CASE("rz gate basics") {
    // Z eigenstate: probabilities unchanged, global phase only.
    StateVector psi(1);
    psi.apply_rz(0, 1.3);
    CHECK(std::norm(psi.amplitudes()[0]) == doctest::Approx(1.0));
    CHECK(psi.expect_z(0) == doctest::Approx(1.0));

    // RZ(pi) flips <X> on |+>.
    StateVector plus(1);
    plus.apply_ry(0, std::numbers::pi / 2);
    CHECK(expect_x_qubit0(plus) == doctest::Approx(1.0));
    plus.apply_rz(0, std::numbers::pi);
    CHECK(expect_x_qubit0(plus) == doctest::Approx(-1.0));

    // RZ(0) is the identity.
    StateVector other(2);
    other.apply_ry(0, 0.4);
    const auto before = std::vector<std::complex<double>>(
        other.amplitudes().begin(), other.amplitudes().end());
    other.apply_rz(1, 0.0);
    for (std::size_t k = 0; k < other.dim(); ++k) {
        CHECK(other.amplitudes()[k] == before[k]);
    }
}

TEST_CASE("cnot truth table and bell state") {
    // |01> (qubit 0 set) -> |11>
    StateVector psi(2);
    psi.apply_ry(0, std::numbers::pi);
    psi.apply_cnot(0, 1);
    CHECK(std::abs(psi.amplitudes()[3]) == doctest::Approx(1.0));

    // |00> unchanged
    StateVector zero(2);
    zero.apply_cnot(0, 1);
    CHECK(zero.amplitudes()[0].real() == doctest::Approx(1.0));

    // (|00> + |10>)/sqrt(2) -> Bell
    StateVector bell(2);
    bell.apply_ry(0, std::numbers::pi / 2);
    bell.apply_cnot(0, 1);
    CHECK(bell.amplitudes()[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(bell.amplitudes()[3].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(bell.amplitudes()[1]) < 1e-15);
    CHECK(std::abs(bell.amplitudes()[2]) < 1e-15);

    CHECK_THROWS_AS(psi.apply_cnot(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(psi.apply_cnot(0, 2), std::out_of_range);
}

TEST_CASE("cnot on non-adjacent qubits") {
    // |001> with control 0, target 2 -> |101>
    StateVector psi(3);
    psi.apply_ry(0, std::numbers::pi);
    psi.apply_cnot(0, 2);
    CHECK(std::abs(psi.amplitudes()[0b101]) == doctest::Approx(1.0));
    // reversed orientation: control 2 now set, flips qubit 0 back
    psi.apply_cnot(2, 0);
    CHECK(std::abs(psi.amplitudes()[0b100]) == doctest::Approx(1.0));
}

TEST_CASE("expect_z analytic values") {
    StateVector psi(1);
    CHECK(psi.expect_z(0) == 1.0);
    psi.apply_ry(0, std::numbers::pi);
    CHECK(psi.expect_z(0) == doctest::Approx(-1.0));

    for (double theta : {0.3, 1.1, 2.9}) {
        StateVector s(1);
        s.apply_ry(0, theta);
        CHECK(s.expect_z(0) == doctest::Approx(std::cos(theta)).epsilon(1e-12));
    }
}

TEST_CASE("norm preservation over random gate sequences") {
    Rng rng(2024);
    for (int trial = 0; trial < 8; ++trial) {
        const int q = 2 + static_cast<int>(rng.uniform_index(9)); // up to 10
        StateVector psi(q);
        for (int g = 0; g < 200; ++g) {
            const int kind = static_cast<int>(rng.uniform_index(3));
            const int target = static_cast<int>(rng.uniform_index(q));
            if (kind == 0) {
                psi.apply_ry(target, rng.uniform(-6.3, 6.3));
            } else if (kind == 1) {
                psi.apply_rz(target, rng.uniform(-6.3, 6.3));
            } else {
                int other = static_cast<int>(rng.uniform_index(q - 1));
                other += other >= target;
                psi.apply_cnot(target, other);
            }
        }
        CHECK(std::abs(psi.norm_squared() - 1.0) < 1e-10);
    }
}

TEST_CASE("unitarity round trips") {
    Rng rng(99);
    StateVector psi(3);
    for (int g = 0; g < 30; ++g) {
        psi.apply_ry(static_cast<int>(rng.uniform_index(3)), rng.uniform(0, 6.3));
        psi.apply_rz(static_cast<int>(rng.uniform_index(3)), rng.uniform(0, 6.3));
    }
    const auto before = std::vector<std::complex<double>>(
        psi.amplitudes().begin(), psi.amplitudes().end());

    psi.apply_cnot(0, 2);
    psi.apply_cnot(0, 2);
    psi.apply_ry(1, 0.77);
    psi.apply_ry(1, -0.77);
    psi.apply_rz(2, -1.9);
    psi.apply_rz(2, 1.9);
    for (std::size_t k = 0; k < psi.dim(); ++k) {
        CHECK(std::abs(psi.amplitudes()[k] - before[k]) < 1e-12);
    }
}

TEST_CASE("expect_z stays in [-1, 1]") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        StateVector psi(4);
        for (int g = 0; g < 40; ++g) {
            psi.apply_ry(static_cast<int>(rng.uniform_index(4)),
                         rng.uniform(-10, 10));
            psi.apply_rz(static_cast<int>(rng.uniform_index(4)),
                         rng.uniform(-10, 10));
        }
        for (int q = 0; q < 4; ++q) {
            const double z = psi.expect_z(q);
            CHECK(z >= -1.0 - 1e-12);
            CHECK(z <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("pauli gates used by the adjoint pass") {
    // Y|0> = i|1>
    StateVector psi(1);
    psi.apply_pauli_y(0);
    CHECK(psi.amplitudes()[1] == std::complex<double>{0.0, 1.0});
    // Z|1> = -|1>
    StateVector one(1);
    one.apply_ry(0, std::numbers::pi);
    one.apply_pauli_z(0);
    CHECK(one.amplitudes()[1].real() == doctest::Approx(-1.0));
}

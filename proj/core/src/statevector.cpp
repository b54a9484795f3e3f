#include "hqnn/statevector.hpp"

#include "hqnn/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace hqnn {

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw ConfigError("num_qubits must be in [1, " +
                          std::to_string(kMaxQubits) + "], got " +
                          std::to_string(num_qubits));
    }
    amps_.assign(std::size_t{1} << num_qubits, {0.0, 0.0});
    amps_[0] = 1.0;
}

void StateVector::set_zero_state() {
    std::fill(amps_.begin(), amps_.end(), std::complex<double>{0.0, 0.0});
    amps_[0] = 1.0;
}

void StateVector::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= num_qubits_) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) +
                                " out of range for " +
                                std::to_string(num_qubits_) + " qubits");
    }
}

void StateVector::apply_ry(int qubit, double angle) {
    check_qubit(qubit);
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    const std::size_t mask = std::size_t{1} << qubit;
    const std::size_t lo = mask - 1;
    const std::size_t hi = ~lo;
    const std::size_t half = amps_.size() >> 1;
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t i0 = ((i & hi) << 1) | (i & lo);
        const std::size_t i1 = i0 | mask;
        const auto a0 = amps_[i0];
        const auto a1 = amps_[i1];
        amps_[i0] = c * a0 - s * a1;
        amps_[i1] = s * a0 + c * a1;
    }
}

void StateVector::apply_rz(int qubit, double angle) {
    check_qubit(qubit);
    const std::complex<double> e0{std::cos(0.5 * angle), -std::sin(0.5 * angle)};
    const std::complex<double> e1 = std::conj(e0);
    const std::size_t mask = std::size_t{1} << qubit;
    const std::size_t lo = mask - 1;
    const std::size_t hi = ~lo;
    const std::size_t half = amps_.size() >> 1;
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t i0 = ((i & hi) << 1) | (i & lo);
        const std::size_t i1 = i0 | mask;
        amps_[i0] *= e0;
        amps_[i1] *= e1;
    }
}

void StateVector::apply_cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
        throw std::invalid_argument("cnot control and target must differ");
    }
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    const int qa = control < target ? control : target;
    const int qb = control < target ? target : control;
    const std::size_t lo_mask = (std::size_t{1} << qa) - 1;
    const std::size_t mid_mask = ((std::size_t{1} << (qb - 1)) - 1) & ~lo_mask;
    const std::size_t quarter = amps_.size() >> 2;
    for (std::size_t i = 0; i < quarter; ++i) {
        const std::size_t base = (i & lo_mask) | ((i & mid_mask) << 1) |
                                 ((i & ~(lo_mask | mid_mask)) << 2);
        std::swap(amps_[base | cmask], amps_[base | cmask | tmask]);
    }
}

void StateVector::apply_pauli_z(int qubit) {
    check_qubit(qubit);
    const std::size_t mask = std::size_t{1} << qubit;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        if (k & mask) {
            amps_[k] = -amps_[k];
        }
    }
}

void StateVector::apply_pauli_y(int qubit) {
    check_qubit(qubit);
    const std::complex<double> mi{0.0, -1.0};
    const std::complex<double> pi{0.0, 1.0};
    const std::size_t mask = std::size_t{1} << qubit;
    const std::size_t lo = mask - 1;
    const std::size_t hi = ~lo;
    const std::size_t half = amps_.size() >> 1;
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t i0 = ((i & hi) << 1) | (i & lo);
        const std::size_t i1 = i0 | mask;
        const auto a0 = amps_[i0];
        const auto a1 = amps_[i1];
        amps_[i0] = mi * a1;
        amps_[i1] = pi * a0;
    }
}

double StateVector::expect_z(int qubit) const {
    check_qubit(qubit);
    const std::size_t mask = std::size_t{1} << qubit;
    double plus = 0.0;
    double minus = 0.0;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        const double p = std::norm(amps_[k]);
        if (k & mask) {
            minus += p;
        } else {
            plus += p;
        }
    }
    return plus - minus;
}

double StateVector::norm_squared() const {
    double n = 0.0;
    for (const auto &a : amps_) {
        n += std::norm(a);
    }
    return n;
}

std::complex<double> StateVector::inner_product(const StateVector &other) const {
    if (other.dim() != dim()) {
        throw ConfigError("inner_product requires equal dimensions");
    }
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        acc += std::conj(amps_[k]) * other.amps_[k];
    }
    return acc;
}

} // namespace hqnn

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace hqnn {

/// Dense statevector over Q qubits, little-endian indexing: qubit 0 is the
/// least-significant bit of the basis-state index. Gates are applied in
/// place with stride arithmetic; no gate matrices are materialized.
class StateVector {
  public:
    static constexpr int kMaxQubits = 16;

    /// Initializes |0...0>. Throws ConfigError if num_qubits is outside
    /// [1, kMaxQubits].
    explicit StateVector(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }

    std::span<const std::complex<double>> amplitudes() const { return amps_; }
    std::span<std::complex<double>> amplitudes() { return amps_; }

    void set_zero_state();

    /// RY(theta) = [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]].
    void apply_ry(int qubit, double angle);

    /// RZ(theta) = diag(exp(-i t/2), exp(+i t/2)).
    void apply_rz(int qubit, double angle);

    /// Flips the target bit on amplitudes whose control bit is set.
    /// Throws std::invalid_argument if control == target.
    void apply_cnot(int control, int target);

    /// Pauli Z: sign flip on amplitudes with the qubit bit set.
    void apply_pauli_z(int qubit);

    /// Pauli Y = [[0, -i], [i, 0]].
    void apply_pauli_y(int qubit);

    /// <Z> on one qubit; always in [-1, 1].
    double expect_z(int qubit) const;

    double norm_squared() const;

    /// <this|other>.
    std::complex<double> inner_product(const StateVector &other) const;

  private:
    void check_qubit(int qubit) const;

    int num_qubits_;
    std::vector<std::complex<double>> amps_;
};

} // namespace hqnn

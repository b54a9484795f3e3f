#pragma once

#include "hqnn/rng.hpp"
#include "hqnn/statevector.hpp"

#include <span>
#include <utility>
#include <vector>

namespace hqnn {

/// Ansatz topology: Q qubits, L variational layers, nearest-neighbor CNOT
/// ring (periodic closure only for Q > 2; Q = 2 uses the single edge (0,1)).
struct CircuitSpec {
    int num_qubits = 0;
    int num_layers = 0;

    /// Validated constructor; throws ConfigError for Q < 2 or L < 1.
    static CircuitSpec make(int num_qubits, int num_layers);

    /// Trainable angle count, 2*Q*L.
    int param_count() const { return 2 * num_qubits * num_layers; }

    /// Entangling edges in application order, (control, target) with
    /// control = lower index; the closing edge controls on Q-1 targeting 0.
    std::vector<std::pair<int, int>> ring_edges() const;
};

/// Trainable rotation angles, laid out [layer][qubit][ry, rz].
class QuantumParams {
  public:
    explicit QuantumParams(const CircuitSpec &spec);

    /// All angles drawn uniform in [0, 2*pi).
    static QuantumParams random(const CircuitSpec &spec, Rng &rng);

    int num_qubits() const { return num_qubits_; }
    int num_layers() const { return num_layers_; }

    double &ry(int layer, int qubit) { return theta_[flat_index(layer, qubit, 0)]; }
    double &rz(int layer, int qubit) { return theta_[flat_index(layer, qubit, 1)]; }
    double ry(int layer, int qubit) const { return theta_[flat_index(layer, qubit, 0)]; }
    double rz(int layer, int qubit) const { return theta_[flat_index(layer, qubit, 1)]; }

    std::span<double> flat() { return theta_; }
    std::span<const double> flat() const { return theta_; }

    std::size_t flat_index(int layer, int qubit, int slot) const {
        return (static_cast<std::size_t>(layer) * num_qubits_ + qubit) * 2 + slot;
    }

  private:
    int num_qubits_;
    int num_layers_;
    std::vector<double> theta_;
};

/// Encoding angles, one per qubit. The data path keeps entries in [0, pi]
/// (squash_to_pi guarantees it); gradient oracles may evaluate shifted
/// angles outside that interval.
struct FeatureVector {
    std::vector<double> angles;
};

/// One gate of the unrolled circuit. For rotations, `source` says which
/// angle array the parameter lives in and `param_index` its flat position.
struct Gate {
    enum class Kind { ry, rz, cnot };
    enum class Source { none, encoding, variational };

    Kind kind;
    int qubit = 0;  // rotation target, or CNOT control
    int target = 0; // CNOT target
    double angle = 0.0;
    Source source = Source::none;
    int param_index = 0;
};

/// Unrolls encoding RYs, then per layer RY+RZ on every qubit followed by
/// the CNOT ring. Throws ConfigError on shape mismatch.
std::vector<Gate> build_gate_sequence(const CircuitSpec &spec,
                                      const QuantumParams &params,
                                      const FeatureVector &x);

void apply_gate(StateVector &psi, const Gate &gate);

/// Runs the full circuit from |0...0>.
StateVector run_circuit(const CircuitSpec &spec, const QuantumParams &params,
                        const FeatureVector &x);

/// (<Z_0>, ..., <Z_{Q-1}>).
std::vector<double> measure_all_z(const StateVector &psi);

} // namespace hqnn

#include "hqnn/circuit.hpp"

#include "hqnn/errors.hpp"

#include <numbers>
#include <string>

namespace hqnn {

CircuitSpec CircuitSpec::make(int num_qubits, int num_layers) {
    if (num_qubits < 2 || num_qubits > StateVector::kMaxQubits) {
        throw ConfigError("circuit requires 2 <= Q <= " +
                          std::to_string(StateVector::kMaxQubits) + ", got " +
                          std::to_string(num_qubits));
    }
    if (num_layers < 1) {
        throw ConfigError("circuit requires L >= 1, got " +
                          std::to_string(num_layers));
    }
    return CircuitSpec{num_qubits, num_layers};
}

std::vector<std::pair<int, int>> CircuitSpec::ring_edges() const {
    std::vector<std::pair<int, int>> edges;
    if (num_qubits == 2) {
        edges.emplace_back(0, 1);
        return edges;
    }
    for (int i = 0; i + 1 < num_qubits; ++i) {
        edges.emplace_back(i, i + 1);
    }
    edges.emplace_back(num_qubits - 1, 0);
    return edges;
}

QuantumParams::QuantumParams(const CircuitSpec &spec)
    : num_qubits_(spec.num_qubits), num_layers_(spec.num_layers),
      theta_(static_cast<std::size_t>(spec.param_count()), 0.0) {}

QuantumParams QuantumParams::random(const CircuitSpec &spec, Rng &rng) {
    QuantumParams params(spec);
    for (double &angle : params.theta_) {
        angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    return params;
}

std::vector<Gate> build_gate_sequence(const CircuitSpec &spec,
                                      const QuantumParams &params,
                                      const FeatureVector &x) {
    if (static_cast<int>(x.angles.size()) != spec.num_qubits) {
        throw ConfigError("feature vector length " +
                          std::to_string(x.angles.size()) +
                          " does not match Q=" + std::to_string(spec.num_qubits));
    }
    if (params.num_qubits() != spec.num_qubits ||
        params.num_layers() != spec.num_layers) {
        throw ConfigError("quantum parameters shaped for (Q=" +
                          std::to_string(params.num_qubits()) +
                          ", L=" + std::to_string(params.num_layers()) +
                          "), spec wants (Q=" + std::to_string(spec.num_qubits) +
                          ", L=" + std::to_string(spec.num_layers) + ")");
    }

    std::vector<Gate> gates;
    const auto edges = spec.ring_edges();
    gates.reserve(spec.num_qubits +
                  spec.num_layers * (2 * spec.num_qubits + edges.size()));

    for (int i = 0; i < spec.num_qubits; ++i) {
        gates.push_back({Gate::Kind::ry, i, 0, x.angles[i],
                         Gate::Source::encoding, i});
    }
    for (int layer = 0; layer < spec.num_layers; ++layer) {
        for (int i = 0; i < spec.num_qubits; ++i) {
            gates.push_back({Gate::Kind::ry, i, 0, params.ry(layer, i),
                             Gate::Source::variational,
                             static_cast<int>(params.flat_index(layer, i, 0))});
            gates.push_back({Gate::Kind::rz, i, 0, params.rz(layer, i),
                             Gate::Source::variational,
                             static_cast<int>(params.flat_index(layer, i, 1))});
        }
        for (const auto &[control, target] : edges) {
            gates.push_back({Gate::Kind::cnot, control, target, 0.0,
                             Gate::Source::none, 0});
        }
    }
    return gates;
}

void apply_gate(StateVector &psi, const Gate &gate) {
    switch (gate.kind) {
    case Gate::Kind::ry:
        psi.apply_ry(gate.qubit, gate.angle);
        break;
    case Gate::Kind::rz:
        psi.apply_rz(gate.qubit, gate.angle);
        break;
    case Gate::Kind::cnot:
        psi.apply_cnot(gate.qubit, gate.target);
        break;
    }
}

StateVector run_circuit(const CircuitSpec &spec, const QuantumParams &params,
                        const FeatureVector &x) {
    const auto gates = build_gate_sequence(spec, params, x);
    StateVector psi(spec.num_qubits);
    for (const Gate &gate : gates) {
        apply_gate(psi, gate);
    }
    return psi;
}

std::vector<double> measure_all_z(const StateVector &psi) {
    std::vector<double> z(psi.num_qubits());
    for (int q = 0; q < psi.num_qubits(); ++q) {
        z[q] = psi.expect_z(q);
    }
    return z;
}

} // namespace hqnn

#include "hqnn/gradients.hpp"

#include "hqnn/errors.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace hqnn {

namespace {

// Im(<lam| Z_q |psi>).
double im_bra_z_ket(const StateVector &lam, const StateVector &psi, int qubit) {
    const auto l = lam.amplitudes();
    const auto p = psi.amplitudes();
    const std::size_t mask = std::size_t{1} << qubit;
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < p.size(); ++k) {
        const std::complex<double> term = std::conj(l[k]) * p[k];
        acc += (k & mask) ? -term : term;
    }
    return acc.imag();
}

// Im(<lam| Y_q |psi>), with Y|0> = i|1>, Y|1> = -i|0>.
double im_bra_y_ket(const StateVector &lam, const StateVector &psi, int qubit) {
    const auto l = lam.amplitudes();
    const auto p = psi.amplitudes();
    const std::size_t mask = std::size_t{1} << qubit;
    const std::size_t lo = mask - 1;
    const std::size_t hi = ~lo;
    const std::size_t half = p.size() >> 1;
    const std::complex<double> mi{0.0, -1.0};
    const std::complex<double> pi{0.0, 1.0};
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t i0 = ((i & hi) << 1) | (i & lo);
        const std::size_t i1 = i0 | mask;
        acc += std::conj(l[i0]) * (mi * p[i1]);
        acc += std::conj(l[i1]) * (pi * p[i0]);
    }
    return acc.imag();
}

// lam = (sum_k upstream[k] Z_k) |psi|, built in one pass over basis states.
StateVector seed_adjoint_state(const StateVector &psi,
                               std::span<const double> upstream) {
    StateVector lam(psi.num_qubits());
    const auto p = psi.amplitudes();
    auto l = lam.amplitudes();
    for (std::size_t k = 0; k < p.size(); ++k) {
        double weight = 0.0;
        for (std::size_t q = 0; q < upstream.size(); ++q) {
            weight += (k >> q) & 1 ? -upstream[q] : upstream[q];
        }
        l[k] = weight * p[k];
    }
    return lam;
}

void undo_gate(StateVector &psi, const Gate &gate) {
    switch (gate.kind) {
    case Gate::Kind::ry:
        psi.apply_ry(gate.qubit, -gate.angle);
        break;
    case Gate::Kind::rz:
        psi.apply_rz(gate.qubit, -gate.angle);
        break;
    case Gate::Kind::cnot:
        psi.apply_cnot(gate.qubit, gate.target);
        break;
    }
}

template <class EvalFn>
QuantumGradient per_angle_gradient(const CircuitSpec &spec,
                                   const QuantumParams &params,
                                   const FeatureVector &x, EvalFn &&shifted_eval) {
    QuantumGradient grad;
    grad.d_theta.assign(params.flat().size(), 0.0);
    grad.d_x.assign(x.angles.size(), 0.0);

    QuantumParams work_params = params;
    FeatureVector work_x = x;
    for (std::size_t i = 0; i < work_params.flat().size(); ++i) {
        grad.d_theta[i] = shifted_eval(spec, work_params, work_x,
                                       work_params.flat()[i]);
    }
    for (std::size_t i = 0; i < work_x.angles.size(); ++i) {
        grad.d_x[i] = shifted_eval(spec, work_params, work_x, work_x.angles[i]);
    }
    return grad;
}

double eval_observable(const CircuitSpec &spec, const QuantumParams &params,
                       const FeatureVector &x, int observable_qubit) {
    return run_circuit(spec, params, x).expect_z(observable_qubit);
}

} // namespace

QuantumGradient adjoint_backprop(const CircuitSpec &spec,
                                 const QuantumParams &params,
                                 const FeatureVector &x,
                                 std::span<const double> upstream) {
    if (static_cast<int>(upstream.size()) != spec.num_qubits) {
        throw ConfigError("upstream length " + std::to_string(upstream.size()) +
                          " does not match Q=" + std::to_string(spec.num_qubits));
    }
    const auto gates = build_gate_sequence(spec, params, x);

    StateVector psi(spec.num_qubits);
    for (const Gate &gate : gates) {
        apply_gate(psi, gate);
    }
    StateVector lam = seed_adjoint_state(psi, upstream);

    QuantumGradient grad;
    grad.d_theta.assign(params.flat().size(), 0.0);
    grad.d_x.assign(x.angles.size(), 0.0);

    // Walk the tape in reverse. For G(t) = exp(-i t P / 2), psi holds the
    // state just after gate j and lam the observable pulled back to the
    // same cut, so d<O>/dt = 2 Re(<lam| -i/2 P |psi>) = Im(<lam| P |psi>).
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        const Gate &gate = *it;
        if (gate.kind == Gate::Kind::cnot) {
            undo_gate(psi, gate);
            lam.apply_cnot(gate.qubit, gate.target);
            continue;
        }
        const double d = gate.kind == Gate::Kind::ry
                             ? im_bra_y_ket(lam, psi, gate.qubit)
                             : im_bra_z_ket(lam, psi, gate.qubit);
        if (gate.source == Gate::Source::variational) {
            grad.d_theta[gate.param_index] = d;
        } else {
            grad.d_x[gate.param_index] = d;
        }
        undo_gate(psi, gate);
        if (gate.kind == Gate::Kind::ry) {
            lam.apply_ry(gate.qubit, -gate.angle);
        } else {
            lam.apply_rz(gate.qubit, -gate.angle);
        }
    }
    return grad;
}

QuantumGradient parameter_shift_gradient(const CircuitSpec &spec,
                                         const QuantumParams &params,
                                         const FeatureVector &x,
                                         int observable_qubit) {
    constexpr double shift = std::numbers::pi / 2.0;
    return per_angle_gradient(
        spec, params, x,
        [observable_qubit](const CircuitSpec &s, const QuantumParams &p,
                           const FeatureVector &fx, double &angle) {
            const double saved = angle;
            angle = saved + shift;
            const double plus = eval_observable(s, p, fx, observable_qubit);
            angle = saved - shift;
            const double minus = eval_observable(s, p, fx, observable_qubit);
            angle = saved;
            return 0.5 * (plus - minus);
        });
}

QuantumGradient finite_difference_gradient(const CircuitSpec &spec,
                                           const QuantumParams &params,
                                           const FeatureVector &x,
                                           int observable_qubit, double step) {
    return per_angle_gradient(
        spec, params, x,
        [observable_qubit, step](const CircuitSpec &s, const QuantumParams &p,
                                 const FeatureVector &fx, double &angle) {
            const double saved = angle;
            angle = saved + step;
            const double plus = eval_observable(s, p, fx, observable_qubit);
            angle = saved - step;
            const double minus = eval_observable(s, p, fx, observable_qubit);
            angle = saved;
            return (plus - minus) / (2.0 * step);
        });
}

} // namespace hqnn

#pragma once

#include "hqnn/circuit.hpp"

#include <span>
#include <vector>

namespace hqnn {

/// Gradient with respect to all variational angles (layout matching
/// QuantumParams::flat) and all encoding angles.
struct QuantumGradient {
    std::vector<double> d_theta;
    std::vector<double> d_x;
};

/// Exact gradient of sum_k upstream[k] * <Z_k> with respect to every theta
/// and every encoding angle, via one forward statevector pass and one
/// reverse pass. The backward state is seeded with
/// sum_k upstream[k] * Z_k |psi>, so all Q observables flow in a single pass.
QuantumGradient adjoint_backprop(const CircuitSpec &spec,
                                 const QuantumParams &params,
                                 const FeatureVector &x,
                                 std::span<const double> upstream);

/// Two-term shift rule, gradient of <Z_observable_qubit>:
/// d f / d phi = [f(phi + pi/2) - f(phi - pi/2)] / 2. Exact for the RY/RZ
/// generators; costs two circuit evaluations per angle. Cross-check oracle
/// for adjoint_backprop.
QuantumGradient parameter_shift_gradient(const CircuitSpec &spec,
                                         const QuantumParams &params,
                                         const FeatureVector &x,
                                         int observable_qubit);

/// Central finite differences on <Z_observable_qubit>, O(step^2) accuracy.
/// Test oracle only.
QuantumGradient finite_difference_gradient(const CircuitSpec &spec,
                                           const QuantumParams &params,
                                           const FeatureVector &x,
                                           int observable_qubit,
                                           double step = 1e-5);

} // namespace hqnn

#pragma once

#include "hqnn/circuit.hpp"
#include "hqnn/train.hpp"

#include <cstdint>
#include <span>

namespace hqnn {

struct DiagSampling {
    int qce_states = 75;   // 2775 fidelity pairs
    int eee_samples = 100; // independent of the QCE ensemble
    std::uint64_t seed = 0;
};

struct DiagnosticsReport {
    double qce = 0.0;
    double qce_std_error = 0.0; // pairwise-fidelity standard error
    double eee_bits = 0.0;
    double qgn_mean = 0.0; // mean over epochs; 0 when no history attached
    int qce_states = 0;
    int eee_samples = 0;
    std::uint64_t seed = 0;

    bool operator==(const DiagnosticsReport &) const = default;
};

/// QCE = 1 - (1/(N(N-1))) * sum_{i<j} |<psi_i|psi_j>|^2, evaluated exactly
/// as printed: the i<j sum over N(N-1) halves the mean fidelity, so an
/// ensemble of identical states scores exactly 0.5 and the Haar limit is
/// 1 - 1/(2*2^Q). Optional std_error gets sd(F)/sqrt(#pairs).
double qce_from_states(std::span<const StateVector> states,
                       double *std_error = nullptr);

/// Draws n_states parameter sets (theta uniform [0, 2*pi), x uniform
/// [0, pi)) on the ansatz and evaluates qce_from_states. Each draw uses a
/// counter-derived RNG stream, so the ensemble is identical under any
/// evaluation order. Throws ConfigError for n_states < 2.
double compute_qce(const CircuitSpec &spec, int n_states, std::uint64_t seed,
                   double *std_error = nullptr);

/// Mean von Neumann entropy (bits) of the first floor(Q/2) qubits over
/// n_samples random draws with the same sampling law as compute_qce but an
/// independent stream. Result in [0, floor(Q/2)].
double compute_eee(const CircuitSpec &spec, int n_samples, std::uint64_t seed);

/// Mean over epochs of the per-epoch QGN means. Throws ConfigError on an
/// empty history.
double summarize_qgn(std::span<const EpochRecord> history);

DiagnosticsReport compute_diagnostics(const CircuitSpec &spec,
                                      const DiagSampling &sampling);

} // namespace hqnn

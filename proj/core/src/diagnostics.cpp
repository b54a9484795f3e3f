#include "hqnn/diagnostics.hpp"

#include "hqnn/density.hpp"
#include "hqnn/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace hqnn {

namespace {

StateVector draw_state(const CircuitSpec &spec, std::uint64_t draw_seed) {
    Rng rng(draw_seed);
    QuantumParams params = QuantumParams::random(spec, rng);
    FeatureVector x;
    x.angles.resize(spec.num_qubits);
    for (double &angle : x.angles) {
        angle = rng.uniform(0.0, std::numbers::pi);
    }
    return run_circuit(spec, params, x);
}

} // namespace

double qce_from_states(std::span<const StateVector> states, double *std_error) {
    if (states.size() < 2) {
        throw ConfigError("QCE needs at least 2 states, got " +
                          std::to_string(states.size()));
    }
    const std::size_t n = states.size();
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double f = std::norm(states[i].inner_product(states[j]));
            sum += f;
            sum_sq += f * f;
        }
    }
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    if (std_error != nullptr) {
        const double mean = sum / pairs;
        const double var =
            pairs > 1.0 ? (sum_sq - pairs * mean * mean) / (pairs - 1.0) : 0.0;
        *std_error = std::sqrt(std::max(var, 0.0) / pairs);
    }
    return 1.0 - sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double compute_qce(const CircuitSpec &spec, int n_states, std::uint64_t seed,
                   double *std_error) {
    if (n_states < 2) {
        throw ConfigError("QCE needs n_states >= 2");
    }
    const std::uint64_t stream = mix_seed(seed, fnv1a("qce"));
    std::vector<StateVector> states;
    states.reserve(static_cast<std::size_t>(n_states));
    for (int i = 0; i < n_states; ++i) {
        states.push_back(
            draw_state(spec, mix_seed(stream, static_cast<std::uint64_t>(i))));
    }
    return qce_from_states(states, std_error);
}

double compute_eee(const CircuitSpec &spec, int n_samples, std::uint64_t seed) {
    if (n_samples < 1) {
        throw ConfigError("EEE needs n_samples >= 1");
    }
    const int m = spec.num_qubits / 2;
    const std::uint64_t stream = mix_seed(seed, fnv1a("eee"));
    double acc = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const StateVector psi =
            draw_state(spec, mix_seed(stream, static_cast<std::uint64_t>(i)));
        acc += partial_trace_keep_first(psi, m).von_neumann_entropy_bits();
    }
    return acc / static_cast<double>(n_samples);
}

double summarize_qgn(std::span<const EpochRecord> history) {
    if (history.empty()) {
        throw ConfigError("QGN summary needs a nonempty history");
    }
    double acc = 0.0;
    for (const EpochRecord &rec : history) {
        acc += rec.qgn_epoch_mean;
    }
    return acc / static_cast<double>(history.size());
}

DiagnosticsReport compute_diagnostics(const CircuitSpec &spec,
                                      const DiagSampling &sampling) {
    DiagnosticsReport report;
    report.qce = compute_qce(spec, sampling.qce_states, sampling.seed,
                             &report.qce_std_error);
    report.eee_bits = compute_eee(spec, sampling.eee_samples, sampling.seed);
    report.qce_states = sampling.qce_states;
    report.eee_samples = sampling.eee_samples;
    report.seed = sampling.seed;
    return report;
}

} // namespace hqnn

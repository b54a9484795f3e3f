#include "hqnn/optimizer.hpp"

#include "hqnn/errors.hpp"

#include <cmath>
#include <string>

namespace hqnn {

AdamOptimizer::AdamOptimizer(const AdamConfig &config, std::size_t param_count)
    : config_(config), first_moment_(param_count, 0.0),
      second_moment_(param_count, 0.0) {}

void AdamOptimizer::step(std::span<double> params,
                         std::span<const double> grads) {
    if (params.size() != first_moment_.size() || grads.size() != params.size()) {
        throw ConfigError("adam step size mismatch");
    }
    ++step_count_;
    const double bc1 = 1.0 - std::pow(config_.beta1, step_count_);
    const double bc2 = 1.0 - std::pow(config_.beta2, step_count_);
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (!std::isfinite(grads[i])) {
            throw NumericError("non-finite gradient at parameter " +
                               std::to_string(i));
        }
        const double g = grads[i] + config_.weight_decay * params[i];
        first_moment_[i] =
            config_.beta1 * first_moment_[i] + (1.0 - config_.beta1) * g;
        second_moment_[i] =
            config_.beta2 * second_moment_[i] + (1.0 - config_.beta2) * g * g;
        const double m_hat = first_moment_[i] / bc1;
        const double v_hat = second_moment_[i] / bc2;
        params[i] -= config_.learning_rate * m_hat /
                     (std::sqrt(v_hat) + config_.epsilon);
    }
}

} // namespace hqnn

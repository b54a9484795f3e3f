#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hqnn {

struct AdamConfig {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    double weight_decay = 1e-4; // coupled L2, added to the gradient
};

/// Adam with coupled L2 weight decay: g <- grad + wd * param before the
/// moment updates, then the standard bias-corrected step.
class AdamOptimizer {
  public:
    AdamOptimizer(const AdamConfig &config, std::size_t param_count);

    /// Throws NumericError on a non-finite gradient entry.
    void step(std::span<double> params, std::span<const double> grads);

    int step_count() const { return step_count_; }
    const AdamConfig &config() const { return config_; }

  private:
    AdamConfig config_;
    std::vector<double> first_moment_;
    std::vector<double> second_moment_;
    int step_count_ = 0;
};

} // namespace hqnn

#pragma once

#include "hqnn/rng.hpp"

#include <span>
#include <vector>

namespace hqnn {

/// Fully connected layer, weights out x in row-major.
struct DenseLayer {
    int in_dim = 0;
    int out_dim = 0;
    std::vector<double> weights;
    std::vector<double> bias;

    DenseLayer() = default;
    DenseLayer(int in_dim, int out_dim);

    /// Uniform in +-sqrt(6/(fan_in+fan_out)); bias zero.
    void init_glorot(Rng &rng);

    void forward(std::span<const double> input, std::span<double> output) const;

    /// Chain-rule gradients. d_input may be empty to skip input gradients
    /// (first layer); d_weights/d_bias are accumulated, scaled by `scale`.
    void backward(std::span<const double> input, std::span<const double> upstream,
                  std::span<double> d_input, std::span<double> d_weights,
                  std::span<double> d_bias, double scale = 1.0) const;

    std::size_t param_count() const { return weights.size() + bias.size(); }
};

/// 3x3 convolution, padding 1, stride 1. Kernels out_ch x in_ch x 3 x 3.
/// Spatial dimensions are preserved; pooling does the downsampling.
struct Conv3x3 {
    int in_ch = 0;
    int out_ch = 0;
    std::vector<double> kernels;
    std::vector<double> bias;

    Conv3x3() = default;
    Conv3x3(int in_ch, int out_ch);

    void init_glorot(Rng &rng);

    void forward(std::span<const double> input, int height, int width,
                 std::span<double> output) const;

    void backward(std::span<const double> input, int height, int width,
                  std::span<const double> upstream, std::span<double> d_input,
                  std::span<double> d_kernels, std::span<double> d_bias,
                  double scale = 1.0) const;

    std::size_t param_count() const { return kernels.size() + bias.size(); }
};

void relu_forward(std::span<const double> input, std::span<double> output);

/// d_input = upstream masked by forward-input positivity (exact indicator).
void relu_backward(std::span<const double> input, std::span<const double> upstream,
                   std::span<double> d_input);

/// 2x2 max pooling with stride 2. Input ch x h x w, output ch x h/2 x w/2.
/// argmax records the flat input index chosen per output cell; ties keep
/// the first index in row-major scan order.
void maxpool2x2_forward(std::span<const double> input, int channels, int height,
                        int width, std::span<double> output,
                        std::vector<int> &argmax);

void maxpool2x2_backward(std::span<const double> upstream, int channels,
                         int height, int width, std::span<const int> argmax,
                         std::span<double> d_input);

struct SoftmaxResult {
    double loss = 0.0;
    std::vector<double> probs;
    std::vector<double> d_logits; // softmax(logits) - onehot(label)
};

/// Stabilized softmax cross-entropy with gradient.
SoftmaxResult softmax_cross_entropy(std::span<const double> logits, int label);

} // namespace hqnn

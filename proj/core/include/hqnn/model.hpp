#pragma once

#include "hqnn/circuit.hpp"
#include "hqnn/dataset.hpp"
#include "hqnn/layers.hpp"

#include <span>
#include <string>
#include <vector>

namespace hqnn {

enum class ReadoutArch { linear, mlp };

/// Architecture of one hybrid classifier: classical frontend producing Q
/// features, squash to (0, pi), Q-qubit PQC with L layers, classical
/// readout to C logits.
struct ModelConfig {
    FrontendArch frontend = FrontendArch::grayscale_mlp;
    int input_channels = 1;
    int input_height = 28;
    int input_width = 28;
    int mlp_hidden = 128; // grayscale frontend hidden width
    int qubits = 4;
    int layers = 6;
    ReadoutArch readout = ReadoutArch::linear;
    int readout_hidden = 32;
    int num_classes = 10;

    std::size_t input_dim() const {
        return static_cast<std::size_t>(input_channels) * input_height *
               input_width;
    }

    bool operator==(const ModelConfig &) const = default;
};

struct ParamBlock {
    std::string name;
    std::vector<int> shape;
    std::size_t offset = 0;
    std::size_t count = 0;
};

/// Elementwise pi * logistic(u); outputs strictly inside (0, pi).
void squash_to_pi(std::span<const double> input, std::span<double> output);

/// d_input = upstream * pi * sigma * (1 - sigma), expressed through the
/// cached squashed output x as x * (pi - x) / pi.
void squash_to_pi_backward(std::span<const double> squashed,
                           std::span<const double> upstream,
                           std::span<double> d_input);

class HybridModel {
  public:
    explicit HybridModel(const ModelConfig &config);

    /// Draws every trainable array in a fixed order: frontend layers
    /// (Glorot uniform), theta (uniform [0, 2*pi)), readout layers.
    void init_params(Rng &rng);

    const ModelConfig &config() const { return config_; }
    const CircuitSpec &circuit() const { return spec_; }
    const QuantumParams &quantum_params() const { return qparams_; }

    std::size_t param_count() const { return total_params_; }
    std::size_t theta_offset() const { return theta_offset_; }
    std::size_t theta_count() const { return qparams_.flat().size(); }

    /// Flat layout: frontend blocks, quantum theta, readout blocks.
    std::vector<ParamBlock> param_layout() const { return layout_; }
    void export_params(std::span<double> out) const;
    void import_params(std::span<const double> in);

    /// Per-sample activations kept for the backward pass. Reusable across
    /// samples to avoid reallocation.
    struct Cache {
        std::vector<double> input;
        // cnn frontend
        std::vector<double> conv1_pre, conv1_act, pool1;
        std::vector<double> conv2_pre, conv2_act, pool2;
        std::vector<int> argmax1, argmax2;
        // shared dense tail of the frontend
        std::vector<double> hidden_pre, hidden_act, features;
        FeatureVector x;            // squashed encoding angles
        std::vector<double> z;      // measured <Z> vector
        std::vector<double> readout_pre, readout_act;
        std::vector<double> logits;
        // backward scratch
        std::vector<double> d_logits_scratch, d_readout, d_z, d_u, d_hidden,
            d_hidden_pre, d_flat, d_pool, d_conv_act, d_conv_pre;
    };

    /// Returns logits (length C) and fills the cache.
    std::span<const double> forward(std::span<const float> image, Cache &cache) const;

    /// Accumulates dLoss/dparams into grad_flat (same layout as
    /// export_params), scaled by `scale`. Uses the cache of the matching
    /// forward call; the cache doubles as backward scratch.
    void backward(Cache &cache, std::span<const double> d_logits,
                  std::span<double> grad_flat, double scale) const;

  private:
    void build_layout();

    ModelConfig config_;
    CircuitSpec spec_;
    // grayscale: fc1 (in -> hidden), fc2 (hidden -> Q)
    // rgb: conv1 (3 -> 32), conv2 (32 -> 64), fc1 (4096 -> 128), fc2 (128 -> Q)
    Conv3x3 conv1_, conv2_;
    DenseLayer fc1_, fc2_;
    QuantumParams qparams_;
    DenseLayer readout1_; // Q -> C (linear) or Q -> hidden (mlp)
    DenseLayer readout2_; // hidden -> C (mlp only)
    std::vector<ParamBlock> layout_;
    std::size_t total_params_ = 0;
    std::size_t theta_offset_ = 0;
};

/// Builds the protocol model for a preset at the given operating point:
/// grayscale presets use the MLP frontend and linear readout, RGB presets
/// the CNN frontend and the small MLP readout.
HybridModel make_preset_model(const DatasetPreset &preset, int qubits,
                              int layers);

} // namespace hqnn

#include "hqnn/model.hpp"

#include "hqnn/errors.hpp"
#include "hqnn/gradients.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hqnn {

void squash_to_pi(std::span<const double> input, std::span<double> output) {
    for (std::size_t i = 0; i < input.size(); ++i) {
        output[i] = std::numbers::pi / (1.0 + std::exp(-input[i]));
    }
}

void squash_to_pi_backward(std::span<const double> squashed,
                           std::span<const double> upstream,
                           std::span<double> d_input) {
    for (std::size_t i = 0; i < squashed.size(); ++i) {
        d_input[i] =
            upstream[i] * squashed[i] * (std::numbers::pi - squashed[i]) /
            std::numbers::pi;
    }
}

namespace {

constexpr int kConv1Channels = 32;
constexpr int kConv2Channels = 64;
constexpr int kCnnDenseHidden = 128;

} // namespace

HybridModel::HybridModel(const ModelConfig &config)
    : config_(config), spec_(CircuitSpec::make(config.qubits, config.layers)),
      qparams_(spec_) {
    if (config.num_classes < 2) {
        throw ConfigError("model needs at least 2 classes");
    }
    if (config.frontend == FrontendArch::grayscale_mlp) {
        if (config.mlp_hidden < 1) {
            throw ConfigError("mlp_hidden must be >= 1");
        }
        fc1_ = DenseLayer(static_cast<int>(config.input_dim()), config.mlp_hidden);
        fc2_ = DenseLayer(config.mlp_hidden, config.qubits);
    } else {
        if (config.input_channels != 3 || config.input_height != 32 ||
            config.input_width != 32) {
            throw ConfigError("cnn frontend expects 3x32x32 inputs");
        }
        conv1_ = Conv3x3(3, kConv1Channels);
        conv2_ = Conv3x3(kConv1Channels, kConv2Channels);
        fc1_ = DenseLayer(kConv2Channels * 8 * 8, kCnnDenseHidden);
        fc2_ = DenseLayer(kCnnDenseHidden, config.qubits);
    }
    if (config.readout == ReadoutArch::linear) {
        readout1_ = DenseLayer(config.qubits, config.num_classes);
    } else {
        if (config.readout_hidden < 1) {
            throw ConfigError("readout_hidden must be >= 1");
        }
        readout1_ = DenseLayer(config.qubits, config.readout_hidden);
        readout2_ = DenseLayer(config.readout_hidden, config.num_classes);
    }
    build_layout();
}

void HybridModel::build_layout() {
    layout_.clear();
    std::size_t offset = 0;
    auto add = [&](const std::string &name, std::vector<int> shape,
                   std::size_t count) {
        layout_.push_back({name, std::move(shape), offset, count});
        offset += count;
    };
    if (config_.frontend == FrontendArch::rgb_cnn) {
        add("frontend.conv1.kernels", {conv1_.out_ch, conv1_.in_ch, 3, 3},
            conv1_.kernels.size());
        add("frontend.conv1.bias", {conv1_.out_ch}, conv1_.bias.size());
        add("frontend.conv2.kernels", {conv2_.out_ch, conv2_.in_ch, 3, 3},
            conv2_.kernels.size());
        add("frontend.conv2.bias", {conv2_.out_ch}, conv2_.bias.size());
    }
    add("frontend.fc1.weights", {fc1_.out_dim, fc1_.in_dim}, fc1_.weights.size());
    add("frontend.fc1.bias", {fc1_.out_dim}, fc1_.bias.size());
    add("frontend.fc2.weights", {fc2_.out_dim, fc2_.in_dim}, fc2_.weights.size());
    add("frontend.fc2.bias", {fc2_.out_dim}, fc2_.bias.size());
    theta_offset_ = offset;
    add("quantum.theta", {config_.layers, config_.qubits, 2},
        qparams_.flat().size());
    add("readout.fc1.weights", {readout1_.out_dim, readout1_.in_dim},
        readout1_.weights.size());
    add("readout.fc1.bias", {readout1_.out_dim}, readout1_.bias.size());
    if (config_.readout == ReadoutArch::mlp) {
        add("readout.fc2.weights", {readout2_.out_dim, readout2_.in_dim},
            readout2_.weights.size());
        add("readout.fc2.bias", {readout2_.out_dim}, readout2_.bias.size());
    }
    total_params_ = offset;
}

void HybridModel::init_params(Rng &rng) {
    if (config_.frontend == FrontendArch::rgb_cnn) {
        conv1_.init_glorot(rng);
        conv2_.init_glorot(rng);
    }
    fc1_.init_glorot(rng);
    fc2_.init_glorot(rng);
    qparams_ = QuantumParams::random(spec_, rng);
    readout1_.init_glorot(rng);
    if (config_.readout == ReadoutArch::mlp) {
        readout2_.init_glorot(rng);
    }
}

namespace {

void copy_out(std::span<double> out, std::size_t &pos,
              std::span<const double> src) {
    std::copy(src.begin(), src.end(), out.begin() + static_cast<std::ptrdiff_t>(pos));
    pos += src.size();
}

void copy_in(std::span<const double> in, std::size_t &pos, std::span<double> dst) {
    std::copy(in.begin() + static_cast<std::ptrdiff_t>(pos),
              in.begin() + static_cast<std::ptrdiff_t>(pos + dst.size()),
              dst.begin());
    pos += dst.size();
}

} // namespace

void HybridModel::export_params(std::span<double> out) const {
    if (out.size() != total_params_) {
        throw ConfigError("export_params size mismatch");
    }
    std::size_t pos = 0;
    if (config_.frontend == FrontendArch::rgb_cnn) {
        copy_out(out, pos, conv1_.kernels);
        copy_out(out, pos, conv1_.bias);
        copy_out(out, pos, conv2_.kernels);
        copy_out(out, pos, conv2_.bias);
    }
    copy_out(out, pos, fc1_.weights);
    copy_out(out, pos, fc1_.bias);
    copy_out(out, pos, fc2_.weights);
    copy_out(out, pos, fc2_.bias);
    copy_out(out, pos, qparams_.flat());
    copy_out(out, pos, readout1_.weights);
    copy_out(out, pos, readout1_.bias);
    if (config_.readout == ReadoutArch::mlp) {
        copy_out(out, pos, readout2_.weights);
        copy_out(out, pos, readout2_.bias);
    }
}

void HybridModel::import_params(std::span<const double> in) {
    if (in.size() != total_params_) {
        throw ConfigError("import_params size mismatch");
    }
    std::size_t pos = 0;
    if (config_.frontend == FrontendArch::rgb_cnn) {
        copy_in(in, pos, conv1_.kernels);
        copy_in(in, pos, conv1_.bias);
        copy_in(in, pos, conv2_.kernels);
        copy_in(in, pos, conv2_.bias);
    }
    copy_in(in, pos, fc1_.weights);
    copy_in(in, pos, fc1_.bias);
    copy_in(in, pos, fc2_.weights);
    copy_in(in, pos, fc2_.bias);
    copy_in(in, pos, qparams_.flat());
    copy_in(in, pos, readout1_.weights);
    copy_in(in, pos, readout1_.bias);
    if (config_.readout == ReadoutArch::mlp) {
        copy_in(in, pos, readout2_.weights);
        copy_in(in, pos, readout2_.bias);
    }
}

std::span<const double> HybridModel::forward(std::span<const float> image,
                                             Cache &cache) const {
    if (image.size() != config_.input_dim()) {
        throw ConfigError("input size " + std::to_string(image.size()) +
                          " does not match model input dim " +
                          std::to_string(config_.input_dim()));
    }
    cache.input.resize(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) {
        cache.input[i] = static_cast<double>(image[i]);
    }

    const int q = config_.qubits;
    cache.features.resize(q);
    if (config_.frontend == FrontendArch::grayscale_mlp) {
        cache.hidden_pre.resize(fc1_.out_dim);
        cache.hidden_act.resize(fc1_.out_dim);
        fc1_.forward(cache.input, cache.hidden_pre);
        relu_forward(cache.hidden_pre, cache.hidden_act);
        fc2_.forward(cache.hidden_act, cache.features);
    } else {
        const int h = config_.input_height;
        const int w = config_.input_width;
        cache.conv1_pre.resize(static_cast<std::size_t>(kConv1Channels) * h * w);
        cache.conv1_act.resize(cache.conv1_pre.size());
        conv1_.forward(cache.input, h, w, cache.conv1_pre);
        relu_forward(cache.conv1_pre, cache.conv1_act);
        cache.pool1.resize(cache.conv1_act.size() / 4);
        maxpool2x2_forward(cache.conv1_act, kConv1Channels, h, w, cache.pool1,
                           cache.argmax1);

        const int h2 = h / 2;
        const int w2 = w / 2;
        cache.conv2_pre.resize(static_cast<std::size_t>(kConv2Channels) * h2 * w2);
        cache.conv2_act.resize(cache.conv2_pre.size());
        conv2_.forward(cache.pool1, h2, w2, cache.conv2_pre);
        relu_forward(cache.conv2_pre, cache.conv2_act);
        cache.pool2.resize(cache.conv2_act.size() / 4);
        maxpool2x2_forward(cache.conv2_act, kConv2Channels, h2, w2, cache.pool2,
                           cache.argmax2);

        cache.hidden_pre.resize(fc1_.out_dim);
        cache.hidden_act.resize(fc1_.out_dim);
        fc1_.forward(cache.pool2, cache.hidden_pre);
        relu_forward(cache.hidden_pre, cache.hidden_act);
        fc2_.forward(cache.hidden_act, cache.features);
    }

    cache.x.angles.resize(q);
    squash_to_pi(cache.features, cache.x.angles);
    const StateVector psi = run_circuit(spec_, qparams_, cache.x);
    cache.z = measure_all_z(psi);

    cache.logits.resize(config_.num_classes);
    if (config_.readout == ReadoutArch::linear) {
        readout1_.forward(cache.z, cache.logits);
    } else {
        cache.readout_pre.resize(readout1_.out_dim);
        cache.readout_act.resize(readout1_.out_dim);
        readout1_.forward(cache.z, cache.readout_pre);
        relu_forward(cache.readout_pre, cache.readout_act);
        readout2_.forward(cache.readout_act, cache.logits);
    }
    return cache.logits;
}

void HybridModel::backward(Cache &cache, std::span<const double> d_logits,
                           std::span<double> grad_flat, double scale) const {
    if (grad_flat.size() != total_params_) {
        throw ConfigError("gradient buffer size mismatch");
    }
    if (d_logits.size() != static_cast<std::size_t>(config_.num_classes)) {
        throw ConfigError("d_logits size mismatch");
    }
    auto block = [&](const char *name) -> std::span<double> {
        for (const ParamBlock &b : layout_) {
            if (b.name == name) {
                return grad_flat.subspan(b.offset, b.count);
            }
        }
        throw ConfigError(std::string("unknown parameter block ") + name);
    };

    Cache &scratch = cache;
    const int q = config_.qubits;

    // readout
    scratch.d_z.resize(q);
    if (config_.readout == ReadoutArch::linear) {
        readout1_.backward(cache.z, d_logits, scratch.d_z,
                           block("readout.fc1.weights"), block("readout.fc1.bias"),
                           scale);
    } else {
        scratch.d_readout.resize(readout1_.out_dim);
        readout2_.backward(cache.readout_act, d_logits, scratch.d_readout,
                           block("readout.fc2.weights"), block("readout.fc2.bias"),
                           scale);
        relu_backward(cache.readout_pre, scratch.d_readout, scratch.d_readout);
        readout1_.backward(cache.z, scratch.d_readout, scratch.d_z,
                           block("readout.fc1.weights"), block("readout.fc1.bias"),
                           scale);
    }

    // quantum node: exact adjoint pass seeded with dLoss/dz
    const QuantumGradient qgrad =
        adjoint_backprop(spec_, qparams_, cache.x, scratch.d_z);
    {
        std::span<double> d_theta = block("quantum.theta");
        for (std::size_t i = 0; i < d_theta.size(); ++i) {
            d_theta[i] += scale * qgrad.d_theta[i];
        }
    }

    // squash
    scratch.d_u.resize(q);
    squash_to_pi_backward(cache.x.angles, qgrad.d_x, scratch.d_u);

    // frontend
    scratch.d_hidden.resize(fc1_.out_dim);
    scratch.d_hidden_pre.resize(fc1_.out_dim);
    if (config_.frontend == FrontendArch::grayscale_mlp) {
        fc2_.backward(cache.hidden_act, scratch.d_u, scratch.d_hidden,
                      block("frontend.fc2.weights"), block("frontend.fc2.bias"),
                      scale);
        relu_backward(cache.hidden_pre, scratch.d_hidden, scratch.d_hidden_pre);
        fc1_.backward(cache.input, scratch.d_hidden_pre, {},
                      block("frontend.fc1.weights"), block("frontend.fc1.bias"),
                      scale);
    } else {
        const int h = config_.input_height;
        const int w = config_.input_width;
        const int h2 = h / 2;
        const int w2 = w / 2;
        scratch.d_flat.resize(cache.pool2.size());
        fc2_.backward(cache.hidden_act, scratch.d_u, scratch.d_hidden,
                      block("frontend.fc2.weights"), block("frontend.fc2.bias"),
                      scale);
        relu_backward(cache.hidden_pre, scratch.d_hidden, scratch.d_hidden_pre);
        fc1_.backward(cache.pool2, scratch.d_hidden_pre, scratch.d_flat,
                      block("frontend.fc1.weights"), block("frontend.fc1.bias"),
                      scale);

        scratch.d_conv_act.resize(cache.conv2_act.size());
        scratch.d_conv_pre.resize(cache.conv2_act.size());
        maxpool2x2_backward(scratch.d_flat, kConv2Channels, h2, w2,
                            cache.argmax2, scratch.d_conv_act);
        relu_backward(cache.conv2_pre, scratch.d_conv_act, scratch.d_conv_pre);
        scratch.d_pool.resize(cache.pool1.size());
        conv2_.backward(cache.pool1, h2, w2, scratch.d_conv_pre, scratch.d_pool,
                        block("frontend.conv2.kernels"),
                        block("frontend.conv2.bias"), scale);

        scratch.d_conv_act.resize(cache.conv1_act.size());
        scratch.d_conv_pre.resize(cache.conv1_act.size());
        maxpool2x2_backward(scratch.d_pool, kConv1Channels, h, w, cache.argmax1,
                            scratch.d_conv_act);
        relu_backward(cache.conv1_pre, scratch.d_conv_act, scratch.d_conv_pre);
        conv1_.backward(cache.input, h, w, scratch.d_conv_pre, {},
                        block("frontend.conv1.kernels"),
                        block("frontend.conv1.bias"), scale);
    }
}

HybridModel make_preset_model(const DatasetPreset &preset, int qubits,
                              int layers) {
    ModelConfig cfg;
    cfg.frontend = preset.arch;
    cfg.input_channels = preset.channels;
    cfg.input_height = preset.height;
    cfg.input_width = preset.width;
    cfg.mlp_hidden = preset.mlp_hidden;
    cfg.qubits = qubits;
    cfg.layers = layers;
    cfg.readout = preset.arch == FrontendArch::grayscale_mlp
                      ? ReadoutArch::linear
                      : ReadoutArch::mlp;
    cfg.num_classes = preset.num_classes;
    return HybridModel(cfg);
}

} // namespace hqnn

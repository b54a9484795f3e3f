#include "hqnn/layers.hpp"

#include "hqnn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hqnn {

namespace {

void require(bool ok, const char *what) {
    if (!ok) {
        throw ConfigError(std::string("shape mismatch: ") + what);
    }
}

} // namespace

DenseLayer::DenseLayer(int in_dim, int out_dim)
    : in_dim(in_dim), out_dim(out_dim),
      weights(static_cast<std::size_t>(in_dim) * out_dim, 0.0),
      bias(out_dim, 0.0) {}

void DenseLayer::init_glorot(Rng &rng) {
    const double bound = std::sqrt(6.0 / (in_dim + out_dim));
    for (double &w : weights) {
        w = rng.uniform(-bound, bound);
    }
    std::fill(bias.begin(), bias.end(), 0.0);
}

void DenseLayer::forward(std::span<const double> input,
                         std::span<double> output) const {
    require(static_cast<int>(input.size()) == in_dim, "dense input");
    require(static_cast<int>(output.size()) == out_dim, "dense output");
    for (int o = 0; o < out_dim; ++o) {
        const double *row = weights.data() + static_cast<std::size_t>(o) * in_dim;
        double acc = bias[o];
        for (int i = 0; i < in_dim; ++i) {
            acc += row[i] * input[i];
        }
        output[o] = acc;
    }
}

void DenseLayer::backward(std::span<const double> input,
                          std::span<const double> upstream,
                          std::span<double> d_input, std::span<double> d_weights,
                          std::span<double> d_bias, double scale) const {
    require(static_cast<int>(input.size()) == in_dim, "dense input");
    require(static_cast<int>(upstream.size()) == out_dim, "dense upstream");
    require(d_weights.size() == weights.size(), "dense d_weights");
    require(d_bias.size() == bias.size(), "dense d_bias");
    if (!d_input.empty()) {
        require(static_cast<int>(d_input.size()) == in_dim, "dense d_input");
        for (int i = 0; i < in_dim; ++i) {
            double acc = 0.0;
            for (int o = 0; o < out_dim; ++o) {
                acc += weights[static_cast<std::size_t>(o) * in_dim + i] *
                       upstream[o];
            }
            d_input[i] = acc;
        }
    }
    for (int o = 0; o < out_dim; ++o) {
        const double u = upstream[o] * scale;
        double *drow = d_weights.data() + static_cast<std::size_t>(o) * in_dim;
        for (int i = 0; i < in_dim; ++i) {
            drow[i] += u * input[i];
        }
        d_bias[o] += u;
    }
}

Conv3x3::Conv3x3(int in_ch, int out_ch)
    : in_ch(in_ch), out_ch(out_ch),
      kernels(static_cast<std::size_t>(out_ch) * in_ch * 9, 0.0),
      bias(out_ch, 0.0) {}

void Conv3x3::init_glorot(Rng &rng) {
    const double bound = std::sqrt(6.0 / (in_ch * 9 + out_ch * 9));
    for (double &w : kernels) {
        w = rng.uniform(-bound, bound);
    }
    std::fill(bias.begin(), bias.end(), 0.0);
}

void Conv3x3::forward(std::span<const double> input, int height, int width,
                      std::span<double> output) const {
    const std::size_t plane = static_cast<std::size_t>(height) * width;
    require(input.size() == plane * in_ch, "conv input");
    require(output.size() == plane * out_ch, "conv output");
    for (int oc = 0; oc < out_ch; ++oc) {
        double *out_plane = output.data() + oc * plane;
        std::fill(out_plane, out_plane + plane, bias[oc]);
        for (int ic = 0; ic < in_ch; ++ic) {
            const double *in_plane = input.data() + ic * plane;
            const double *k =
                kernels.data() + (static_cast<std::size_t>(oc) * in_ch + ic) * 9;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const double kv = k[(dy + 1) * 3 + (dx + 1)];
                    if (kv == 0.0) {
                        continue;
                    }
                    const int y0 = std::max(0, -dy);
                    const int y1 = std::min(height, height - dy);
                    const int x0 = std::max(0, -dx);
                    const int x1 = std::min(width, width - dx);
                    for (int y = y0; y < y1; ++y) {
                        const double *src = in_plane + (y + dy) * width + dx;
                        double *dst = out_plane + y * width;
                        for (int x = x0; x < x1; ++x) {
                            dst[x] += kv * src[x];
                        }
                    }
                }
            }
        }
    }
}

void Conv3x3::backward(std::span<const double> input, int height, int width,
                       std::span<const double> upstream,
                       std::span<double> d_input, std::span<double> d_kernels,
                       std::span<double> d_bias, double scale) const {
    const std::size_t plane = static_cast<std::size_t>(height) * width;
    require(input.size() == plane * in_ch, "conv input");
    require(upstream.size() == plane * out_ch, "conv upstream");
    require(d_kernels.size() == kernels.size(), "conv d_kernels");
    require(d_bias.size() == bias.size(), "conv d_bias");
    if (!d_input.empty()) {
        require(d_input.size() == input.size(), "conv d_input");
        std::fill(d_input.begin(), d_input.end(), 0.0);
    }

    for (int oc = 0; oc < out_ch; ++oc) {
        const double *up_plane = upstream.data() + oc * plane;
        double acc_bias = 0.0;
        for (std::size_t i = 0; i < plane; ++i) {
            acc_bias += up_plane[i];
        }
        d_bias[oc] += scale * acc_bias;
        for (int ic = 0; ic < in_ch; ++ic) {
            const double *in_plane = input.data() + ic * plane;
            const double *k =
                kernels.data() + (static_cast<std::size_t>(oc) * in_ch + ic) * 9;
            double *dk =
                d_kernels.data() + (static_cast<std::size_t>(oc) * in_ch + ic) * 9;
            double *din = d_input.empty() ? nullptr : d_input.data() + ic * plane;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const int y0 = std::max(0, -dy);
                    const int y1 = std::min(height, height - dy);
                    const int x0 = std::max(0, -dx);
                    const int x1 = std::min(width, width - dx);
                    double acc_k = 0.0;
                    const double kv = k[(dy + 1) * 3 + (dx + 1)];
                    for (int y = y0; y < y1; ++y) {
                        const double *src = in_plane + (y + dy) * width + dx;
                        const double *up = up_plane + y * width;
                        for (int x = x0; x < x1; ++x) {
                            acc_k += up[x] * src[x];
                        }
                        if (din != nullptr) {
                            double *dst = din + (y + dy) * width + dx;
                            for (int x = x0; x < x1; ++x) {
                                dst[x] += kv * up[x];
                            }
                        }
                    }
                    dk[(dy + 1) * 3 + (dx + 1)] += scale * acc_k;
                }
            }
        }
    }
}

void relu_forward(std::span<const double> input, std::span<double> output) {
    require(input.size() == output.size(), "relu");
    for (std::size_t i = 0; i < input.size(); ++i) {
        output[i] = input[i] > 0.0 ? input[i] : 0.0;
    }
}

void relu_backward(std::span<const double> input,
                   std::span<const double> upstream, std::span<double> d_input) {
    require(input.size() == upstream.size() && input.size() == d_input.size(),
            "relu backward");
    for (std::size_t i = 0; i < input.size(); ++i) {
        d_input[i] = input[i] > 0.0 ? upstream[i] : 0.0;
    }
}

void maxpool2x2_forward(std::span<const double> input, int channels, int height,
                        int width, std::span<double> output,
                        std::vector<int> &argmax) {
    require(height % 2 == 0 && width % 2 == 0, "maxpool spatial size");
    const std::size_t plane = static_cast<std::size_t>(height) * width;
    const int oh = height / 2;
    const int ow = width / 2;
    const std::size_t out_plane = static_cast<std::size_t>(oh) * ow;
    require(input.size() == plane * channels, "maxpool input");
    require(output.size() == out_plane * channels, "maxpool output");
    argmax.assign(out_plane * channels, 0);
    for (int c = 0; c < channels; ++c) {
        const double *in_plane = input.data() + c * plane;
        double *out = output.data() + c * out_plane;
        int *arg = argmax.data() + c * out_plane;
        for (int y = 0; y < oh; ++y) {
            for (int x = 0; x < ow; ++x) {
                const int base = (2 * y) * width + 2 * x;
                int best = base;
                double best_v = in_plane[base];
                const int candidates[3] = {base + 1, base + width,
                                           base + width + 1};
                for (int idx : candidates) {
                    if (in_plane[idx] > best_v) {
                        best_v = in_plane[idx];
                        best = idx;
                    }
                }
                out[y * ow + x] = best_v;
                arg[y * ow + x] = static_cast<int>(c * plane) + best;
            }
        }
    }
}

void maxpool2x2_backward(std::span<const double> upstream, int channels,
                         int height, int width, std::span<const int> argmax,
                         std::span<double> d_input) {
    const std::size_t plane = static_cast<std::size_t>(height) * width;
    const std::size_t out_plane = plane / 4;
    require(upstream.size() == out_plane * channels, "maxpool upstream");
    require(argmax.size() == upstream.size(), "maxpool argmax");
    require(d_input.size() == plane * channels, "maxpool d_input");
    std::fill(d_input.begin(), d_input.end(), 0.0);
    for (std::size_t i = 0; i < upstream.size(); ++i) {
        d_input[argmax[i]] += upstream[i];
    }
}

SoftmaxResult softmax_cross_entropy(std::span<const double> logits, int label) {
    if (logits.size() < 2) {
        throw ConfigError("softmax needs at least 2 classes");
    }
    if (label < 0 || label >= static_cast<int>(logits.size())) {
        throw ConfigError("label " + std::to_string(label) +
                          " out of range for " + std::to_string(logits.size()) +
                          " classes");
    }
    SoftmaxResult res;
    const double peak = *std::max_element(logits.begin(), logits.end());
    res.probs.resize(logits.size());
    double z = 0.0;
    for (std::size_t c = 0; c < logits.size(); ++c) {
        res.probs[c] = std::exp(logits[c] - peak);
        z += res.probs[c];
    }
    for (double &p : res.probs) {
        p /= z;
    }
    res.loss = -(logits[label] - peak - std::log(z));
    res.d_logits = res.probs;
    res.d_logits[label] -= 1.0;
    return res;
}

} // namespace hqnn

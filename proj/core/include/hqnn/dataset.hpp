#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hqnn {

/// In-memory labeled image set, pixels already normalized to [0, 1].
struct Dataset {
    int channels = 0;
    int height = 0;
    int width = 0;
    int num_classes = 0;
    std::vector<float> images; // n * channels * height * width
    std::vector<int> labels;

    std::size_t size() const { return labels.size(); }
    std::size_t sample_dim() const {
        return static_cast<std::size_t>(channels) * height * width;
    }
    std::span<const float> image(std::size_t i) const {
        return {images.data() + i * sample_dim(), sample_dim()};
    }

    Dataset subset(std::span<const int> indices) const;
};

struct SplitPlan {
    std::size_t train_count = 0;
    std::size_t val_count = 0;
    std::size_t test_count = 0;
    std::uint64_t shuffle_seed = 0;
};

struct DataSplits {
    Dataset train;
    Dataset val;
    Dataset test;
};

/// MNIST IDX loaders. Big-endian headers, magic 0x00000803 for images and
/// 0x00000801 for labels; pixels divided by 255. Throws DataFormatError on
/// bad magic, truncation, or image/label count mismatch.
Dataset load_mnist_idx(const std::string &images_path,
                       const std::string &labels_path);

/// Writes a dataset back to the IDX pair (test support and fixtures).
void save_mnist_idx(const std::string &images_path,
                    const std::string &labels_path, const Dataset &data);

/// CIFAR-10 binary batches: records of 1 label byte + 3072 pixel bytes
/// (channel-planar R, G, B). Throws DataFormatError if a file size is not
/// a multiple of 3073.
Dataset load_cifar10_bin(const std::vector<std::string> &batch_paths);

/// One seeded permutation partitions indices into train, val, test in that
/// order. Throws ConfigError if the counts exceed the dataset.
DataSplits make_splits(const Dataset &data, const SplitPlan &plan);

/// Mini-batch index order for one epoch: fresh seeded shuffle, final
/// partial batch retained.
std::vector<std::vector<int>> batches(std::size_t n, std::size_t batch_size,
                                      std::uint64_t epoch_seed);

/// Tiny labeled sets for tests. Kinds:
///  - "two_gaussians": 1x2x2 images, 2 linearly separable classes.
Dataset synthetic_fixture(const std::string &kind, std::size_t n,
                          std::uint64_t seed);

enum class FrontendArch { grayscale_mlp, rgb_cnn };

/// Per-dataset protocol constants (splits, budget, operating points).
struct DatasetPreset {
    std::string name;
    FrontendArch arch = FrontendArch::grayscale_mlp;
    int channels = 1;
    int height = 28;
    int width = 28;
    int num_classes = 10;
    std::size_t train_count = 0;
    std::size_t val_count = 0;
    std::size_t test_count = 0;
    int epochs = 10;
    int batch_size = 64;
    double learning_rate = 1e-2;
    int mlp_hidden = 128;             // grayscale frontend hidden width
    int fixed_qubits_depth_sweep = 4; // Q held fixed while L varies
    int fixed_layers_width_sweep = 6; // L held fixed while Q varies
    bool loadable = true;             // intel is representable but not loadable
};

/// Known presets: "mnist", "cifar10", "intel", "synthetic".
/// Throws ConfigError for unknown names.
const DatasetPreset &dataset_preset(const std::string &name);

/// Loads a preset and applies its protocol splits: train/val drawn from the
/// official train partition by one seeded permutation, test subsampled from
/// the official test partition with a seed derived from the same master
/// seed. Throws ConfigError for presets marked not loadable.
DataSplits load_preset_splits(const DatasetPreset &preset,
                              const std::string &data_dir, std::uint64_t seed);

} // namespace hqnn

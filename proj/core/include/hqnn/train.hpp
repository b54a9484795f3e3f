#pragma once

#include "hqnn/dataset.hpp"
#include "hqnn/model.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hqnn {

struct TrainConfig {
    std::string dataset = "mnist"; // preset name, recorded with every run
    int epochs = 10;
    int batch_size = 64;
    double learning_rate = 1e-2;
    double weight_decay = 1e-4;
    std::uint64_t seed = 1;

    bool operator==(const TrainConfig &) const = default;
};

struct EpochRecord {
    int epoch = 0; // 1-based
    double train_loss = 0.0;
    double val_accuracy = 0.0;
    double val_loss = 0.0;
    double qgn_epoch_mean = 0.0; // mean over mini-batches of ||grad theta||_2

    bool operator==(const EpochRecord &) const = default;
};

struct Predictions {
    int num_classes = 0;
    std::vector<double> probabilities; // N x C row-major, rows sum to 1
    std::vector<int> predicted;        // argmax, first index on ties

    std::span<const double> row(std::size_t i) const {
        return {probabilities.data() + i * num_classes,
                static_cast<std::size_t>(num_classes)};
    }
};

struct TrainResult {
    std::vector<EpochRecord> history;
    int best_epoch = 0; // 1-based; earliest epoch on val-accuracy ties
    double best_val_accuracy = 0.0;
};

/// Runs the fixed training budget: exactly config.epochs epochs of seeded
/// mini-batches, Adam with coupled L2, per-batch QGN recording, per-epoch
/// validation. On return the model holds the parameters of the epoch with
/// the highest validation accuracy. All randomness derives from
/// config.seed. Throws NumericError if the loss turns non-finite.
TrainResult train_model(HybridModel &model, const DataSplits &splits,
                        const TrainConfig &config);

/// Softmax probabilities and argmax labels for every sample.
Predictions evaluate(const HybridModel &model, const Dataset &data);

/// Mean cross-entropy of predictions against the dataset labels.
double mean_cross_entropy(const Predictions &pred, std::span<const int> labels);

} // namespace hqnn

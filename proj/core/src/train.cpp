#include "hqnn/train.hpp"

#include "hqnn/errors.hpp"
#include "hqnn/metrics.hpp"
#include "hqnn/optimizer.hpp"
#include "hqnn/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hqnn {

namespace {

double l2_norm(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) {
        acc += x * x;
    }
    return std::sqrt(acc);
}

} // namespace

TrainResult train_model(HybridModel &model, const DataSplits &splits,
                        const TrainConfig &config) {
    if (config.epochs < 1 || config.batch_size < 1) {
        throw ConfigError("training needs epochs >= 1 and batch_size >= 1");
    }
    if (splits.train.size() == 0 || splits.val.size() == 0) {
        throw ConfigError("training needs nonempty train and val splits");
    }

    Rng init_rng(mix_seed(config.seed, fnv1a("init")));
    model.init_params(init_rng);

    std::vector<double> params(model.param_count());
    model.export_params(params);

    AdamConfig adam_cfg;
    adam_cfg.learning_rate = config.learning_rate;
    adam_cfg.weight_decay = config.weight_decay;
    AdamOptimizer adam(adam_cfg, params.size());

    std::vector<double> grads(params.size(), 0.0);
    HybridModel::Cache cache;

    TrainResult result;
    std::vector<double> best_params = params;

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        const auto batch_plan =
            batches(splits.train.size(), config.batch_size,
                    mix_seed(config.seed, static_cast<std::uint64_t>(epoch)));
        double loss_sum = 0.0;
        double qgn_sum = 0.0;
        for (const auto &batch : batch_plan) {
            std::fill(grads.begin(), grads.end(), 0.0);
            const double scale = 1.0 / static_cast<double>(batch.size());
            double batch_loss = 0.0;
            for (int idx : batch) {
                const auto logits = model.forward(
                    splits.train.image(static_cast<std::size_t>(idx)), cache);
                const SoftmaxResult sce = softmax_cross_entropy(
                    logits, splits.train.labels[static_cast<std::size_t>(idx)]);
                batch_loss += sce.loss;
                model.backward(cache, sce.d_logits, grads, scale);
            }
            batch_loss *= scale;
            if (!std::isfinite(batch_loss)) {
                throw NumericError("non-finite training loss in epoch " +
                                   std::to_string(epoch));
            }
            loss_sum += batch_loss * static_cast<double>(batch.size());
            // QGN over the raw loss gradient, before weight decay enters.
            qgn_sum += l2_norm(std::span<const double>(grads).subspan(
                model.theta_offset(), model.theta_count()));
            adam.step(params, grads);
            model.import_params(params);
        }

        const Predictions val_pred = evaluate(model, splits.val);
        const double val_acc = accuracy(val_pred.predicted, splits.val.labels);
        const double val_loss = mean_cross_entropy(val_pred, splits.val.labels);

        EpochRecord rec;
        rec.epoch = epoch;
        rec.train_loss = loss_sum / static_cast<double>(splits.train.size());
        rec.val_accuracy = val_acc;
        rec.val_loss = val_loss;
        rec.qgn_epoch_mean = qgn_sum / static_cast<double>(batch_plan.size());
        result.history.push_back(rec);

        if (result.best_epoch == 0 || val_acc > result.best_val_accuracy) {
            result.best_epoch = epoch;
            result.best_val_accuracy = val_acc;
            best_params = params;
        }
    }

    model.import_params(best_params);
    return result;
}

Predictions evaluate(const HybridModel &model, const Dataset &data) {
    Predictions pred;
    pred.num_classes = model.config().num_classes;
    pred.probabilities.resize(data.size() *
                              static_cast<std::size_t>(pred.num_classes));
    pred.predicted.resize(data.size());
    HybridModel::Cache cache;
    std::vector<double> probs(pred.num_classes);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto logits = model.forward(data.image(i), cache);
        const double peak = *std::max_element(logits.begin(), logits.end());
        double z = 0.0;
        for (int c = 0; c < pred.num_classes; ++c) {
            probs[c] = std::exp(logits[c] - peak);
            z += probs[c];
        }
        int arg = 0;
        for (int c = 0; c < pred.num_classes; ++c) {
            probs[c] /= z;
            pred.probabilities[i * pred.num_classes + c] = probs[c];
            if (probs[c] > probs[arg]) {
                arg = c;
            }
        }
        pred.predicted[i] = arg;
    }
    return pred;
}

double mean_cross_entropy(const Predictions &pred, std::span<const int> labels) {
    if (labels.size() * static_cast<std::size_t>(pred.num_classes) !=
        pred.probabilities.size()) {
        throw ConfigError("prediction/label size mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double p =
            pred.probabilities[i * pred.num_classes + labels[i]];
        acc -= std::log(std::max(p, 1e-300));
    }
    return acc / static_cast<double>(labels.size());
}

} // namespace hqnn

#include "hqnn/metrics.hpp"

#include "hqnn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hqnn {

ConfusionMatrix ConfusionMatrix::from_predictions(std::span<const int> predicted,
                                                  std::span<const int> labels,
                                                  int num_classes) {
    if (predicted.size() != labels.size()) {
        throw ConfigError("predicted/label length mismatch");
    }
    ConfusionMatrix cm;
    cm.num_classes = num_classes;
    cm.counts.assign(static_cast<std::size_t>(num_classes) * num_classes, 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0 || labels[i] >= num_classes || predicted[i] < 0 ||
            predicted[i] >= num_classes) {
            throw ConfigError("class index out of range in confusion matrix");
        }
        ++cm.counts[static_cast<std::size_t>(labels[i]) * num_classes +
                    predicted[i]];
    }
    return cm;
}

std::int64_t ConfusionMatrix::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

double accuracy(std::span<const int> predicted, std::span<const int> labels) {
    if (predicted.empty() || predicted.size() != labels.size()) {
        throw ConfigError("accuracy requires equal nonempty inputs");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        hits += predicted[i] == labels[i];
    }
    return static_cast<double>(hits) / static_cast<double>(labels.size());
}

MacroPRF1 macro_prf1(const ConfusionMatrix &confusion) {
    const int c = confusion.num_classes;
    if (c < 2) {
        throw ConfigError("macro P/R/F1 needs at least 2 classes");
    }
    double sum_p = 0.0;
    double sum_r = 0.0;
    double sum_f = 0.0;
    for (int k = 0; k < c; ++k) {
        std::int64_t tp = confusion.at(k, k);
        std::int64_t fp = 0;
        std::int64_t fn = 0;
        for (int j = 0; j < c; ++j) {
            if (j != k) {
                fp += confusion.at(j, k);
                fn += confusion.at(k, j);
            }
        }
        const double p = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
        const double r = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
        const double f = p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
        sum_p += p;
        sum_r += r;
        sum_f += f;
    }
    return {sum_p / c, sum_r / c, sum_f / c};
}

double pr_auc_micro(std::span<const double> probabilities, int num_classes,
                    std::span<const int> labels) {
    const std::size_t n = labels.size();
    if (n == 0 || num_classes < 2 ||
        probabilities.size() != n * static_cast<std::size_t>(num_classes)) {
        throw ConfigError("pr_auc_micro shape mismatch");
    }
    for (int label : labels) {
        if (label < 0 || label >= num_classes) {
            throw ConfigError("pr_auc_micro label out of range");
        }
    }
    const std::size_t m = probabilities.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (probabilities[a] != probabilities[b]) {
            return probabilities[a] > probabilities[b];
        }
        return a < b;
    });

    const double total_positives = static_cast<double>(n);
    double ap = 0.0;
    std::size_t tp = 0;
    for (std::size_t rank = 1; rank <= m; ++rank) {
        const std::size_t idx = order[rank - 1];
        const std::size_t sample = idx / num_classes;
        const int cls = static_cast<int>(idx % num_classes);
        if (labels[sample] == cls) {
            ++tp;
            const double precision = static_cast<double>(tp) / rank;
            ap += precision / total_positives;
        }
    }
    return ap;
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) {
            ++j;
        }
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = avg;
        }
        i = j + 1;
    }
    return ranks;
}

std::optional<double> spearman_rho(std::span<const double> a,
                                   std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ConfigError("spearman_rho length mismatch");
    }
    if (a.size() < 3) {
        throw ConfigError("spearman_rho needs n >= 3");
    }
    const std::vector<double> ra = average_ranks(a);
    const std::vector<double> rb = average_ranks(b);
    const double n = static_cast<double>(a.size());
    const double mean = (n + 1.0) / 2.0;
    double cov = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = ra[i] - mean;
        const double db = rb[i] - mean;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a <= 0.0 || var_b <= 0.0) {
        return std::nullopt;
    }
    return cov / std::sqrt(var_a * var_b);
}

} // namespace hqnn

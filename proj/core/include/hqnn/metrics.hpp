#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hqnn {

struct ConfusionMatrix {
    int num_classes = 0;
    std::vector<std::int64_t> counts; // [true * C + predicted]

    static ConfusionMatrix from_predictions(std::span<const int> predicted,
                                            std::span<const int> labels,
                                            int num_classes);

    std::int64_t at(int truth, int predicted) const {
        return counts[static_cast<std::size_t>(truth) * num_classes + predicted];
    }
    std::int64_t total() const;
};

struct MacroPRF1 {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Fraction of exact matches; throws ConfigError on empty input.
double accuracy(std::span<const int> predicted, std::span<const int> labels);

/// Per-class P/R/F1 with the 0/0 -> 0 convention, unweighted mean over all
/// classes (never-predicted classes stay in the mean).
MacroPRF1 macro_prf1(const ConfusionMatrix &confusion);

/// Micro-averaged one-vs-rest PR-AUC from softmax probabilities
/// (probabilities flat N x C row-major). All N*C (score, relevance) pairs
/// are ranked by score descending, ties broken by original flat index, and
/// AP = sum_n (R_n - R_{n-1}) * P_n over the per-item operating points.
double pr_auc_micro(std::span<const double> probabilities, int num_classes,
                    std::span<const int> labels);

/// Average ranks (1-based, ties averaged).
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman rank correlation; average ranks on ties. Returns nullopt when
/// either input has zero rank variance. Throws ConfigError for n < 3 or
/// length mismatch.
std::optional<double> spearman_rho(std::span<const double> a,
                                   std::span<const double> b);

struct MetricsRow {
    double accuracy = 0.0;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    double pr_auc = 0.0;
};

} // namespace hqnn

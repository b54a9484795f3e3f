#pragma once

#include "hqnn/dataset.hpp"
#include "hqnn/diagnostics.hpp"
#include "hqnn/metrics.hpp"
#include "hqnn/train.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hqnn {

enum class SweepAxis { depth, width };

std::string axis_to_string(SweepAxis axis);
SweepAxis axis_from_string(const std::string &s);

struct SplitCounts {
    std::size_t train = 0;
    std::size_t val = 0;
    std::size_t test = 0;
};

/// One controlled sweep: vary exactly one architectural axis. Depth sweeps
/// hold Q = fixed_value and take L from sweep_range; width sweeps hold
/// L = fixed_value and take Q from sweep_range. Loaded from strict JSON
/// (schema_version 1, unknown keys rejected).
struct SweepConfig {
    std::string dataset;
    std::string data_dir;
    SweepAxis axis = SweepAxis::depth;
    int fixed_value = 0;
    std::vector<int> sweep_range;
    TrainConfig train;   // resolved: preset budget overridden by the file
    SplitCounts splits;  // resolved the same way
    DiagSampling diagnostics;
    std::uint64_t seed = 1;
    int repeats = 1;
    int parallelism = 1;
    std::string output_dir;

    static SweepConfig from_json_text(const std::string &text);
    static SweepConfig from_json_file(const std::string &path);
    std::string to_json_text() const;
};

/// Single-configuration run description for the `train` subcommand; same
/// strict-JSON conventions, same seed derivation as the matching sweep
/// point.
struct RunConfig {
    std::string dataset;
    std::string data_dir;
    int qubits = 0; // 0 = preset depth-sweep operating point
    int layers = 0; // 0 = preset width-sweep operating point
    TrainConfig train;
    SplitCounts splits;
    DiagSampling diagnostics;
    std::uint64_t seed = 1;
    std::string snapshot_out; // empty = no snapshot

    static RunConfig from_json_text(const std::string &text);
    static RunConfig from_json_file(const std::string &path);
};

struct RunRecord {
    std::string dataset;
    SweepAxis axis = SweepAxis::depth;
    int qubits = 0;
    int layers = 0;
    std::uint64_t seed = 0; // the derived per-point seed
    int repeat = 0;
    std::string status = "ok"; // "ok" | "failed"
    std::string error;         // failure reason when status == "failed"
    MetricsRow metrics;
    DiagnosticsReport diagnostics;
    double wall_clock_seconds = 0.0;
    std::vector<EpochRecord> history;

    bool operator==(const RunRecord &) const = default;
};

/// Rows: predictive metrics; columns: quantum diagnostics. Missing entries
/// are correlations that are undefined (zero rank variance).
struct CorrelationMatrix {
    static constexpr std::array<const char *, 3> kRows = {"pr_auc", "accuracy",
                                                          "macro_f1"};
    static constexpr std::array<const char *, 3> kCols = {"qce", "eee_bits",
                                                          "qgn_mean"};
    std::array<std::array<std::optional<double>, 3>, 3> rho;
};

/// Per-point seed: hash of master seed, dataset name, Q, L, repeat index.
std::uint64_t point_seed(std::uint64_t master, const std::string &dataset,
                         int qubits, int layers, int repeat);

/// Executes every sweep point, training under the fixed budget and
/// computing test metrics plus diagnostics. Completed points persist
/// immediately under <output_dir>/points/; with resume=true existing point
/// files are loaded instead of recomputed. Training divergence marks the
/// record "failed" and the sweep continues.
std::vector<RunRecord> run_sweep(const SweepConfig &config, bool resume);

/// Runs a single configuration (the `train` subcommand); the trained model
/// is optionally written as a snapshot.
RunRecord run_single(const RunConfig &config);

/// Spearman matrix over the non-failed records. Throws ConfigError with
/// fewer than 3 usable records.
CorrelationMatrix correlate(std::span<const RunRecord> records);

/// results.json text (schema_version 1, full nested records).
std::string records_to_json_text(std::span<const RunRecord> records);
std::vector<RunRecord> records_from_json_text(const std::string &text);
std::vector<RunRecord> records_from_json_file(const std::string &path);

} // namespace hqnn

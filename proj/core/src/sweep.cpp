#include "hqnn/sweep.hpp"

#include "hqnn/errors.hpp"
#include "hqnn/snapshot.hpp"
#include "json_util.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace hqnn {

using detail::json;
namespace fs = std::filesystem;

std::string axis_to_string(SweepAxis axis) {
    return axis == SweepAxis::depth ? "depth" : "width";
}

SweepAxis axis_from_string(const std::string &s) {
    if (s == "depth") {
        return SweepAxis::depth;
    }
    if (s == "width") {
        return SweepAxis::width;
    }
    throw ConfigError("axis must be \"depth\" or \"width\", got \"" + s + "\"");
}

std::uint64_t point_seed(std::uint64_t master, const std::string &dataset,
                         int qubits, int layers, int repeat) {
    std::uint64_t h = mix_seed(master, fnv1a(dataset));
    h = mix_seed(h, static_cast<std::uint64_t>(qubits));
    h = mix_seed(h, static_cast<std::uint64_t>(layers));
    h = mix_seed(h, static_cast<std::uint64_t>(repeat));
    return h;
}

namespace {

json parse_text(const std::string &text, const std::string &context) {
    try {
        return json::parse(text);
    } catch (const json::exception &e) {
        throw DataFormatError("malformed JSON in " + context + ": " + e.what());
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataFormatError("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomic(const std::string &path, const std::string &text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw DataFormatError("cannot write " + tmp);
        }
        out << text;
    }
    fs::rename(tmp, path);
}

void check_schema_version(const json &j, const std::string &context) {
    if (!j.contains("schema_version") ||
        j.at("schema_version").get<int>() != 1) {
        throw ConfigError(context + " requires \"schema_version\": 1");
    }
}

void apply_train_overrides(const json &j, TrainConfig &train) {
    detail::require_keys(
        j, {"epochs", "batch_size", "learning_rate", "weight_decay"},
        "train overrides");
    if (j.contains("epochs")) {
        train.epochs = j.at("epochs").get<int>();
    }
    if (j.contains("batch_size")) {
        train.batch_size = j.at("batch_size").get<int>();
    }
    if (j.contains("learning_rate")) {
        train.learning_rate = j.at("learning_rate").get<double>();
    }
    if (j.contains("weight_decay")) {
        train.weight_decay = j.at("weight_decay").get<double>();
    }
}

void apply_split_overrides(const json &j, SplitCounts &splits) {
    detail::require_keys(j, {"train", "val", "test"}, "splits overrides");
    if (j.contains("train")) {
        splits.train = j.at("train").get<std::size_t>();
    }
    if (j.contains("val")) {
        splits.val = j.at("val").get<std::size_t>();
    }
    if (j.contains("test")) {
        splits.test = j.at("test").get<std::size_t>();
    }
}

void apply_diag_overrides(const json &j, DiagSampling &diag) {
    detail::require_keys(j, {"qce_states", "eee_samples"},
                         "diagnostics overrides");
    if (j.contains("qce_states")) {
        diag.qce_states = j.at("qce_states").get<int>();
    }
    if (j.contains("eee_samples")) {
        diag.eee_samples = j.at("eee_samples").get<int>();
    }
}

// Preset defaults for budget and splits, before file overrides.
void seed_defaults_from_preset(const std::string &dataset, TrainConfig &train,
                               SplitCounts &splits) {
    const DatasetPreset &preset = dataset_preset(dataset);
    train.dataset = dataset;
    train.epochs = preset.epochs;
    train.batch_size = preset.batch_size;
    train.learning_rate = preset.learning_rate;
    splits = {preset.train_count, preset.val_count, preset.test_count};
}

DataSplits load_splits_for(const std::string &dataset,
                           const std::string &data_dir,
                           const SplitCounts &counts, std::uint64_t master_seed) {
    DatasetPreset preset = dataset_preset(dataset);
    preset.train_count = counts.train;
    preset.val_count = counts.val;
    preset.test_count = counts.test;
    return load_preset_splits(preset, data_dir, mix_seed(master_seed, fnv1a("data")));
}

MetricsRow metrics_from_predictions(const Predictions &pred,
                                    std::span<const int> labels) {
    MetricsRow row;
    row.accuracy = accuracy(pred.predicted, labels);
    const ConfusionMatrix cm = ConfusionMatrix::from_predictions(
        pred.predicted, labels, pred.num_classes);
    const MacroPRF1 prf = macro_prf1(cm);
    row.macro_precision = prf.precision;
    row.macro_recall = prf.recall;
    row.macro_f1 = prf.f1;
    row.pr_auc = pr_auc_micro(pred.probabilities, pred.num_classes, labels);
    return row;
}

json record_to_json(const RunRecord &r) {
    json j;
    j["dataset"] = r.dataset;
    j["axis"] = axis_to_string(r.axis);
    j["qubits"] = r.qubits;
    j["layers"] = r.layers;
    j["seed"] = r.seed;
    j["repeat"] = r.repeat;
    j["status"] = r.status;
    j["error"] = r.error;
    j["metrics"] = detail::to_json(r.metrics);
    j["diagnostics"] = detail::to_json(r.diagnostics);
    j["wall_clock_seconds"] = r.wall_clock_seconds;
    json hist = json::array();
    for (const EpochRecord &e : r.history) {
        hist.push_back(detail::to_json(e));
    }
    j["history"] = std::move(hist);
    return j;
}

RunRecord record_from_json(const json &j) {
    detail::require_keys(j,
                         {"dataset", "axis", "qubits", "layers", "seed",
                          "repeat", "status", "error", "metrics", "diagnostics",
                          "wall_clock_seconds", "history"},
                         "run record");
    RunRecord r;
    r.dataset = j.at("dataset").get<std::string>();
    r.axis = axis_from_string(j.at("axis").get<std::string>());
    r.qubits = j.at("qubits").get<int>();
    r.layers = j.at("layers").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.repeat = j.at("repeat").get<int>();
    r.status = j.at("status").get<std::string>();
    r.error = j.at("error").get<std::string>();
    r.metrics = detail::metrics_row_from_json(j.at("metrics"));
    r.diagnostics = detail::diagnostics_from_json(j.at("diagnostics"));
    r.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
    for (const json &e : j.at("history")) {
        r.history.push_back(detail::epoch_record_from_json(e));
    }
    return r;
}

// Trains and evaluates one (Q, L) point on shared splits.
RunRecord execute_point(const std::string &dataset, SweepAxis axis, int qubits,
                        int layers, int repeat, std::uint64_t master_seed,
                        const TrainConfig &train_template,
                        const DiagSampling &diag_template,
                        const DataSplits &splits, HybridModel *trained_out) {
    RunRecord record;
    record.dataset = dataset;
    record.axis = axis;
    record.qubits = qubits;
    record.layers = layers;
    record.repeat = repeat;
    record.seed = point_seed(master_seed, dataset, qubits, layers, repeat);

    const auto t0 = std::chrono::steady_clock::now();
    HybridModel model = make_preset_model(dataset_preset(dataset), qubits, layers);
    TrainConfig tc = train_template;
    tc.dataset = dataset;
    tc.seed = record.seed;
    try {
        const TrainResult tr = train_model(model, splits, tc);
        record.history = tr.history;
        const Predictions pred = evaluate(model, splits.test);
        record.metrics = metrics_from_predictions(pred, splits.test.labels);
        if (trained_out != nullptr) {
            *trained_out = model;
        }
    } catch (const NumericError &e) {
        record.status = "failed";
        record.error = e.what();
    }

    DiagSampling diag = diag_template;
    diag.seed = mix_seed(record.seed, fnv1a("diag"));
    record.diagnostics = compute_diagnostics(model.circuit(), diag);
    if (!record.history.empty()) {
        record.diagnostics.qgn_mean = summarize_qgn(record.history);
    }

    record.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return record;
}

std::string point_file_name(const std::string &dataset, int qubits, int layers,
                            int repeat) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s_q%02d_l%02d_r%02d.json", dataset.c_str(),
                  qubits, layers, repeat);
    return buf;
}

void validate_sweep(const SweepConfig &c) {
    if (c.sweep_range.empty()) {
        throw ConfigError("sweep_range must be nonempty");
    }
    for (int v : c.sweep_range) {
        if (v < 2) {
            throw ConfigError("sweep_range values must be >= 2");
        }
    }
    if (c.axis == SweepAxis::depth && c.fixed_value < 2) {
        throw ConfigError("depth sweep needs fixed Q >= 2");
    }
    if (c.axis == SweepAxis::width && c.fixed_value < 1) {
        throw ConfigError("width sweep needs fixed L >= 1");
    }
    if (c.repeats < 1 || c.parallelism < 1) {
        throw ConfigError("repeats and parallelism must be >= 1");
    }
    if (c.output_dir.empty()) {
        throw ConfigError("output_dir must be set");
    }
    dataset_preset(c.dataset);
}

} // namespace

SweepConfig SweepConfig::from_json_text(const std::string &text) {
    const json j = parse_text(text, "sweep config");
    detail::require_keys(j,
                         {"schema_version", "dataset", "data_dir", "axis",
                          "fixed_value", "sweep_range", "train", "splits",
                          "diagnostics", "seed", "repeats", "parallelism",
                          "output_dir"},
                         "sweep config");
    check_schema_version(j, "sweep config");
    SweepConfig c;
    c.dataset = j.at("dataset").get<std::string>();
    c.data_dir = j.value("data_dir", "data/" + c.dataset);
    c.axis = axis_from_string(j.at("axis").get<std::string>());
    c.fixed_value = j.at("fixed_value").get<int>();
    c.sweep_range = j.at("sweep_range").get<std::vector<int>>();
    seed_defaults_from_preset(c.dataset, c.train, c.splits);
    if (j.contains("train")) {
        apply_train_overrides(j.at("train"), c.train);
    }
    if (j.contains("splits")) {
        apply_split_overrides(j.at("splits"), c.splits);
    }
    if (j.contains("diagnostics")) {
        apply_diag_overrides(j.at("diagnostics"), c.diagnostics);
    }
    c.seed = j.value("seed", std::uint64_t{1});
    c.train.seed = c.seed;
    c.repeats = j.value("repeats", 1);
    c.parallelism = j.value("parallelism", 1);
    c.output_dir = j.at("output_dir").get<std::string>();
    validate_sweep(c);
    return c;
}

SweepConfig SweepConfig::from_json_file(const std::string &path) {
    return from_json_text(read_file(path));
}

std::string SweepConfig::to_json_text() const {
    json j;
    j["schema_version"] = 1;
    j["dataset"] = dataset;
    j["data_dir"] = data_dir;
    j["axis"] = axis_to_string(axis);
    j["fixed_value"] = fixed_value;
    j["sweep_range"] = sweep_range;
    j["train"] = json{{"epochs", train.epochs},
                      {"batch_size", train.batch_size},
                      {"learning_rate", train.learning_rate},
                      {"weight_decay", train.weight_decay}};
    j["splits"] =
        json{{"train", splits.train}, {"val", splits.val}, {"test", splits.test}};
    j["diagnostics"] = json{{"qce_states", diagnostics.qce_states},
                            {"eee_samples", diagnostics.eee_samples}};
    j["seed"] = seed;
    j["repeats"] = repeats;
    j["parallelism"] = parallelism;
    j["output_dir"] = output_dir;
    return j.dump(2) + "\n";
}

RunConfig RunConfig::from_json_text(const std::string &text) {
    const json j = parse_text(text, "run config");
    detail::require_keys(j,
                         {"schema_version", "dataset", "data_dir", "qubits",
                          "layers", "train", "splits", "diagnostics", "seed",
                          "snapshot_out"},
                         "run config");
    check_schema_version(j, "run config");
    RunConfig c;
    c.dataset = j.at("dataset").get<std::string>();
    c.data_dir = j.value("data_dir", "data/" + c.dataset);
    const DatasetPreset &preset = dataset_preset(c.dataset);
    c.qubits = j.value("qubits", preset.fixed_qubits_depth_sweep);
    c.layers = j.value("layers", preset.fixed_layers_width_sweep);
    seed_defaults_from_preset(c.dataset, c.train, c.splits);
    if (j.contains("train")) {
        apply_train_overrides(j.at("train"), c.train);
    }
    if (j.contains("splits")) {
        apply_split_overrides(j.at("splits"), c.splits);
    }
    if (j.contains("diagnostics")) {
        apply_diag_overrides(j.at("diagnostics"), c.diagnostics);
    }
    c.seed = j.value("seed", std::uint64_t{1});
    c.snapshot_out = j.value("snapshot_out", "");
    return c;
}

RunConfig RunConfig::from_json_file(const std::string &path) {
    return from_json_text(read_file(path));
}

std::vector<RunRecord> run_sweep(const SweepConfig &config, bool resume) {
    validate_sweep(config);
    const fs::path points_dir = fs::path(config.output_dir) / "points";
    fs::create_directories(points_dir);

    const DataSplits splits = load_splits_for(config.dataset, config.data_dir,
                                              config.splits, config.seed);

    struct PointTask {
        int qubits;
        int layers;
        int repeat;
        std::string file;
        bool done = false;
    };
    std::vector<PointTask> tasks;
    std::vector<RunRecord> records;
    for (int value : config.sweep_range) {
        const int q = config.axis == SweepAxis::depth ? config.fixed_value : value;
        const int l = config.axis == SweepAxis::depth ? value : config.fixed_value;
        for (int rep = 0; rep < config.repeats; ++rep) {
            tasks.push_back({q, l, rep,
                             (points_dir / point_file_name(config.dataset, q, l, rep))
                                 .string()});
        }
    }
    records.resize(tasks.size());

    // Resume: completed point files are trusted and skipped.
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (resume && fs::exists(tasks[i].file)) {
            records[i] = record_from_json(
                parse_text(read_file(tasks[i].file), tasks[i].file));
            tasks[i].done = true;
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) {
                return;
            }
            if (tasks[i].done) {
                continue;
            }
            RunRecord rec = execute_point(
                config.dataset, config.axis, tasks[i].qubits, tasks[i].layers,
                tasks[i].repeat, config.seed, config.train, config.diagnostics,
                splits, nullptr);
            write_file_atomic(tasks[i].file, record_to_json(rec).dump(2) + "\n");
            records[i] = std::move(rec);
        }
    };

    const int workers =
        std::min<int>(config.parallelism, static_cast<int>(tasks.size()));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back(worker);
        }
        for (std::thread &t : pool) {
            t.join();
        }
    }
    return records;
}

RunRecord run_single(const RunConfig &config) {
    const DataSplits splits = load_splits_for(config.dataset, config.data_dir,
                                              config.splits, config.seed);
    HybridModel trained = make_preset_model(dataset_preset(config.dataset),
                                            config.qubits, config.layers);
    RunRecord record = execute_point(
        config.dataset, SweepAxis::depth, config.qubits, config.layers, 0,
        config.seed, config.train, config.diagnostics, splits, &trained);
    if (!config.snapshot_out.empty() && record.status == "ok") {
        TrainConfig tc = config.train;
        tc.dataset = config.dataset;
        tc.seed = record.seed;
        save_model_snapshot(config.snapshot_out, trained, tc);
    }
    return record;
}

CorrelationMatrix correlate(std::span<const RunRecord> records) {
    std::vector<double> pr_auc, acc, f1, qce, eee, qgn;
    for (const RunRecord &r : records) {
        if (r.status != "ok") {
            continue;
        }
        pr_auc.push_back(r.metrics.pr_auc);
        acc.push_back(r.metrics.accuracy);
        f1.push_back(r.metrics.macro_f1);
        qce.push_back(r.diagnostics.qce);
        eee.push_back(r.diagnostics.eee_bits);
        qgn.push_back(r.diagnostics.qgn_mean);
    }
    if (pr_auc.size() < 3) {
        throw ConfigError("correlation needs at least 3 non-failed records, got " +
                          std::to_string(pr_auc.size()));
    }
    const std::array<std::span<const double>, 3> rows = {pr_auc, acc, f1};
    const std::array<std::span<const double>, 3> cols = {qce, eee, qgn};
    CorrelationMatrix m;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            m.rho[r][c] = spearman_rho(rows[r], cols[c]);
        }
    }
    return m;
}

std::string records_to_json_text(std::span<const RunRecord> records) {
    json arr = json::array();
    for (const RunRecord &r : records) {
        arr.push_back(record_to_json(r));
    }
    json doc;
    doc["schema_version"] = 1;
    doc["records"] = std::move(arr);
    return doc.dump(2) + "\n";
}

std::vector<RunRecord> records_from_json_text(const std::string &text) {
    const json doc = parse_text(text, "results.json");
    detail::require_keys(doc, {"schema_version", "records"}, "results.json");
    check_schema_version(doc, "results.json");
    std::vector<RunRecord> records;
    for (const json &j : doc.at("records")) {
        records.push_back(record_from_json(j));
    }
    return records;
}

std::vector<RunRecord> records_from_json_file(const std::string &path) {
    return records_from_json_text(read_file(path));
}

} // namespace hqnn

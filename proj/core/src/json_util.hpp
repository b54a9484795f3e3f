#pragma once

#include "hqnn/diagnostics.hpp"
#include "hqnn/errors.hpp"
#include "hqnn/metrics.hpp"
#include "hqnn/model.hpp"
#include "hqnn/train.hpp"

#include <json.hpp>

#include <initializer_list>
#include <string>

namespace hqnn::detail {

using nlohmann::json;

// Strict-schema helper: every key present must be in `allowed`.
inline void require_keys(const json &obj, std::initializer_list<const char *> allowed,
                         const std::string &context) {
    if (!obj.is_object()) {
        throw ConfigError(context + " must be a JSON object");
    }
    for (const auto &item : obj.items()) {
        bool known = false;
        for (const char *key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError("unknown key \"" + item.key() + "\" in " + context);
        }
    }
}

inline json to_json(const TrainConfig &c) {
    return json{{"dataset", c.dataset},
                {"epochs", c.epochs},
                {"batch_size", c.batch_size},
                {"learning_rate", c.learning_rate},
                {"weight_decay", c.weight_decay},
                {"seed", c.seed}};
}

inline TrainConfig train_config_from_json(const json &j) {
    require_keys(j, {"dataset", "epochs", "batch_size", "learning_rate",
                     "weight_decay", "seed"},
                 "train config");
    TrainConfig c;
    c.dataset = j.at("dataset").get<std::string>();
    c.epochs = j.at("epochs").get<int>();
    c.batch_size = j.at("batch_size").get<int>();
    c.learning_rate = j.at("learning_rate").get<double>();
    c.weight_decay = j.at("weight_decay").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

inline std::string frontend_to_string(FrontendArch a) {
    return a == FrontendArch::grayscale_mlp ? "grayscale_mlp" : "rgb_cnn";
}

inline FrontendArch frontend_from_string(const std::string &s) {
    if (s == "grayscale_mlp") {
        return FrontendArch::grayscale_mlp;
    }
    if (s == "rgb_cnn") {
        return FrontendArch::rgb_cnn;
    }
    throw ConfigError("unknown frontend arch: " + s);
}

inline std::string readout_to_string(ReadoutArch a) {
    return a == ReadoutArch::linear ? "linear" : "mlp";
}

inline ReadoutArch readout_from_string(const std::string &s) {
    if (s == "linear") {
        return ReadoutArch::linear;
    }
    if (s == "mlp") {
        return ReadoutArch::mlp;
    }
    throw ConfigError("unknown readout arch: " + s);
}

inline json to_json(const ModelConfig &c) {
    return json{{"frontend", frontend_to_string(c.frontend)},
                {"input_channels", c.input_channels},
                {"input_height", c.input_height},
                {"input_width", c.input_width},
                {"mlp_hidden", c.mlp_hidden},
                {"qubits", c.qubits},
                {"layers", c.layers},
                {"readout", readout_to_string(c.readout)},
                {"readout_hidden", c.readout_hidden},
                {"num_classes", c.num_classes}};
}

inline ModelConfig model_config_from_json(const json &j) {
    require_keys(j,
                 {"frontend", "input_channels", "input_height", "input_width",
                  "mlp_hidden", "qubits", "layers", "readout", "readout_hidden",
                  "num_classes"},
                 "model config");
    ModelConfig c;
    c.frontend = frontend_from_string(j.at("frontend").get<std::string>());
    c.input_channels = j.at("input_channels").get<int>();
    c.input_height = j.at("input_height").get<int>();
    c.input_width = j.at("input_width").get<int>();
    c.mlp_hidden = j.at("mlp_hidden").get<int>();
    c.qubits = j.at("qubits").get<int>();
    c.layers = j.at("layers").get<int>();
    c.readout = readout_from_string(j.at("readout").get<std::string>());
    c.readout_hidden = j.at("readout_hidden").get<int>();
    c.num_classes = j.at("num_classes").get<int>();
    return c;
}

inline json to_json(const EpochRecord &r) {
    return json{{"epoch", r.epoch},
                {"train_loss", r.train_loss},
                {"val_accuracy", r.val_accuracy},
                {"val_loss", r.val_loss},
                {"qgn_epoch_mean", r.qgn_epoch_mean}};
}

inline EpochRecord epoch_record_from_json(const json &j) {
    require_keys(j, {"epoch", "train_loss", "val_accuracy", "val_loss",
                     "qgn_epoch_mean"},
                 "epoch record");
    EpochRecord r;
    r.epoch = j.at("epoch").get<int>();
    r.train_loss = j.at("train_loss").get<double>();
    r.val_accuracy = j.at("val_accuracy").get<double>();
    r.val_loss = j.at("val_loss").get<double>();
    r.qgn_epoch_mean = j.at("qgn_epoch_mean").get<double>();
    return r;
}

inline json to_json(const MetricsRow &m) {
    return json{{"accuracy", m.accuracy},
                {"macro_precision", m.macro_precision},
                {"macro_recall", m.macro_recall},
                {"macro_f1", m.macro_f1},
                {"pr_auc", m.pr_auc}};
}

inline MetricsRow metrics_row_from_json(const json &j) {
    require_keys(j, {"accuracy", "macro_precision", "macro_recall", "macro_f1",
                     "pr_auc"},
                 "metrics row");
    MetricsRow m;
    m.accuracy = j.at("accuracy").get<double>();
    m.macro_precision = j.at("macro_precision").get<double>();
    m.macro_recall = j.at("macro_recall").get<double>();
    m.macro_f1 = j.at("macro_f1").get<double>();
    m.pr_auc = j.at("pr_auc").get<double>();
    return m;
}

inline json to_json(const DiagnosticsReport &d) {
    return json{{"qce", d.qce},
                {"qce_std_error", d.qce_std_error},
                {"eee_bits", d.eee_bits},
                {"qgn_mean", d.qgn_mean},
                {"qce_states", d.qce_states},
                {"eee_samples", d.eee_samples},
                {"seed", d.seed}};
}

inline DiagnosticsReport diagnostics_from_json(const json &j) {
    require_keys(j,
                 {"qce", "qce_std_error", "eee_bits", "qgn_mean", "qce_states",
                  "eee_samples", "seed"},
                 "diagnostics report");
    DiagnosticsReport d;
    d.qce = j.at("qce").get<double>();
    d.qce_std_error = j.at("qce_std_error").get<double>();
    d.eee_bits = j.at("eee_bits").get<double>();
    d.qgn_mean = j.at("qgn_mean").get<double>();
    d.qce_states = j.at("qce_states").get<int>();
    d.eee_samples = j.at("eee_samples").get<int>();
    d.seed = j.at("seed").get<std::uint64_t>();
    return d;
}

} // namespace hqnn::detail

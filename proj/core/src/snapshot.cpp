#include "hqnn/snapshot.hpp"

#include "hqnn/errors.hpp"
#include "json_util.hpp"

#include <fstream>
#include <sstream>

namespace hqnn {

using detail::json;

void save_model_snapshot(const std::string &path, const HybridModel &model,
                         const TrainConfig &train_config) {
    std::vector<double> flat(model.param_count());
    model.export_params(flat);

    json blocks = json::array();
    for (const ParamBlock &b : model.param_layout()) {
        json entry;
        entry["name"] = b.name;
        entry["shape"] = b.shape;
        entry["data"] = std::vector<double>(flat.begin() + static_cast<std::ptrdiff_t>(b.offset),
                                            flat.begin() + static_cast<std::ptrdiff_t>(b.offset + b.count));
        blocks.push_back(std::move(entry));
    }

    json doc;
    doc["format"] = "hqnn-model";
    doc["version"] = 1;
    doc["model"] = detail::to_json(model.config());
    doc["train"] = detail::to_json(train_config);
    doc["params"] = std::move(blocks);

    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataFormatError("cannot write snapshot to " + path);
    }
    out << doc.dump(2) << "\n";
}

ModelSnapshot load_model_snapshot(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataFormatError("cannot open snapshot " + path);
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception &e) {
        throw DataFormatError("malformed snapshot " + path + ": " + e.what());
    }
    if (!doc.is_object() || doc.value("format", "") != "hqnn-model") {
        throw ConfigError("not an hqnn model snapshot: " + path);
    }
    if (doc.value("version", 0) != 1) {
        throw ConfigError("unsupported snapshot version in " + path);
    }

    ModelSnapshot snap;
    snap.model_config = detail::model_config_from_json(doc.at("model"));
    snap.train_config = detail::train_config_from_json(doc.at("train"));

    // Rebuild the flat parameter vector in layout order, validating block
    // names and sizes against the reconstructed model.
    HybridModel probe(snap.model_config);
    snap.params.assign(probe.param_count(), 0.0);
    const auto layout = probe.param_layout();
    const json &blocks = doc.at("params");
    if (!blocks.is_array() || blocks.size() != layout.size()) {
        throw DataFormatError("snapshot parameter block count mismatch");
    }
    for (std::size_t i = 0; i < layout.size(); ++i) {
        const json &entry = blocks[i];
        if (entry.at("name").get<std::string>() != layout[i].name) {
            throw DataFormatError("snapshot block order mismatch at " +
                                  layout[i].name);
        }
        const auto data = entry.at("data").get<std::vector<double>>();
        if (data.size() != layout[i].count) {
            throw DataFormatError("snapshot block size mismatch at " +
                                  layout[i].name);
        }
        std::copy(data.begin(), data.end(),
                  snap.params.begin() + static_cast<std::ptrdiff_t>(layout[i].offset));
    }
    return snap;
}

HybridModel restore_model(const ModelSnapshot &snapshot) {
    HybridModel model(snapshot.model_config);
    model.import_params(snapshot.params);
    return model;
}

} // namespace hqnn

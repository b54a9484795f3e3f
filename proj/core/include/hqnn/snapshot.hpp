#pragma once

#include "hqnn/model.hpp"
#include "hqnn/train.hpp"

#include <string>
#include <vector>

namespace hqnn {

/// Deserialized model snapshot: everything needed to rebuild and reuse a
/// trained model.
struct ModelSnapshot {
    ModelConfig model_config;
    TrainConfig train_config; // carries the run seed
    std::vector<double> params;
};

/// Writes a self-describing JSON snapshot ({"format": "hqnn-model",
/// "version": 1, ...}) with the model config, the train config including
/// its seed, and every parameter block with name and shape. Doubles are
/// serialized with shortest round-trip decimals, so reload is bit-exact.
void save_model_snapshot(const std::string &path, const HybridModel &model,
                         const TrainConfig &train_config);

/// Throws DataFormatError on a malformed file, ConfigError on an
/// unsupported format/version tag.
ModelSnapshot load_model_snapshot(const std::string &path);

/// Rebuilds the model and imports the stored parameters.
HybridModel restore_model(const ModelSnapshot &snapshot);

} // namespace hqnn

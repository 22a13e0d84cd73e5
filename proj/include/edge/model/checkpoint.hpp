#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "edge/model/trainer.hpp"

namespace edge {

nlohmann::json to_json(const TrainConfig& cfg);
// Missing keys keep their defaults; unknown keys are rejected.
TrainConfig train_config_from_json(const nlohmann::json& j);

struct Checkpoint {
  TrainConfig config;
  ModelState state;
  std::vector<EpochLoss> history;
};

// Versioned little-endian binary: magic, version, config JSON, weights, Adam
// moments, epoch count and loss history. Doubles are stored bit-exact.
void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace edge

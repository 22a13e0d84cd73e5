#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "edge/augment/augmenter.hpp"
#include "edge/model/trainer.hpp"

namespace edge::cli {

enum class Mode { edge, gae, gae_on_akg, edge_cooccur };
enum class Task { lp, nc, sim };

std::string to_string(Mode m);
std::string to_string(Task t);
Mode parse_mode(const std::string& s);
Task parse_task(const std::string& s);

struct DataPaths {
  std::filesystem::path edges;
  std::filesystem::path texts;
  std::filesystem::path features;
  std::filesystem::path labels;
  std::filesystem::path lexicon;
};

struct RunConfig {
  std::string dataset = "dataset";
  DataPaths paths;
  AugmentationConfig augmentation;
  TrainConfig training;
  Mode mode = Mode::edge;
  Task task = Task::lp;
  std::filesystem::path out = "runs";
  std::uint64_t seed = 0;
  std::optional<double> train_ratio;
  bool early_select = false;
  bool resume = false;

  // Augmentation and training draw their streams from the run seed.
  void apply_seed();
  // Checks that the paths the mode needs are present.
  void validate() const;
  bool needs_augmentation() const { return mode != Mode::gae; }

  // <out>/<mode>/seed-<seed>
  std::filesystem::path run_dir() const;
  std::filesystem::path mode_dir() const;

  nlohmann::json to_json() const;
  // Fingerprint of everything that determines the run's numbers.
  std::string hash() const;
};

// Relative paths are resolved against `base_dir`. Unknown keys are rejected.
RunConfig run_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path,
                          const std::vector<std::string>& assignments = {});

// Applies `dotted.key=value` assignments to a JSON config. Values parse as JSON
// when they can, otherwise they are taken as strings.
void apply_assignments(nlohmann::json& j, const std::vector<std::string>& assignments);

}  // namespace edge::cli

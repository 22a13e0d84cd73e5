#pragma once

#include <exception>
#include <filesystem>

#include <json.hpp>

#include "edge/cli/run_config.hpp"
#include "edge/core/matrix.hpp"

namespace edge::cli {

// Outputs land in cfg.run_dir(): split/, augmented/, checkpoint.bin,
// embeddings.txt, history.csv, report_<task>.json and manifest files.
void cmd_augment(const RunConfig& cfg);
void cmd_train(const RunConfig& cfg);
nlohmann::json cmd_eval(const RunConfig& cfg);
void cmd_export(const RunConfig& cfg);

// Summarizes report_<task>.json across every seed directory of the mode.
nlohmann::json aggregate_reports(const RunConfig& cfg);

// 2 configuration, 3 data, 4 numerical, 1 anything else.
int exit_code_for(const std::exception& e);

// `n d` header, then one row per node with full double precision.
void save_embeddings(const Matrix& z, const std::filesystem::path& path);
Matrix load_embeddings(const std::filesystem::path& path);

}  // namespace edge::cli

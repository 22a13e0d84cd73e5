#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "edge/cli/commands.hpp"
#include "edge/cli/run_config.hpp"

namespace {

// stdout carries command results, so log lines go to stderr.
void configure_logging() {
  spdlog::set_default_logger(spdlog::stderr_color_mt("edge-kit"));
  spdlog::set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");
  if (const char* lvl = std::getenv("EDGE_LOG_LEVEL")) {
    const auto level = spdlog::level::from_str(lvl);
    spdlog::set_level(level);
  }
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Knowledge-graph augmentation and joint graph auto-encoder toolkit"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode, task, out;
  std::vector<std::string> assignments;
  bool aggregate = false;
  bool resume = false;
  bool early_select = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Run seed (split, augmentation and training)");
    sub->add_option("--mode", mode, "edge | gae | gae-on-akg | edge-cooccur");
    sub->add_option("--out", out, "Output root directory");
    sub->add_option("--set", assignments, "Override a config field, e.g. training.epochs=50");
  };
  auto* augment = app.add_subcommand("augment", "Build the augmented graph");
  auto* train = app.add_subcommand("train", "Split edges and train embeddings");
  auto* eval = app.add_subcommand("eval", "Evaluate trained embeddings");
  auto* exp = app.add_subcommand("export", "Export embeddings from a checkpoint");
  for (auto* s : {augment, train, eval, exp}) add_common(s);
  train->add_flag("--resume", resume, "Continue from the run's checkpoint");
  train->add_flag("--early-select", early_select, "Pick Z_K by validation AUC");
  eval->add_option("--task", task, "lp | nc | sim");
  eval->add_flag("--aggregate", aggregate, "Summarize reports across all seeds of the mode");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    auto cfg = edge::cli::load_run_config(config_path, assignments);
    if (seed) cfg.seed = *seed;
    if (mode) cfg.mode = edge::cli::parse_mode(*mode);
    if (task) cfg.task = edge::cli::parse_task(*task);
    if (out) cfg.out = std::filesystem::absolute(*out);
    if (resume) cfg.resume = true;
    if (early_select) cfg.early_select = true;
    cfg.apply_seed();

    if (augment->parsed()) {
      edge::cli::cmd_augment(cfg);
    } else if (train->parsed()) {
      edge::cli::cmd_train(cfg);
    } else if (eval->parsed()) {
      const auto report = aggregate ? edge::cli::aggregate_reports(cfg) : edge::cli::cmd_eval(cfg);
      std::cout << report.dump(2) << '\n';
    } else {
      edge::cli::cmd_export(cfg);
    }
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return edge::cli::exit_code_for(e);
  }
  return 0;
}

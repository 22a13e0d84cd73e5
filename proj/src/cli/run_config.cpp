#include "edge/cli/run_config.hpp"

#include <fstream>

#include "edge/core/errors.hpp"
#include "edge/core/hash.hpp"
#include "edge/model/checkpoint.hpp"

namespace edge::cli {
namespace {

using nlohmann::json;

std::filesystem::path resolve(const json& v, const std::filesystem::path& base) {
  std::filesystem::path p = v.get<std::string>();
  if (p.empty() || p.is_absolute()) return p;
  return (base / p).lexically_normal();
}

json augmentation_json(const AugmentationConfig& a) {
  return {{"similar", a.similar},
          {"keywords", a.keywords},
          {"entities", a.entities},
          {"semantic_share", a.semantic_share},
          {"semantic_dim", a.semantic_dim},
          {"walks_per_node", a.walks.walks_per_node},
          {"walk_length", a.walks.walk_length},
          {"window", a.walks.window},
          {"walk_dim", a.walks.dim},
          {"walk_negatives", a.walks.negatives},
          {"walk_learning_rate", a.walks.learning_rate}};
}

AugmentationConfig augmentation_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("'augmentation' must be an object");
  AugmentationConfig a;
  for (const auto& [key, v] : j.items()) {
    if (key == "similar") a.similar = v.get<std::size_t>();
    else if (key == "keywords") a.keywords = v.get<std::size_t>();
    else if (key == "entities") a.entities = v.get<std::size_t>();
    else if (key == "semantic_share") a.semantic_share = v.get<double>();
    else if (key == "semantic_dim") a.semantic_dim = v.get<std::size_t>();
    else if (key == "walks_per_node") a.walks.walks_per_node = v.get<std::size_t>();
    else if (key == "walk_length") a.walks.walk_length = v.get<std::size_t>();
    else if (key == "window") a.walks.window = v.get<std::size_t>();
    else if (key == "walk_dim") a.walks.dim = v.get<std::size_t>();
    else if (key == "walk_negatives") a.walks.negatives = v.get<std::size_t>();
    else if (key == "walk_learning_rate") a.walks.learning_rate = v.get<double>();
    else throw ConfigError("unknown augmentation option '" + key + "'");
  }
  return a;
}

}  // namespace

std::string to_string(Mode m) {
  switch (m) {
    case Mode::edge: return "edge";
    case Mode::gae: return "gae";
    case Mode::gae_on_akg: return "gae-on-akg";
    case Mode::edge_cooccur: return "edge-cooccur";
  }
  return "?";
}

std::string to_string(Task t) {
  switch (t) {
    case Task::lp: return "lp";
    case Task::nc: return "nc";
    case Task::sim: return "sim";
  }
  return "?";
}

Mode parse_mode(const std::string& s) {
  for (Mode m : {Mode::edge, Mode::gae, Mode::gae_on_akg, Mode::edge_cooccur})
    if (to_string(m) == s) return m;
  throw ConfigError("unknown mode '" + s + "' (expected edge, gae, gae-on-akg or edge-cooccur)");
}

Task parse_task(const std::string& s) {
  for (Task t : {Task::lp, Task::nc, Task::sim})
    if (to_string(t) == s) return t;
  throw ConfigError("unknown task '" + s + "' (expected lp, nc or sim)");
}

void RunConfig::apply_seed() {
  augmentation.seed = seed;
  training.seed = seed;
}

void RunConfig::validate() const {
  if (paths.edges.empty()) throw ConfigError("config is missing paths.edges");
  if (needs_augmentation()) {
    if (paths.texts.empty()) throw ConfigError("mode " + to_string(mode) + " needs paths.texts");
    if (paths.lexicon.empty()) throw ConfigError("mode " + to_string(mode) + " needs paths.lexicon");
  }
  if (train_ratio && !(*train_ratio > 0.0 && *train_ratio < 1.0))
    throw ConfigError("train_ratio must lie in (0, 1)");
  augmentation.validate();
  training.validate();
}

std::filesystem::path RunConfig::mode_dir() const { return out / to_string(mode); }

std::filesystem::path RunConfig::run_dir() const { return mode_dir() / ("seed-" + std::to_string(seed)); }

nlohmann::json RunConfig::to_json() const {
  json t = edge::to_json(training);
  t.erase("seed");
  json j = {{"dataset", dataset},
            {"paths",
             {{"edges", paths.edges.string()},
              {"texts", paths.texts.string()},
              {"features", paths.features.string()},
              {"labels", paths.labels.string()},
              {"lexicon", paths.lexicon.string()}}},
            {"augmentation", augmentation_json(augmentation)},
            {"training", t},
            {"mode", to_string(mode)},
            {"task", to_string(task)},
            {"out", out.string()},
            {"seed", seed},
            {"early_select", early_select},
            {"resume", resume}};
  if (train_ratio) j["train_ratio"] = *train_ratio;
  return j;
}

std::string RunConfig::hash() const {
  json j = to_json();
  for (const char* k : {"out", "task", "resume"}) j.erase(k);
  return hex64(fnv1a64(j.dump()));
}

RunConfig run_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");
  RunConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "dataset") c.dataset = v.get<std::string>();
      else if (key == "paths") {
        for (const auto& [pk, pv] : v.items()) {
          if (pk == "edges") c.paths.edges = resolve(pv, base_dir);
          else if (pk == "texts") c.paths.texts = resolve(pv, base_dir);
          else if (pk == "features") c.paths.features = resolve(pv, base_dir);
          else if (pk == "labels") c.paths.labels = resolve(pv, base_dir);
          else if (pk == "lexicon") c.paths.lexicon = resolve(pv, base_dir);
          else throw ConfigError("unknown path '" + pk + "'");
        }
      } else if (key == "augmentation") c.augmentation = augmentation_from_json(v);
      else if (key == "training") c.training = train_config_from_json(v);
      else if (key == "mode") c.mode = parse_mode(v.get<std::string>());
      else if (key == "task") c.task = parse_task(v.get<std::string>());
      else if (key == "out") c.out = resolve(v, base_dir);
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "train_ratio") c.train_ratio = v.get<double>();
      else if (key == "early_select") c.early_select = v.get<bool>();
      else if (key == "resume") c.resume = v.get<bool>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.apply_seed();
  return c;
}

void apply_assignments(nlohmann::json& j, const std::vector<std::string>& assignments) {
  for (const auto& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("expected key=value, got '" + a + "'");
    const std::string key = a.substr(0, eq);
    const std::string raw = a.substr(eq + 1);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    json* node = &j;
    std::size_t start = 0;
    for (;;) {
      const auto dot = key.find('.', start);
      const std::string part = key.substr(start, dot - start);
      if (part.empty()) throw ConfigError("bad key '" + key + "'");
      if (!node->is_object()) throw ConfigError("'" + key + "' does not name an object field");
      if (dot == std::string::npos) {
        (*node)[part] = value;
        break;
      }
      node = &(*node)[part];
      if (node->is_null()) *node = json::object();
      start = dot + 1;
    }
  }
}

RunConfig load_run_config(const std::filesystem::path& path, const std::vector<std::string>& assignments) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError(path.string() + ": not valid JSON");
  apply_assignments(j, assignments);
  return run_config_from_json(j, path.parent_path());
}

}  // namespace edge::cli

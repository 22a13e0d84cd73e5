#include "edge/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include <spdlog/spdlog.h>

#include "edge/augment/augmenter.hpp"
#include "edge/core/errors.hpp"
#include "edge/core/hash.hpp"
#include "edge/eval/classify.hpp"
#include "edge/eval/metrics.hpp"
#include "edge/eval/similarity.hpp"
#include "edge/eval/split.hpp"
#include "edge/graph/dataset.hpp"
#include "edge/model/checkpoint.hpp"

namespace edge::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Dataset {
  SparseGraph graph;
  FeatureMatrix features;
  std::vector<std::string> texts;
  ClassLabels labels;
};

Dataset load_dataset(const RunConfig& cfg, bool need_texts, bool need_labels) {
  Dataset d;
  d.graph = load_edge_list(cfg.paths.edges);
  const std::size_t n = d.graph.node_count();
  d.features = cfg.paths.features.empty() ? FeatureMatrix::identity(n)
                                          : load_features_csv(cfg.paths.features, n);
  if (need_texts) d.texts = load_node_texts(cfg.paths.texts, d.graph);
  if (need_labels) {
    if (cfg.paths.labels.empty()) throw ConfigError("this task needs paths.labels");
    d.labels = load_labels(cfg.paths.labels, d.graph);
    d.graph.set_labels(d.labels.per_node);
  }
  spdlog::info("{}: {} nodes, {} edges, {} feature columns", cfg.dataset, n, d.graph.edge_count(),
               d.features.cols());
  return d;
}

void write_json(const json& j, const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw IoError("cannot write " + p.string());
  out << j.dump(2) << '\n';
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw IoError("cannot open " + p.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ParseError(p.string() + ": not valid JSON");
  return j;
}

json input_hashes(const RunConfig& cfg) {
  json h = json::object();
  const std::pair<const char*, const fs::path*> inputs[] = {{"edges", &cfg.paths.edges},
                                                            {"texts", &cfg.paths.texts},
                                                            {"features", &cfg.paths.features},
                                                            {"labels", &cfg.paths.labels},
                                                            {"lexicon", &cfg.paths.lexicon}};
  for (const auto& [name, path] : inputs)
    if (!path->empty() && fs::exists(*path)) h[name] = {{"path", path->string()}, {"fnv1a64", hex64(hash_file(*path))}};
  return h;
}

void write_manifest(const RunConfig& cfg, const std::string& command, json counts, const fs::path& p) {
  write_json({{"command", command},
              {"config", cfg.to_json()},
              {"config_hash", cfg.hash()},
              {"seed", cfg.seed},
              {"inputs", input_hashes(cfg)},
              {"counts", std::move(counts)}},
             p);
}

EdgeSplit prepare_split(const RunConfig& cfg, const SparseGraph& g) {
  const fs::path dir = cfg.run_dir() / "split";
  if (fs::exists(dir / "split.json")) {
    auto s = EdgeSplit::load(dir, g);
    if (s.seed != cfg.seed) throw ConfigError(dir.string() + " was created with a different seed");
    return s;
  }
  auto s = split_edges(g, cfg.seed);
  s.save(dir);
  spdlog::info("split: {} train, {} val, {} test edges", s.train.edge_count(), s.val_pos.size(),
               s.test_pos.size());
  return s;
}

EdgeSplit require_split(const RunConfig& cfg, const SparseGraph& g) {
  const fs::path dir = cfg.run_dir() / "split";
  if (!fs::exists(dir / "split.json"))
    throw IoError("missing split manifest " + (dir / "split.json").string() +
                  "; rerun `edge-kit train` with the same config and seed to create it");
  return EdgeSplit::load(dir, g);
}

AugmentedGraph build_augmentation(const RunConfig& cfg, const SparseGraph& train,
                                  const std::vector<std::string>& texts) {
  const Lexicon lex = Lexicon::load_jsonl(cfg.paths.lexicon);
  spdlog::info("lexicon: {} terms", lex.size());
  if (cfg.mode == Mode::edge_cooccur)
    return construct_cooccurrence_graph(train, texts, lex, cfg.augmentation.entities);
  const TermNormalizer normalizer([&lex](const std::string& t) { return lex.contains(t); });
  const TextCorpus corpus = TextCorpus::build(texts, &normalizer);
  return construct_augmented_graph(train, corpus, lex, cfg.augmentation);
}

void save_feature_triplets(const FeatureMatrix& x, const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw IoError("cannot write " + p.string());
  const CsrMatrix& m = x.sparse();
  out << m.rows << ' ' << m.cols << ' ' << m.nnz() << '\n';
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k)
      out << i << ' ' << m.col_idx[k] << ' ' << m.values[k] << '\n';
}

// Loads the run's augmented graph, building and saving it when absent.
AugmentedGraph augmented_graph(const RunConfig& cfg, const SparseGraph& train, const Dataset& d) {
  const fs::path dir = cfg.run_dir() / "augmented";
  if (fs::exists(dir / "manifest.json") && fs::exists(dir / "graph.edges")) {
    const json m = read_json(dir / "manifest.json");
    if (m.value("config_hash", "") == cfg.hash()) {
      auto ag = AugmentedGraph::load(dir / "graph.edges", dir / "provenance.tsv");
      ag.validate(train);
      return ag;
    }
    spdlog::warn("augmented graph in {} was built with another config; rebuilding", dir.string());
  }
  AugmentedGraph ag = build_augmentation(cfg, train, d.texts);
  ag.validate(train);
  fs::create_directories(dir);
  ag.save(dir / "graph.edges", dir / "provenance.tsv");
  save_feature_triplets(augmented_features(ag, d.features, ag.selection(train)), dir / "features.coo");
  write_manifest(cfg, "augment",
                 {{"original_nodes", train.node_count()},
                  {"original_edges", train.edge_count()},
                  {"textual_nodes", ag.textual_count()},
                  {"augmented_nodes", ag.node_count()},
                  {"augmented_edges", ag.graph.edge_count()}},
                 dir / "manifest.json");
  return ag;
}

void save_history(const std::vector<EpochLoss>& h, const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw IoError("cannot write " + p.string());
  out << "epoch,total,l_k,l_t,l_j,l_n\n";
  char buf[256];
  for (std::size_t e = 0; e < h.size(); ++e) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", e, h[e].total, h[e].parts.l_k,
                  h[e].parts.l_t, h[e].parts.l_j, h[e].parts.l_n);
    out << buf;
  }
}

void save_names(const std::vector<std::string>& names, const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw IoError("cannot write " + p.string());
  for (const auto& n : names) out << n << '\n';
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

void save_embeddings(const Matrix& z, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << z.rows() << ' ' << z.cols() << '\n';
  char buf[32];
  for (std::size_t i = 0; i < z.rows(); ++i) {
    for (std::size_t c = 0; c < z.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", z(i, c));
      if (c) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

Matrix load_embeddings(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string() + "; run `edge-kit train` first");
  std::size_t n = 0, d = 0;
  if (!(in >> n >> d)) throw ParseError(path.string() + ": missing `n d` header", 1);
  Matrix z(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < d; ++c)
      if (!(in >> z(i, c))) throw ParseError(path.string() + ": truncated embedding rows", i + 2);
  return z;
}

void cmd_augment(const RunConfig& cfg) {
  cfg.validate();
  if (!cfg.needs_augmentation()) {
    spdlog::info("mode gae uses no augmented graph; nothing to do");
    return;
  }
  const Dataset d = load_dataset(cfg, true, false);
  const EdgeSplit split = prepare_split(cfg, d.graph);
  const auto ag = augmented_graph(cfg, split.train, d);
  spdlog::info("augmented graph written to {}", (cfg.run_dir() / "augmented").string());
  (void)ag;
}

void cmd_train(const RunConfig& cfg) {
  cfg.validate();
  const Dataset d = load_dataset(cfg, cfg.needs_augmentation(), false);
  const EdgeSplit split = prepare_split(cfg, d.graph);
  const fs::path dir = cfg.run_dir();
  fs::create_directories(dir);

  TrainConfig tc = cfg.training;
  if (cfg.mode == Mode::gae || cfg.mode == Mode::gae_on_akg) tc.weights = {0.0, 0.0, 0.0};

  Checkpoint resume;
  TrainOptions opts;
  if (cfg.resume && fs::exists(dir / "checkpoint.bin")) {
    resume = load_checkpoint(dir / "checkpoint.bin");
    if (to_json(resume.config) != to_json(tc))
      throw ConfigError("checkpoint config differs from the current training config");
    opts.resume = &resume.state;
    opts.resume_history = resume.history;
    spdlog::info("resuming from epoch {}", resume.state.epoch);
  }

  TrainResult res;
  if (cfg.mode == Mode::gae) {
    if (cfg.early_select)
      opts.select = [&](const Matrix& z) { return evaluate_link_prediction(z, split.val_pos, split.val_neg).auc; };
    res = train_autoencoder(split.train, d.features, tc, opts);
  } else {
    const AugmentedGraph ag = augmented_graph(cfg, split.train, d);
    const SelectionMap r = ag.selection(split.train);
    const FeatureMatrix x_t = augmented_features(ag, d.features, r);
    if (cfg.mode == Mode::gae_on_akg) {
      if (cfg.early_select)
        opts.select = [&](const Matrix& z) {
          return evaluate_link_prediction(r.select(z), split.val_pos, split.val_neg).auc;
        };
      res = train_autoencoder(ag.graph, x_t, tc, opts);
      res.z_t = res.z_k;
      res.z_k = r.select(res.z_t);
    } else {
      if (cfg.early_select)
        opts.select = [&](const Matrix& z) { return evaluate_link_prediction(z, split.val_pos, split.val_neg).auc; };
      res = train(split.train, d.features, ag, x_t, tc, opts);
    }
  }

  save_checkpoint({tc, res.state, res.history}, dir / "checkpoint.bin");
  save_embeddings(res.z_k, dir / "embeddings.txt");
  save_names(d.graph.names(), dir / "nodes.txt");
  save_history(res.history, dir / "history.csv");
  json counts = {{"epochs", res.state.epoch}, {"selected_epoch", res.selected_epoch}};
  if (!res.history.empty()) {
    counts["initial_loss"] = res.history.front().total;
    counts["final_loss"] = res.history.back().total;
  }
  write_manifest(cfg, "train", counts, dir / "manifest.json");
  spdlog::info("trained {} epochs; embeddings in {}", res.state.epoch, (dir / "embeddings.txt").string());
}

nlohmann::json cmd_eval(const RunConfig& cfg) {
  cfg.validate();
  const bool need_labels = cfg.task != Task::lp;
  const Dataset d = load_dataset(cfg, false, need_labels);
  const fs::path dir = cfg.run_dir();
  const Matrix z = load_embeddings(dir / "embeddings.txt");
  if (z.rows() != d.graph.node_count())
    throw ValidationError("embeddings have " + std::to_string(z.rows()) + " rows but the graph has " +
                          std::to_string(d.graph.node_count()) + " nodes");
  std::size_t epochs = 0;
  if (fs::exists(dir / "manifest.json"))
    epochs = read_json(dir / "manifest.json").value("counts", json::object()).value("epochs", std::size_t{0});

  json report = {{"dataset", cfg.dataset},
                 {"mode", to_string(cfg.mode)},
                 {"task", to_string(cfg.task)},
                 {"seed", cfg.seed},
                 {"epochs", epochs},
                 {"config_hash", cfg.hash()}};
  switch (cfg.task) {
    case Task::lp: {
      const EdgeSplit split = require_split(cfg, d.graph);
      const auto lp = evaluate_link_prediction(z, split.test_pos, split.test_neg);
      report["auc"] = lp.auc;
      report["ap"] = lp.ap;
      report["test_pairs"] = lp.scores.size();
      break;
    }
    case Task::nc: {
      const double ratio = cfg.train_ratio.value_or(default_train_ratio(cfg.dataset));
      const auto nc = node_classification(z, d.labels.per_node, ratio, cfg.seed);
      report["accuracy"] = nc.accuracy;
      report["train_ratio"] = ratio;
      report["train_size"] = nc.train_size;
      report["test_size"] = nc.test_size;
      break;
    }
    case Task::sim: {
      const auto sim = similarity_matrix(z, d.labels.per_node);
      save_similarity(sim, d.graph.names(), d.labels.class_names, dir / "similarity.txt",
                      dir / "similarity_order.tsv");
      report["block_score"] = sim.block_score;
      break;
    }
  }
  write_json(report, dir / ("report_" + to_string(cfg.task) + ".json"));
  return report;
}

void cmd_export(const RunConfig& cfg) {
  cfg.validate();
  const Dataset d = load_dataset(cfg, false, false);
  const fs::path dir = cfg.run_dir();
  const Checkpoint ckpt = load_checkpoint(dir / "checkpoint.bin");
  const EdgeSplit split = require_split(cfg, d.graph);
  const fs::path out = dir / "export";
  fs::create_directories(out);
  const auto& s = ckpt.state;
  if (cfg.mode == Mode::gae) {
    save_embeddings(gcn_encode(normalize_adjacency(split.train, ckpt.config.self_loops), d.features, s.original.weights),
                    out / "z_k.txt");
  } else {
    const fs::path adir = dir / "augmented";
    const auto ag = AugmentedGraph::load(adir / "graph.edges", adir / "provenance.tsv");
    const SelectionMap r = ag.selection(split.train);
    const FeatureMatrix x_t = augmented_features(ag, d.features, r);
    const auto adj_t = normalize_adjacency(ag.graph, ckpt.config.self_loops);
    if (cfg.mode == Mode::gae_on_akg) {
      const Matrix z_t = gcn_encode(adj_t, x_t, s.original.weights);
      save_embeddings(r.select(z_t), out / "z_k.txt");
      save_embeddings(z_t, out / "z_t.txt");
    } else {
      save_embeddings(gcn_encode(normalize_adjacency(split.train, ckpt.config.self_loops), d.features,
                                 s.original.weights),
                      out / "z_k.txt");
      save_embeddings(gcn_encode(adj_t, x_t, s.augmented.weights), out / "z_t.txt");
    }
    std::ofstream prov(out / "z_t_nodes.tsv");
    for (const auto& o : ag.provenance) prov << (o.is_textual() ? "textual\t" : "original\t") << o.name << '\n';
  }
  save_names(d.graph.names(), out / "z_k_nodes.txt");
  save_history(ckpt.history, out / "history.csv");
  spdlog::info("exported embeddings to {}", out.string());
}

nlohmann::json aggregate_reports(const RunConfig& cfg) {
  const fs::path root = cfg.mode_dir();
  if (!fs::is_directory(root)) throw IoError("no runs under " + root.string());
  const std::string file = "report_" + to_string(cfg.task) + ".json";
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(root))
    if (e.is_directory() && e.path().filename().string().rfind("seed-", 0) == 0 && fs::exists(e.path() / file))
      dirs.push_back(e.path());
  std::sort(dirs.begin(), dirs.end());
  if (dirs.empty()) throw IoError("no " + file + " found under " + root.string());

  json per_seed = json::array();
  std::map<std::string, std::vector<double>> metrics;
  for (const auto& dir : dirs) {
    const json r = read_json(dir / file);
    per_seed.push_back(r);
    for (const char* k : {"auc", "ap", "accuracy", "block_score"})
      if (r.contains(k)) metrics[k].push_back(r[k].get<double>());
  }
  json summary = {{"dataset", cfg.dataset},
                  {"mode", to_string(cfg.mode)},
                  {"task", to_string(cfg.task)},
                  {"runs", per_seed.size()},
                  {"per_seed", per_seed}};
  for (const auto& [k, v] : metrics) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    summary[k] = {{"mean", mean},
                  {"median", median(v)},
                  {"std", v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0},
                  {"min", *std::min_element(v.begin(), v.end())},
                  {"max", *std::max_element(v.begin(), v.end())}};
  }
  write_json(summary, root / ("summary_" + to_string(cfg.task) + ".json"));
  return summary;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 2;
  if (dynamic_cast<const NumericalError*>(&e)) return 4;
  if (dynamic_cast<const Error*>(&e)) return 3;
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return 2;
  if (dynamic_cast<const std::filesystem::filesystem_error*>(&e)) return 3;
  return 1;
}

}  // namespace edge::cli

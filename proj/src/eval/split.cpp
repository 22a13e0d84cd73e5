#include "edge/eval/split.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "edge/core/errors.hpp"
#include "edge/core/hash.hpp"

namespace edge {
namespace {

Edge ordered(std::size_t a, std::size_t b) { return a < b ? Edge{a, b} : Edge{b, a}; }

void write_pairs(const SparseGraph& g, const std::vector<Edge>& pairs, const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw IoError("cannot write " + p.string());
  for (const auto& [a, b] : pairs) out << g.name(a) << ' ' << g.name(b) << '\n';
}

std::vector<Edge> read_pairs(const SparseGraph& g, const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw IoError("missing split file " + p.string() + "; rerun the split step (edge-kit train)");
  std::vector<Edge> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string a, b;
    if (!(ss >> a >> b)) throw ParseError(p.string() + ": expected two node ids", lineno);
    const auto ia = g.index_of(a);
    const auto ib = g.index_of(b);
    if (!ia || !ib) throw ValidationError(p.string() + ": unknown node id on line " + std::to_string(lineno));
    out.push_back(ordered(*ia, *ib));
  }
  return out;
}

}  // namespace

EdgeSplit split_edges(const SparseGraph& g, std::uint64_t seed) {
  std::vector<Edge> edges = g.edge_list();
  const std::size_t e = edges.size();
  if (e < 20) throw ValidationError("edge split needs at least 20 edges, got " + std::to_string(e));
  const std::size_t n_test = e / 10;
  const std::size_t n_val = e / 20;
  const std::size_t n = g.node_count();
  const std::size_t needed = n_test + n_val;
  const std::size_t non_edges = n * (n - 1) / 2 - e;
  if (non_edges < needed)
    throw SamplingError("graph has " + std::to_string(non_edges) + " non-edges but " +
                        std::to_string(needed) + " negatives are required");

  std::mt19937_64 rng(mix_seed(seed, 0x5b11));
  std::shuffle(edges.begin(), edges.end(), rng);
  EdgeSplit s;
  s.seed = seed;
  s.test_pos.assign(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(n_test));
  s.val_pos.assign(edges.begin() + static_cast<std::ptrdiff_t>(n_test),
                   edges.begin() + static_cast<std::ptrdiff_t>(needed));
  const std::vector<Edge> train(edges.begin() + static_cast<std::ptrdiff_t>(needed), edges.end());

  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::set<Edge> chosen;
  const std::size_t max_attempts = 100 * needed + 10'000;
  std::size_t attempts = 0;
  std::vector<Edge> negs;
  while (negs.size() < needed) {
    if (++attempts > max_attempts)
      throw SamplingError("could not draw " + std::to_string(needed) + " negative pairs in " +
                          std::to_string(max_attempts) + " attempts; graph too dense");
    const std::size_t a = pick(rng);
    const std::size_t b = pick(rng);
    if (a == b || g.has_edge(a, b)) continue;
    const Edge p = ordered(a, b);
    if (chosen.insert(p).second) negs.push_back(p);
  }
  s.test_neg.assign(negs.begin(), negs.begin() + static_cast<std::ptrdiff_t>(n_test));
  s.val_neg.assign(negs.begin() + static_cast<std::ptrdiff_t>(n_test), negs.end());

  s.train = SparseGraph::from_edges(n, train, g.names());
  if (g.has_labels()) s.train.set_labels(g.labels());
  s.check(g);
  return s;
}

void EdgeSplit::check(const SparseGraph& full) const {
  for (const auto* set : {&val_pos, &test_pos})
    for (const auto& [a, b] : *set) {
      if (train.has_edge(a, b))
        throw ValidationError("held-out edge (" + full.name(a) + ", " + full.name(b) +
                              ") leaks into the training graph");
      if (!full.has_edge(a, b)) throw ValidationError("held-out positive is not an edge of the graph");
    }
  for (const auto* set : {&val_neg, &test_neg})
    for (const auto& [a, b] : *set)
      if (a == b || full.has_edge(a, b))
        throw ValidationError("negative pair (" + full.name(a) + ", " + full.name(b) + ") is an edge");
  if (train.edge_count() + val_pos.size() + test_pos.size() != full.edge_count())
    throw ValidationError("split positives do not partition the edge set");
  if (test_neg.size() != test_pos.size() || val_neg.size() != val_pos.size())
    throw ValidationError("negative and positive counts differ");
}

void EdgeSplit::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  save_edge_list(train, dir / "train.edges");
  write_pairs(train, val_pos, dir / "val.pos");
  write_pairs(train, val_neg, dir / "val.neg");
  write_pairs(train, test_pos, dir / "test.pos");
  write_pairs(train, test_neg, dir / "test.neg");
  nlohmann::json j = {{"seed", seed},
                      {"nodes", train.node_count()},
                      {"train_edges", train.edge_count()},
                      {"val", val_pos.size()},
                      {"test", test_pos.size()}};
  std::ofstream out(dir / "split.json");
  if (!out) throw IoError("cannot write " + (dir / "split.json").string());
  out << j.dump(2) << '\n';
}

EdgeSplit EdgeSplit::load(const std::filesystem::path& dir, const SparseGraph& full) {
  const auto meta_path = dir / "split.json";
  std::ifstream meta(meta_path);
  if (!meta) throw IoError("missing split manifest " + meta_path.string() + "; rerun the split step (edge-kit train)");
  EdgeSplit s;
  try {
    s.seed = nlohmann::json::parse(meta).at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(meta_path.string() + ": " + e.what());
  }
  s.val_pos = read_pairs(full, dir / "val.pos");
  s.val_neg = read_pairs(full, dir / "val.neg");
  s.test_pos = read_pairs(full, dir / "test.pos");
  s.test_neg = read_pairs(full, dir / "test.neg");
  std::vector<Edge> train = read_pairs(full, dir / "train.edges");
  s.train = SparseGraph::from_edges(full.node_count(), train, full.names());
  if (full.has_labels()) s.train.set_labels(full.labels());
  s.check(full);
  return s;
}

}  // namespace edge

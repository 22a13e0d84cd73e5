#include "edge/graph/sparse_graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <spdlog/spdlog.h>

#include "edge/core/errors.hpp"

namespace edge {
namespace {

std::optional<std::uint64_t> parse_index(const std::string& s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

SparseGraph SparseGraph::from_edges(std::size_t n, std::span<const Edge> edges,
                                    std::vector<std::string> names) {
  std::vector<Triplet> t;
  t.reserve(edges.size() * 2);
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n)
      throw ValidationError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                            ") out of range for " + std::to_string(n) + " nodes");
    if (a == b) throw ValidationError("self-loop on node " + std::to_string(a));
    t.push_back({a, b, 1.0});
    t.push_back({b, a, 1.0});
  }
  SparseGraph g;
  g.adj_ = CsrMatrix::from_triplets(n, n, std::move(t));
  // Collapse duplicates back to unit weight.
  std::fill(g.adj_.values.begin(), g.adj_.values.end(), 1.0);
  if (names.empty()) {
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  }
  if (names.size() != n) throw ValidationError("id map size differs from node count");
  g.names_ = std::move(names);
  g.index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!g.index_.emplace(g.names_[i], i).second)
      throw ValidationError("duplicate node id '" + g.names_[i] + "'");
  }
  return g;
}

std::span<const std::size_t> SparseGraph::neighbors(std::size_t node) const {
  return std::span<const std::size_t>(adj_.col_idx).subspan(adj_.row_ptr[node], degree(node));
}

bool SparseGraph::has_edge(std::size_t a, std::size_t b) const {
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<Edge> SparseGraph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::size_t i = 0; i < node_count(); ++i)
    for (std::size_t j : neighbors(i))
      if (i < j) out.emplace_back(i, j);
  return out;
}

std::optional<std::size_t> SparseGraph::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void SparseGraph::set_labels(std::vector<int> labels) {
  if (!labels.empty() && labels.size() != node_count())
    throw ValidationError("label vector size differs from node count");
  labels_ = std::move(labels);
}

void SparseGraph::validate() const {
  const std::size_t n = adj_.rows;
  if (adj_.cols != n || adj_.row_ptr.size() != n + 1)
    throw ValidationError("adjacency is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (adj_.row_ptr[i] > adj_.row_ptr[i + 1])
      throw ValidationError("row pointers are not monotone");
    for (std::size_t k = adj_.row_ptr[i]; k < adj_.row_ptr[i + 1]; ++k) {
      const std::size_t j = adj_.col_idx[k];
      if (j >= n) throw ValidationError("column index out of range");
      if (j == i) throw ValidationError("self-loop stored at node " + std::to_string(i));
      if (adj_.at(j, i) != adj_.values[k]) throw ValidationError("adjacency is not symmetric");
    }
  }
}

SparseGraph load_edge_list(const std::filesystem::path& path, std::optional<std::size_t> n_hint) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list " + path.string());

  std::vector<std::pair<std::string, std::string>> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    std::string a, b, extra;
    if (!(ss >> a >> b) || (ss >> extra))
      throw ParseError(path.string() + ": expected 'src dst'", lineno);
    raw.emplace_back(std::move(a), std::move(b));
  }

  std::vector<std::string> names;
  std::map<std::string, std::size_t> lexical;
  bool all_numeric = true;
  for (const auto& [a, b] : raw)
    for (const auto* s : {&a, &b}) {
      auto v = parse_index(*s);
      if (!v) all_numeric = false;
      if (n_hint && (!v || *v >= *n_hint))
        throw ValidationError(path.string() + ": node id '" + *s + "' outside [0, " +
                              std::to_string(*n_hint) + ")");
      lexical.emplace(*s, 0);
    }

  std::unordered_map<std::string, std::size_t> index;
  if (n_hint) {
    for (std::size_t i = 0; i < *n_hint; ++i) names.push_back(std::to_string(i));
    for (const auto& [id, _] : lexical) index[id] = *parse_index(id);
  } else {
    std::vector<std::string> ids;
    for (const auto& [id, _] : lexical) ids.push_back(id);
    if (all_numeric)
      std::stable_sort(ids.begin(), ids.end(), [](const std::string& x, const std::string& y) {
        return *parse_index(x) < *parse_index(y);
      });
    for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;
    names = std::move(ids);
  }

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  std::size_t self_loops = 0;
  for (const auto& [a, b] : raw) {
    const std::size_t u = index.at(a), v = index.at(b);
    if (u == v) {
      ++self_loops;
      continue;
    }
    edges.emplace_back(u, v);
  }
  if (self_loops)
    spdlog::warn("{}: dropped {} self-loop line(s)", path.string(), self_loops);
  const std::size_t n = names.size();
  return SparseGraph::from_edges(n, edges, std::move(names));
}

void save_edge_list(const SparseGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& [a, b] : g.edge_list()) out << g.name(a) << ' ' << g.name(b) << '\n';
}

}  // namespace edge

#include "edge/augment/augmented_graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "edge/core/errors.hpp"

namespace edge {

std::size_t AugmentedGraph::textual_count() const {
  return static_cast<std::size_t>(
      std::count_if(provenance.begin(), provenance.end(), [](const NodeOrigin& o) { return o.is_textual(); }));
}

std::vector<std::size_t> AugmentedGraph::textual_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < provenance.size(); ++i)
    if (provenance[i].is_textual()) out.push_back(i);
  return out;
}

void AugmentedGraph::validate(const SparseGraph& original) const {
  graph.validate();
  if (provenance.size() != graph.node_count())
    throw ValidationError("provenance size differs from augmented node count");
  if (graph.node_count() < original.node_count())
    throw ValidationError("augmented graph has fewer nodes than the original");
  const SelectionMap r = selection(original);
  for (const auto& [a, b] : original.edge_list())
    if (!graph.has_edge(r[a], r[b]))
      throw ValidationError("original edge (" + original.name(a) + ", " + original.name(b) +
                            ") missing from augmented graph");
  for (std::size_t i = 0; i < provenance.size(); ++i) {
    if (!provenance[i].is_textual()) continue;
    if (graph.degree(i) == 0)
      throw ValidationError("textual node '" + provenance[i].name + "' is isolated");
    for (std::size_t j : graph.neighbors(i))
      if (provenance[j].is_textual())
        throw ValidationError("textual nodes '" + provenance[i].name + "' and '" +
                              provenance[j].name + "' are adjacent");
  }
}

void AugmentedGraph::save(const std::filesystem::path& edges,
                          const std::filesystem::path& provenance_file) const {
  std::ofstream e(edges);
  if (!e) throw IoError("cannot write " + edges.string());
  for (const auto& [a, b] : graph.edge_list()) e << a << ' ' << b << '\n';
  std::ofstream p(provenance_file);
  if (!p) throw IoError("cannot write " + provenance_file.string());
  for (std::size_t i = 0; i < provenance.size(); ++i)
    p << i << '\t' << (provenance[i].is_textual() ? "textual:" : "original:") << provenance[i].name
      << '\n';
}

AugmentedGraph AugmentedGraph::load(const std::filesystem::path& edges,
                                    const std::filesystem::path& provenance_file) {
  AugmentedGraph ag;
  std::ifstream p(provenance_file);
  if (!p) throw IoError("cannot open " + provenance_file.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(p, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(provenance_file.string() + ": missing tab", lineno);
    std::size_t idx = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + tab, idx);
    if (ec != std::errc() || ptr != line.data() + tab || idx != ag.provenance.size())
      throw ParseError(provenance_file.string() + ": indices must be 0..n-1 in order", lineno);
    const std::string tag = line.substr(tab + 1);
    NodeOrigin o;
    if (tag.rfind("original:", 0) == 0) {
      o.kind = NodeOrigin::Kind::original;
      o.name = tag.substr(9);
    } else if (tag.rfind("textual:", 0) == 0) {
      o.kind = NodeOrigin::Kind::textual;
      o.name = tag.substr(8);
    } else {
      throw ParseError(provenance_file.string() + ": expected original:<id> or textual:<term>", lineno);
    }
    ag.provenance.push_back(std::move(o));
  }

  std::ifstream e(edges);
  if (!e) throw IoError("cannot open " + edges.string());
  std::vector<Edge> list;
  lineno = 0;
  while (std::getline(e, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::size_t a = 0, b = 0;
    if (!(ss >> a >> b)) throw ParseError(edges.string() + ": expected 'i j'", lineno);
    list.emplace_back(a, b);
  }
  ag.graph = SparseGraph::from_edges(ag.provenance.size(), list);
  return ag;
}

AugmentedGraph trivial_augmentation(const SparseGraph& original) {
  return assemble_augmented_graph(original, std::vector<std::vector<std::string>>(original.node_count()));
}

FeatureMatrix augmented_features(const AugmentedGraph& ag, const FeatureMatrix& original_features,
                                 const SelectionMap& selection) {
  if (original_features.rows() != selection.domain_size())
    throw DimensionError("original features do not match the selection map domain");
  const std::size_t d = original_features.cols();
  const auto textual = ag.textual_nodes();
  const CsrMatrix& x = original_features.sparse();
  std::vector<Triplet> t;
  t.reserve(x.nnz() + textual.size());
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = x.row_ptr[i]; k < x.row_ptr[i + 1]; ++k)
      t.push_back({selection[i], x.col_idx[k], x.values[k]});
  for (std::size_t k = 0; k < textual.size(); ++k) t.push_back({textual[k], d + k, 1.0});
  return FeatureMatrix(CsrMatrix::from_triplets(ag.node_count(), d + textual.size(), std::move(t)));
}

AugmentedGraph assemble_augmented_graph(const SparseGraph& original,
                                        const std::vector<std::vector<std::string>>& terms_per_target) {
  if (terms_per_target.size() != original.node_count())
    throw DimensionError("one term list per original node is required");
  const std::size_t n = original.node_count();
  std::map<std::string, std::size_t> term_index;
  for (const auto& terms : terms_per_target)
    for (const auto& t : terms) term_index.emplace(t, 0);
  std::size_t next = n;
  for (auto& [term, idx] : term_index) idx = next++;

  std::vector<Edge> edges = original.edge_list();
  for (std::size_t target = 0; target < n; ++target)
    for (const auto& t : terms_per_target[target]) edges.emplace_back(target, term_index.at(t));

  AugmentedGraph ag;
  ag.graph = SparseGraph::from_edges(next, edges);
  ag.provenance.reserve(next);
  for (std::size_t i = 0; i < n; ++i) ag.provenance.push_back({NodeOrigin::Kind::original, original.name(i)});
  for (const auto& [term, idx] : term_index) ag.provenance.push_back({NodeOrigin::Kind::textual, term});
  return ag;
}

}  // namespace edge

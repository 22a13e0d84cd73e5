#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "edge/graph/features.hpp"
#include "edge/graph/selection.hpp"
#include "edge/graph/sparse_graph.hpp"

namespace edge {

// Supergraph of an original graph with textual nodes attached to original
// (target) entities. Node names in `graph` are decimal indices; identity lives
// in `provenance`.
//
// Invariants: every original node and edge is present; every textual node has
// degree >= 1; no edge joins two textual nodes.
struct AugmentedGraph {
  SparseGraph graph;
  std::vector<NodeOrigin> provenance;

  std::size_t node_count() const { return graph.node_count(); }
  std::size_t textual_count() const;
  std::vector<std::size_t> textual_nodes() const;

  SelectionMap selection(const SparseGraph& original) const {
    return build_selection_map(original, provenance);
  }

  // Throws ValidationError on a broken invariant, including KG not being a
  // subgraph of this graph under the selection map.
  void validate(const SparseGraph& original) const;

  // Edge list by index (`i j`, i < j) plus `index<TAB>original:<id>` /
  // `index<TAB>textual:<term>` provenance lines.
  void save(const std::filesystem::path& edges, const std::filesystem::path& provenance_file) const;
  static AugmentedGraph load(const std::filesystem::path& edges,
                             const std::filesystem::path& provenance_file);
};

// Wraps an original graph with no textual nodes.
AugmentedGraph trivial_augmentation(const SparseGraph& original);

// X_T: original rows carry X_K padded with zeros, textual node k carries a
// one-hot in column D + k.
FeatureMatrix augmented_features(const AugmentedGraph& ag, const FeatureMatrix& original_features,
                                 const SelectionMap& selection);

// Builds the supergraph from per-target term lists (one list per original
// node). Textual nodes are shared by surface term and appended after the
// originals in lexicographic term order.
AugmentedGraph assemble_augmented_graph(const SparseGraph& original,
                                        const std::vector<std::vector<std::string>>& terms_per_target);

}  // namespace edge

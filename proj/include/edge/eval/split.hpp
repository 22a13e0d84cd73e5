#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "edge/graph/sparse_graph.hpp"

namespace edge {

// 85/5/10 partition of the undirected edges. `train` keeps every node of the
// input graph (names and labels included) but only the training edges.
// Negatives are non-edges of the full graph, never self-pairs, and distinct
// across the validation and test sets.
struct EdgeSplit {
  SparseGraph train;
  std::vector<Edge> val_pos;
  std::vector<Edge> val_neg;
  std::vector<Edge> test_pos;
  std::vector<Edge> test_neg;
  std::uint64_t seed = 0;

  // Throws ValidationError if a held-out positive is a training edge, a
  // negative is an edge of `full`, or the positives do not partition it.
  void check(const SparseGraph& full) const;

  // Writes train.edges, val.pos, val.neg, test.pos, test.neg (external ids)
  // and split.json into `dir`.
  void save(const std::filesystem::path& dir) const;
  static EdgeSplit load(const std::filesystem::path& dir, const SparseGraph& full);
};

// Test size floor(E/10), validation size floor(E/20). Requires >= 20 edges.
// Throws SamplingError when negatives cannot be drawn within bounded retries.
EdgeSplit split_edges(const SparseGraph& g, std::uint64_t seed);

}  // namespace edge

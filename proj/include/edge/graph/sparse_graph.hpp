#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "edge/core/matrix.hpp"

namespace edge {

using Edge = std::pair<std::size_t, std::size_t>;

// Undirected, unweighted graph in CSR form with an external id map.
//
// Invariants: the adjacency is symmetric with unit values, no self-loops are
// stored, column indices are sorted and < node_count().
class SparseGraph {
 public:
  SparseGraph() = default;

  // Duplicate and reversed pairs are collapsed. Self-loops are rejected.
  // `names` defaults to the decimal index of each node.
  static SparseGraph from_edges(std::size_t n, std::span<const Edge> edges,
                                std::vector<std::string> names = {});

  std::size_t node_count() const { return adj_.rows; }
  std::size_t edge_count() const { return adj_.nnz() / 2; }

  const CsrMatrix& adjacency() const { return adj_; }
  std::span<const std::size_t> row_ptr() const { return adj_.row_ptr; }
  std::span<const std::size_t> col_idx() const { return adj_.col_idx; }
  std::span<const double> values() const { return adj_.values; }

  std::span<const std::size_t> neighbors(std::size_t node) const;
  std::size_t degree(std::size_t node) const { return adj_.row_ptr[node + 1] - adj_.row_ptr[node]; }
  bool has_edge(std::size_t a, std::size_t b) const;

  // Each undirected edge once, as (min, max), in CSR order.
  std::vector<Edge> edge_list() const;

  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t node) const { return names_[node]; }
  std::optional<std::size_t> index_of(const std::string& id) const;

  bool has_labels() const { return !labels_.empty(); }
  // Class index per node, -1 for unlabeled nodes.
  const std::vector<int>& labels() const { return labels_; }
  void set_labels(std::vector<int> labels);

  // Throws ValidationError when a structural invariant is broken.
  void validate() const;

 private:
  CsrMatrix adj_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<int> labels_;
};

// Reads `src dst` lines; `#` starts a comment line. Ids are re-indexed densely:
// numerically ascending when every id is a non-negative integer, otherwise
// lexicographically. With `n_hint`, ids must be integers in [0, n_hint) and
// the mapping is the identity.
SparseGraph load_edge_list(const std::filesystem::path& path,
                           std::optional<std::size_t> n_hint = std::nullopt);

// Writes one `src dst` line per undirected edge using external ids.
void save_edge_list(const SparseGraph& g, const std::filesystem::path& path);

}  // namespace edge

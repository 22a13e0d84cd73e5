#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "edge/core/matrix.hpp"
#include "edge/graph/sparse_graph.hpp"

namespace edge {

// Where a node of an augmented graph came from: an original entity (by its
// external id) or a textual term.
struct NodeOrigin {
  enum class Kind { original, textual };
  Kind kind = Kind::original;
  std::string name;

  bool is_textual() const { return kind == Kind::textual; }
  bool operator==(const NodeOrigin&) const = default;
};

// Injective map from original-graph node indices into augmented-graph indices.
// Realizes the 0/1 row-selection matrix R with R Z_T picking the common rows.
class SelectionMap {
 public:
  SelectionMap() = default;
  SelectionMap(std::vector<std::size_t> targets, std::size_t augmented_size);

  static SelectionMap identity(std::size_t n_original, std::size_t n_augmented);

  std::size_t domain_size() const { return targets_.size(); }
  std::size_t augmented_size() const { return augmented_size_; }
  std::size_t operator[](std::size_t i) const { return targets_[i]; }
  std::span<const std::size_t> targets() const { return targets_; }

  // R * m: rows of `m` picked in original-index order.
  Matrix select(const Matrix& m) const;
  // dst += R^T * src, i.e. scatter rows of `src` back to augmented positions.
  void scatter_add(const Matrix& src, Matrix& dst, double scale = 1.0) const;
  // Explicit |domain| x |augmented| 0/1 matrix.
  Matrix to_dense() const;

 private:
  std::vector<std::size_t> targets_;
  std::size_t augmented_size_ = 0;
};

// Looks up each original node's external id among the augmented graph's
// Original-tagged provenance entries. Throws AlignmentError naming the first
// missing entity.
SelectionMap build_selection_map(const SparseGraph& original,
                                 std::span<const NodeOrigin> augmented_provenance);

}  // namespace edge

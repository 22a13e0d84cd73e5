#pragma once

#include <cstddef>
#include <cstdint>

#include "edge/augment/text.hpp"
#include "edge/core/matrix.hpp"
#include "edge/graph/sparse_graph.hpp"

namespace edge {

struct WalkConfig {
  std::size_t walks_per_node = 10;
  std::size_t walk_length = 40;
  std::size_t window = 5;
  std::size_t dim = 64;
  std::size_t negatives = 5;
  double learning_rate = 0.025;
};

// Row-normalized TF-IDF vectors (raw term counts times smoothed idf).
CsrMatrix tfidf_vectors(const TextCorpus& corpus);

// TF-IDF followed by a seeded random projection to `dim`, rows unit-norm.
// When the vocabulary fits in `dim` the projection has orthonormal rows and
// preserves cosines exactly; otherwise it is a Gaussian JL map.
// Documents without content tokens map to the zero vector.
Matrix semantic_embeddings(const TextCorpus& corpus, std::size_t dim, std::uint64_t seed = 0);

// DeepWalk: seeded uniform random walks and skip-gram with negative sampling.
// Rows are unit-norm; isolated nodes get the zero vector. Requires >= 1 edge.
Matrix structural_embeddings(const SparseGraph& g, const WalkConfig& cfg, std::uint64_t seed = 0);

}  // namespace edge
